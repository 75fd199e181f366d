"""
Django management command to build and check explicit representations.

Usage:
    python manage.py rep build --kind frt --N 2 --m 3
    python manage.py rep verify --kind frt --N 3 --m 3
    python manage.py rep commutant --kind frt --N 2 --m 3 --irreducible
    python manage.py rep verify --kind torus --matrix H.json --m 5 --json

Actions:
    build      print the generator matrices (JSON) or a summary
    verify     substitute the matrices into every defining relation
    commutant  dimension of the commutant; with --irreducible, exit 3 unless it is 1
"""

import logging

from heisenberg.cli import HeisenbergCommand
from heisenberg.ncalg import AlgebraPreset
from heisenberg.reps import commutant_dimension, frt_representation, torus_representation, verify_relations

logger = logging.getLogger(__name__)


class Command(HeisenbergCommand):
    help = "Explicit representations of FRTbar(N) and of quantum tori over Q(zeta_m)"

    def add_command_arguments(self, parser):
        parser.add_argument("action", choices=["build", "verify", "commutant"], help="What to do with the representation")
        parser.add_argument("--kind", choices=["frt", "torus"], default="frt", help="Clock and shift model (default: frt)")
        parser.add_argument(
            "--irreducible",
            action="store_true",
            help="Require a one dimensional commutant (exit 3 otherwise)",
        )

    def compute(self, config, options):
        m = config.require_m()
        if options["kind"] == "torus":
            H = config.load_matrix()
            rep = torus_representation(H, m)
            preset = AlgebraPreset.torus(H)
        else:
            N = config.require_N()
            rep = frt_representation(N, m)
            preset = AlgebraPreset.frtbar(N)

        action = options["action"]
        if action == "build":
            return f"dim={rep.dim} generators={','.join(rep.names)}", rep.to_json(), True

        if action == "verify":
            report = verify_relations(rep, preset)
            if report.ok:
                text = f"ok: {len(report.checks)} relations of {report.algebra} hold"
            else:
                text = f"failed: {', '.join(report.failures)}"
            return text, report.to_json(), report.ok

        dimension = commutant_dimension(rep)
        ok = dimension == 1 or not options["irreducible"]
        if not ok:
            logger.warning(f"Representation of {preset.label} at m={m} has a commutant of dimension {dimension}")
        data = {"algebra": preset.label, "m": m, "dim": rep.dim, "commutant_dimension": dimension}
        return str(dimension), data, ok
