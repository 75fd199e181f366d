"""
Django management command to check irreducible dimensions against leaf dimensions.

Usage:
    python manage.py dkp check --N 2 --m 3 --point 1,1,1,1
    python manage.py dkp check --N 3 --m 3 --point 1,1,1,1,1,1 --oh
    python manage.py dkp sweep --N 2 --m 3 --coord-range=-1,0,1
    python manage.py dkp sweep --N 2 --m 3 --coord-range=-1,0,1 --oh

Actions:
    check  one point: the dimension predicted from its structure data is
           compared with m^(leaf dimension / 2) and the leaf formula with
           the Poisson matrix rank
    sweep  the same checks over every point with coordinates in --coord-range

With --oh both actions use Oh's algebra; the sweep then skips points with
b_{N-1} b*_{N-1} = 0.

Exits with status 3 when any check fails.
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.poisson import rank, structure_data
from heisenberg.reps import dkp_check, dkp_sweep, oh_dkp_check, oh_dkp_sweep, parse_coord_range


class Command(HeisenbergCommand):
    help = "Dimensions of irreducible representations at roots of unity against symplectic leaves"

    def add_command_arguments(self, parser):
        parser.add_argument("action", choices=["check", "sweep"], help="Check one point or sweep a grid")
        parser.add_argument("--point", type=str, help="Comma separated coordinates (check)")
        parser.add_argument("--oh", action="store_true", help="Use Oh's algebra instead of F_q(N)")
        parser.add_argument("--coord-range", type=str, help="Comma separated coordinate values (sweep)")

    def compute(self, config, options):
        m = config.require_m()
        if options["action"] == "sweep":
            sweep = oh_dkp_sweep if options["oh"] else dkp_sweep
            report = sweep(config.require_N(), m, parse_coord_range(options.get("coord_range")))
            return report.summary(), report.to_json(), report.ok

        point = config.point(options.get("point"))
        if options["oh"]:
            report = oh_dkp_check(point, m)
        else:
            report = dkp_check(structure_data(point), m, oracle_dim=rank(point))
        status = "ok" if report.ok else "failed"
        return f"{status} rep_dim={report.rep_dim} leaf_dim={report.leaf_dim}", report.to_json(), report.ok
