"""
Django management command to follow the Hamiltonian flow of one coordinate.

Usage:
    python manage.py flow --N 2 --point 1,1,1,1 --k 0 --lam 2
    python manage.py flow --N 2 --point 1,0,1,1 --k 1 --lam 1/2 --json

For a_k != 0, lam is the multiplicative parameter exp(-a_k t); for a_k = 0
the flow is a translation of a*_k and lam is the time t.
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.poisson import flow_step


class Command(HeisenbergCommand):
    help = "Point reached along the Hamiltonian flow of a_k"

    def add_command_arguments(self, parser):
        parser.add_argument("--point", type=str, help="Comma separated coordinates")
        parser.add_argument("--k", type=int, required=True, help="Index of the Hamiltonian a_k")
        parser.add_argument("--lam", type=str, required=True, help="Flow parameter, a nonzero rational")

    def compute(self, config, options):
        result = flow_step(config.point(options.get("point")), options["k"], options["lam"])
        return str(result), result.to_json(), True
