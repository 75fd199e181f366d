"""
Django management command to compare a commutator limit with the Poisson bracket.

Usage:
    python manage.py poisson_oracle --N 2 --m 3 z0 zs0
    python manage.py poisson_oracle --N 3 --m 3 zs1 zs2 --json

Exits with status 3 when the limit differs from the closed-form bracket.
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.ncalg import poisson_from_commutator
from heisenberg.poisson import classical_bracket


class Command(HeisenbergCommand):
    help = "Poisson bracket of two generators as a limit of commutators at q^m = 1"

    def add_command_arguments(self, parser):
        parser.add_argument("g1", type=str, help="First generator (z<k> or zs<k>)")
        parser.add_argument("g2", type=str, help="Second generator (z<k> or zs<k>)")

    def compute(self, config, options):
        N = config.require_N()
        m = config.require_m()
        g1, g2 = options["g1"], options["g2"]
        expected = classical_bracket(g1, g2, N)
        bracket = poisson_from_commutator(g1, g2, N, m)
        match = bracket == expected
        data = {
            "g1": g1,
            "g2": g2,
            "N": N,
            "m": m,
            "bracket": str(bracket),
            "expected": str(expected),
            "match": match,
        }
        return str(bracket), data, match
