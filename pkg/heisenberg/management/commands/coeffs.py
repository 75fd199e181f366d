"""
Django management command to print the normal-ordering coefficients.

Usage:
    python manage.py coeffs a --n 3
    python manage.py coeffs d --i 3 --s 3
    python manage.py coeffs d --i 3 --s 3 --m 3 --json

Actions:
    a  a_0(n), ..., a_n(n) of (z z*)^n
    d  d_{i,1}(s), ..., d_{i,i}(s) of z^i z*^s; with --m also their limits
       d / (m (q^m - 1)) at a primitive m-th root of unity
"""

from heisenberg.cli import HeisenbergCommand, UsageError
from heisenberg.coeff import limit_bracket
from heisenberg.ncalg import a_coefficients, d_coefficients


class Command(HeisenbergCommand):
    help = "Laurent polynomial coefficients of the normal ordering formulas"
    preset_flags = False

    def add_command_arguments(self, parser):
        parser.add_argument("action", choices=["a", "d"], help="Which family of coefficients")
        parser.add_argument("--n", type=int, help="Power n of z z* (a)")
        parser.add_argument("--i", type=int, help="Power i of z (d)")
        parser.add_argument("--s", type=int, help="Power s of z* (d)")
        parser.add_argument("--m", type=int, help="Odd order of the root of unity for limits (d)")

    def compute(self, config, options):
        if options["action"] == "a":
            n = self.require(options, "n")
            values = a_coefficients(n)
            data = {"n": n, "coefficients": [c.to_json() for c in values]}
            return "\n".join(str(c) for c in values), data, True

        i, s = self.require(options, "i"), self.require(options, "s")
        values = d_coefficients(i, s)
        data = {"i": i, "s": s, "coefficients": [c.to_json() for c in values]}
        lines = [str(c) for c in values]
        if config.m is not None:
            limits = [limit_bracket(c, config.m) for c in values]
            data["m"] = config.m
            data["limits"] = [str(v) for v in limits]
            lines = [f"{c} -> {v}" for c, v in zip(lines, limits)]
        return "\n".join(lines), data, True

    def require(self, options, name):
        if options.get(name) is None:
            raise UsageError(f"coeffs {options['action']} needs --{name}")
        return options[name]
