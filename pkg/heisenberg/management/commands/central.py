"""
Django management command to test whether an element is central.

Usage:
    python manage.py central --preset frt --N 2 --m 3 "z0^3"
    python manage.py central --preset frt --N 2 "O0" --json
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.expressions import evaluate_text, format_element
from heisenberg.ncalg import is_central


class Command(HeisenbergCommand):
    """Commutes the element with every generator and reports the first failure."""

    help = "Check whether an expression is central in an algebra preset"

    def add_command_arguments(self, parser):
        parser.add_argument("expression", type=str, help="Expression to test")

    def compute(self, config, options):
        element = evaluate_text(options["expression"], config.algebra(), config.mode())
        result = is_central(element)
        text = "central" if result.central else f"not central: {result.witness}"
        data = {
            "central": result.central,
            "witness": result.witness,
            "commutator": format_element(result.commutator) if result.commutator is not None else None,
        }
        return text, data, True
