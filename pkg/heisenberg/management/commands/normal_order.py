"""
Django management command to put an expression into PBW normal form.

Usage:
    python manage.py normal_order --preset frt --N 2 "zs0*z0"
    python manage.py normal_order --preset frt --N 2 --m 3 "z0^3*zs0^3" --json
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.expressions import evaluate_text, format_element


class Command(HeisenbergCommand):
    """Evaluate an expression in the chosen algebra and print its normal form."""

    help = "Normal form of an expression in an algebra preset"

    def add_command_arguments(self, parser):
        parser.add_argument("expression", type=str, help="Expression such as 'zs0*z0 - q^2*O1'")

    def compute(self, config, options):
        algebra = config.algebra()
        mode = config.mode()
        element = evaluate_text(options["expression"], algebra, mode)
        data = {
            "algebra": algebra.label,
            "mode": str(mode),
            "text": format_element(element),
            "terms": element.to_json(),
        }
        return format_element(element), data, True
