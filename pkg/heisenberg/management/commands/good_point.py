"""
Django management command to move a point to a good point of its stratum.

Usage:
    python manage.py good_point --N 3 --point 0,1,1,1,1,0
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.poisson import good_point


class Command(HeisenbergCommand):
    help = "Point with the same structure data whose inner pairs vanish"

    def add_command_arguments(self, parser):
        parser.add_argument("--point", type=str, help="Comma separated coordinates")

    def compute(self, config, options):
        result = good_point(config.point(options.get("point")))
        return str(result), result.to_json(), True
