"""
Django management command to compute the dimension of a symplectic leaf.

Usage:
    python manage.py leaf_dim --N 2 --point 1,1,1,1
    python manage.py leaf_dim --N 3 --point=-1,0,1,1,0,2 --json

Points list a_0..a_{N-1} followed by a*_{N-1}..a*_0. The combinatorial
formula is compared with the rank of the Poisson matrix; a disagreement
exits with status 3.
"""

import logging

from heisenberg.cli import HeisenbergCommand
from heisenberg.poisson import leaf_dimension, rank, structure_data

logger = logging.getLogger(__name__)


class Command(HeisenbergCommand):
    help = "Leaf dimension through a point: structure formula against Poisson matrix rank"

    def add_command_arguments(self, parser):
        parser.add_argument("--point", type=str, help="Comma separated coordinates, e.g. 1,0,-1,2")

    def compute(self, config, options):
        point = config.point(options.get("point"))
        structure = structure_data(point)
        formula = leaf_dimension(structure)
        oracle = rank(point)
        match = formula == oracle
        if not match:
            logger.warning(f"Leaf formula {formula} disagrees with rank {oracle} at {point}")
        data = {"structure": structure.to_json(), "formula": formula, "oracle": oracle, "match": match}
        return f"formula={formula} oracle={oracle}", data, match
