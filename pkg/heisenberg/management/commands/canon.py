"""
Django management command to compute the canonical form of a skew-symmetric matrix.

Usage:
    python manage.py canon --spec lup:1,1
    python manage.py canon --matrix H.json --json
    python manage.py canon --preset frtbar --N 3
"""

import logging

from heisenberg.cli import HeisenbergCommand
from heisenberg.skewnf import build_matrix, canonical_form

logger = logging.getLogger(__name__)


class Command(HeisenbergCommand):
    """Print the blocks, kernel size and certificate W of W·H·Wᵀ = block form."""

    help = "Canonical form of a skew-symmetric integer matrix under SL(n, Z) congruence"
    matrix_flags = True

    def compute(self, config, options):
        spec = config.algebra_spec()
        form = canonical_form(build_matrix(spec))
        logger.info(f"Canonical form of {spec}: blocks={form.blocks} zeros={form.zero_count}")

        text = "\n".join(
            [
                f"blocks: {' '.join(str(b) for b in form.blocks)}".rstrip(),
                f"zero_count: {form.zero_count}",
                f"orientation: {form.orientation}",
            ]
        )
        data = {
            "blocks": list(form.blocks),
            "zero_count": form.zero_count,
            "orientation": form.orientation,
            "W": [list(row) for row in form.W],
        }
        return text, data, True
