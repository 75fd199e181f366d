"""
Django management command to compute the degree of an algebra at a root of unity.

Usage:
    python manage.py degree --preset frtbar --N 3 --m 3
    python manage.py degree --spec ohloc:2 --m 5 --json
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.skewnf import build_matrix, canonical_form, degree


class Command(HeisenbergCommand):
    """PI degree of the quantum torus given by a preset, spec or matrix file."""

    help = "Degree of a quasipolynomial algebra at a primitive m-th root of unity"
    matrix_flags = True

    def compute(self, config, options):
        m = config.require_m()
        spec = config.algebra_spec()
        H = build_matrix(spec)
        value = degree(H, m)
        data = {
            "spec": str(spec),
            "m": m,
            "degree": value,
            "blocks": list(canonical_form(H).blocks),
        }
        return str(value), data, True
