"""
Django management command to list a basis of the center lattice.

Usage:
    python manage.py center --spec frtbar:2 --m 3
    python manage.py center --matrix H.json --m 5 --json

Each vector x satisfies H·x ≡ 0 (mod m); the monomials with these exponents
generate the center of the quantum torus.
"""

from heisenberg.cli import HeisenbergCommand
from heisenberg.skewnf import build_matrix, center_lattice, lattice_index


class Command(HeisenbergCommand):
    help = "Basis of the lattice of central monomials at a primitive m-th root of unity"
    matrix_flags = True

    def compute(self, config, options):
        m = config.require_m()
        H = build_matrix(config.algebra_spec())
        basis = center_lattice(H, m)
        index = lattice_index(basis)
        text = "\n".join(" ".join(str(v) for v in vector) for vector in basis)
        data = {"m": m, "index": index, "basis": [list(vector) for vector in basis]}
        return text, data, True
