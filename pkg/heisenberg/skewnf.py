"""
Integer linear algebra for defining matrices.

A defining matrix H encodes a quasipolynomial algebra through
x_u x_v = q^H[u][v] x_v x_u. This module builds the matrices of every
algebra family we work with and reduces them by SL(Z) congruence to
block-diagonal form, from which rank, degree at a root of unity and the
center lattice follow.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, igcd, ilcm
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from .coeff import to_rational
from .exceptions import SpecValidationError

logger = logging.getLogger(__name__)

IntMatrix = Tuple[Tuple[int, ...], ...]


def _freeze(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class SkewMatrix:
    """Square integer matrix with entries[i][j] == -entries[j][i]."""

    entries: IntMatrix

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise SpecValidationError(f"Row {i} has {len(row)} entries, expected {n}")
            for j, value in enumerate(row):
                if not isinstance(value, int) or isinstance(value, bool):
                    raise SpecValidationError(f"Entry ({i}, {j}) is not an integer: {value!r}")
                if value != -self.entries[j][i]:
                    raise SpecValidationError(f"Matrix is not skew-symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SkewMatrix":
        try:
            return cls(_freeze(rows))
        except (TypeError, ValueError) as e:
            if isinstance(e, SpecValidationError):
                raise
            raise SpecValidationError(f"Malformed matrix: {e}")

    @classmethod
    def zeros(cls, n: int) -> "SkewMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def rows(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def permuted(self, order: Sequence[int]) -> "SkewMatrix":
        """Matrix of the same algebra with generators listed in the given order."""
        return SkewMatrix(tuple(tuple(self.entries[i][j] for j in order) for i in order))

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([[ZZ(v) for v in row] for row in self.entries], (self.n, self.n), ZZ)

    def to_json(self) -> Dict:
        return {"n": self.n, "entries": self.rows()}

    @classmethod
    def from_json(cls, payload: Dict) -> "SkewMatrix":
        try:
            n = int(payload["n"])
            entries = payload["entries"]
        except (KeyError, TypeError, ValueError) as e:
            raise SpecValidationError(f"Matrix JSON needs 'n' and 'entries': {e}")
        matrix = cls.from_rows(entries)
        if matrix.n != n:
            raise SpecValidationError(f"Declared n={n} but entries are {matrix.n}x{matrix.n}")
        return matrix


def pfaffian(H: SkewMatrix) -> int:
    """Pfaffian by expansion along the first row; fine for the small sizes used here."""

    def expand(indices: Tuple[int, ...]) -> int:
        if not indices:
            return 1
        if len(indices) % 2:
            return 0
        first, rest = indices[0], indices[1:]
        total = 0
        for pos, j in enumerate(rest):
            entry = H.entries[first][j]
            if entry:
                sign = 1 if pos % 2 == 0 else -1
                total += sign * entry * expand(rest[:pos] + rest[pos + 1 :])
        return total

    return expand(tuple(range(H.n)))


@dataclass(frozen=True)
class CanonicalForm:
    """
    Certificate W with W·H·Wᵀ = Diag(orientation·S(m_1), S(m_2), ..., S(m_K), 0, ..., 0).

    S(m) = [[0, -m], [m, 0]]. orientation is -1 only when H is nondegenerate and its
    Pfaffian has the sign opposite to (-1)^K, since congruence by det-1 matrices
    preserves the Pfaffian.
    """

    W: IntMatrix
    blocks: Tuple[int, ...]
    zero_count: int
    orientation: int = 1

    @property
    def n(self) -> int:
        return 2 * len(self.blocks) + self.zero_count

    @property
    def rank(self) -> int:
        return 2 * len(self.blocks)

    def block_matrix(self) -> SkewMatrix:
        rows = [[0] * self.n for _ in range(self.n)]
        for b, size in enumerate(self.blocks):
            sign = self.orientation if b == 0 else 1
            rows[2 * b][2 * b + 1] = -sign * size
            rows[2 * b + 1][2 * b] = sign * size
        return SkewMatrix.from_rows(rows)


class _Congruence:
    """Working matrix A = W·H·Wᵀ, updated by elementary det-preserving moves."""

    def __init__(self, H: SkewMatrix):
        self.n = H.n
        self.A = H.rows()
        self.W = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    def add_multiple(self, target: int, source: int, c: int):
        """Basis change e_target += c * e_source."""
        if not c:
            return
        A = self.A
        A[target] = [a + c * b for a, b in zip(A[target], A[source])]
        for row in A:
            row[target] += c * row[source]
        self.W[target] = [a + c * b for a, b in zip(self.W[target], self.W[source])]

    def rotate(self, i: int, j: int):
        """e_i, e_j -> -e_j, e_i (determinant +1)."""
        if i == j:
            return
        A = self.A
        A[i], A[j] = [-v for v in A[j]], A[i]
        for row in A:
            row[i], row[j] = -row[j], row[i]
        self.W[i], self.W[j] = [-v for v in self.W[j]], self.W[i]

    def swap(self, i: int, j: int):
        """Plain transposition; determinant -1, callers compensate."""
        A = self.A
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        self.W[i], self.W[j] = self.W[j], self.W[i]

    def negate(self, i: int):
        A = self.A
        A[i] = [-v for v in A[i]]
        for row in A:
            row[i] = -row[i]
        self.W[i] = [-v for v in self.W[i]]

    def smallest_entry(self, start: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(start, self.n):
            for j in range(i + 1, self.n):
                value = self.A[i][j]
                if value and (best is None or abs(value) < abs(self.A[best[0]][best[1]])):
                    best = (i, j)
        return best

    def isolate_pivot(self, k: int):
        """Euclidean clearing of rows k and k+1 against the pivot A[k][k+1]."""
        A = self.A
        while True:
            pivot = A[k][k + 1]
            for l in range(k + 2, self.n):
                self.add_multiple(l, k + 1, -(A[k][l] // pivot))
                self.add_multiple(l, k, A[k + 1][l] // pivot)
            smaller = None
            for l in range(k + 2, self.n):
                for row in (k, k + 1):
                    value = A[row][l]
                    if value and (smaller is None or abs(value) < abs(A[smaller[0]][smaller[1]])):
                        smaller = (row, l)
            if smaller is None:
                return
            row, l = smaller
            if row == k:
                self.rotate(k + 1, l)
            else:
                self.rotate(k, l)

    def non_divisible_entry(self, k: int) -> Optional[int]:
        pivot = self.A[k][k + 1]
        for a in range(k + 2, self.n):
            for b in range(a + 1, self.n):
                if self.A[a][b] % pivot:
                    return a
        return None


def canonical_form(H: SkewMatrix) -> CanonicalForm:
    """
    SL(Z) congruence normal form of a skew-symmetric integer matrix.

    Pivots on the smallest nonzero entry, clears its two rows by Euclidean
    steps, and enforces that each pivot divides the rest, which yields the
    ascending divisibility chain m_1 | m_2 | ... | m_K.

    Returns:
        CanonicalForm with det(W) = 1
    """
    work = _Congruence(H)
    n = H.n
    k = 0
    while k + 1 < n:
        found = work.smallest_entry(k)
        if found is None:
            break
        i, j = found
        if i != k:
            work.rotate(k, i)
        if j != k + 1:
            work.rotate(k + 1, j)
        while True:
            work.isolate_pivot(k)
            row = work.non_divisible_entry(k)
            if row is None:
                break
            work.add_multiple(k, row, 1)
        k += 2

    block_count = k // 2
    zero_count = n - 2 * block_count
    wrong = [b for b in range(block_count) if work.A[2 * b][2 * b + 1] > 0]
    while len(wrong) >= 2:
        for b in (wrong.pop(), wrong.pop()):
            work.swap(2 * b, 2 * b + 1)
    orientation = 1
    if wrong:
        b = wrong[0]
        if zero_count:
            work.swap(2 * b, 2 * b + 1)
            work.negate(2 * block_count)
        else:
            orientation = -1
            if b != 0:
                work.swap(2 * b, 2 * b + 1)
                work.swap(0, 1)

    blocks = tuple(abs(work.A[2 * b][2 * b + 1]) for b in range(block_count))
    result = CanonicalForm(W=_freeze(work.W), blocks=blocks, zero_count=zero_count, orientation=orientation)
    logger.debug(f"Canonical form of {n}x{n} matrix: blocks={blocks} zeros={zero_count} orientation={orientation}")
    return result


def exact_rank(rows: Sequence[Sequence]) -> int:
    """
    Rank of a rational matrix by fraction-free elimination.

    Each row is scaled by the lcm of its denominators, then reduced over ZZ.
    """
    rows = [[to_rational(v) for v in row] for row in rows]
    if not rows or not rows[0]:
        return 0
    integral = []
    for row in rows:
        scale = 1
        for v in row:
            scale = ilcm(scale, int(v.denominator))
        integral.append([ZZ(int(v.numerator) * (scale // int(v.denominator))) for v in row])
    matrix = DomainMatrix(integral, (len(integral), len(integral[0])), ZZ)
    _, _, pivots = matrix.rref_den(method="FF")
    return len(pivots)


def matrix_rank(H: SkewMatrix) -> int:
    return exact_rank(H.entries)


def degree(H: SkewMatrix, m: int) -> int:
    """Degree at a primitive m-th root of unity: prod m / gcd(m, m_i) over canonical blocks."""
    result = 1
    for block in canonical_form(H).blocks:
        result *= m // igcd(m, block)
    return result


def lattice_contains(H: SkewMatrix, x: Sequence[int], m: int) -> bool:
    """True when the monomial with exponent vector x q-commutes trivially: H·x ≡ 0 mod m."""
    return all(sum(h * v for h, v in zip(row, x)) % m == 0 for row in H.entries)


def center_lattice(H: SkewMatrix, m: int) -> List[Tuple[int, ...]]:
    """
    Basis of the lattice {x in Z^n : H·x ≡ 0 (mod m)}.

    The kernel of [H | mI] is read off the Smith decomposition; its projection
    onto the first n coordinates is the lattice. The Hermite basis is returned,
    so every entry lies in [0, m].
    """
    n = H.n
    if n == 0:
        return []
    stacked = Matrix([list(row) + [m if i == j else 0 for j in range(n)] for i, row in enumerate(H.entries)])
    _, _, right = smith_normal_decomp(stacked, domain=ZZ)
    kernel = right[:n, n:]
    basis = hermite_normal_form(kernel)
    vectors = [tuple(int(basis[i, j]) for i in range(n)) for j in range(basis.cols)]
    logger.debug(f"Center lattice at m={m}: {len(vectors)} generators")
    return vectors


def lattice_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by n independent vectors in Z^n."""
    if not vectors:
        return 1
    n = len(vectors)
    matrix = DomainMatrix([[ZZ(vectors[j][i]) for j in range(n)] for i in range(n)], (n, n), ZZ)
    return abs(int(matrix.det()))


KINDS = ("frtbar", "oh", "ohloc", "lup", "ldown", "m", "explicit")


@dataclass(frozen=True)
class AlgebraSpec:
    """
    Names one defining matrix.

    kind is one of frtbar, oh, ohloc (parameter N), lup / ldown (segment sizes s),
    m (parameter x) or explicit (matrix).
    """

    kind: str
    N: Optional[int] = None
    s: Tuple[int, ...] = field(default_factory=tuple)
    matrix: Optional[SkewMatrix] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecValidationError(f"Unknown algebra kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind in ("frtbar", "oh", "ohloc", "m"):
            if not isinstance(self.N, int) or self.N < 1:
                raise SpecValidationError(f"{self.kind} needs a positive integer parameter, got {self.N!r}")
        if self.kind in ("lup", "ldown"):
            if not self.s:
                raise SpecValidationError(f"{self.kind} needs at least one segment size")
            if any(not isinstance(v, int) or v < 0 for v in self.s):
                raise SpecValidationError(f"Segment sizes must be nonnegative integers, got {self.s}")
        if self.kind == "explicit" and self.matrix is None:
            raise SpecValidationError("explicit spec needs a matrix")

    @classmethod
    def frtbar(cls, N: int) -> "AlgebraSpec":
        return cls("frtbar", N=N)

    @classmethod
    def oh(cls, N: int) -> "AlgebraSpec":
        return cls("oh", N=N)

    @classmethod
    def oh_localized(cls, N: int) -> "AlgebraSpec":
        return cls("ohloc", N=N)

    @classmethod
    def l_up(cls, *s: int) -> "AlgebraSpec":
        return cls("lup", s=tuple(s))

    @classmethod
    def l_down(cls, *s: int) -> "AlgebraSpec":
        """L_down(s_1, ..., s_{r+1}): the last entry is the trailing segment."""
        return cls("ldown", s=tuple(s))

    @classmethod
    def m_form(cls, x: int) -> "AlgebraSpec":
        return cls("m", N=x)

    @classmethod
    def explicit(cls, H: SkewMatrix) -> "AlgebraSpec":
        return cls("explicit", matrix=H)

    @classmethod
    def parse(cls, text: str) -> "AlgebraSpec":
        """Read "frtbar:3", "oh:2", "ohloc:2", "lup:1,1", "ldown:0,1" or "m:3"."""
        kind, _, params = text.strip().partition(":")
        kind = kind.strip().lower()
        try:
            values = tuple(int(v) for v in params.split(",") if v.strip())
        except ValueError:
            raise SpecValidationError(f"Malformed algebra spec {text!r}")
        if kind in ("lup", "ldown"):
            return cls(kind, s=values)
        if kind in ("frtbar", "oh", "ohloc", "m"):
            if len(values) != 1:
                raise SpecValidationError(f"{kind} takes exactly one parameter, got {text!r}")
            return cls(kind, N=values[0])
        raise SpecValidationError(f"Unknown algebra spec {text!r}")

    def __str__(self) -> str:
        if self.kind in ("lup", "ldown"):
            return f"{self.kind}:{','.join(str(v) for v in self.s)}"
        if self.kind == "explicit":
            return f"explicit:{self.matrix.n}"
        return f"{self.kind}:{self.N}"


def _from_pairs(n: int, upper: Dict[Tuple[int, int], int]) -> SkewMatrix:
    rows = [[0] * n for _ in range(n)]
    for (u, v), value in upper.items():
        rows[u][v] = value
        rows[v][u] = -value
    return SkewMatrix.from_rows(rows)


def frtbar_matrix(N: int) -> SkewMatrix:
    """Order z_0..z_{N-1}, z_0*..z_{N-1}*."""
    pairs = {}
    for i in range(N):
        for j in range(i + 1, N):
            pairs[(i, j)] = -1
            pairs[(N + i, N + j)] = 1
        for j in range(N):
            if i != j:
                pairs[(i, N + j)] = -1
    return _from_pairs(2 * N, pairs)


def oh_matrix(N: int) -> SkewMatrix:
    """Quasipolynomial Oh(N) in z-form, same order as frtbar_matrix."""
    pairs = {}
    for i in range(N):
        for j in range(i + 1, N):
            pairs[(i, j)] = -1
            pairs[(N + i, N + j)] = 1
        for j in range(N):
            pairs[(i, N + j)] = 2 if i == j else 1
    return _from_pairs(2 * N, pairs)


def oh_localized_matrix(N: int) -> SkewMatrix:
    """w-form of Oh(N) after localizing at its last generator; order w..., w*...."""
    last = N - 1
    pairs = {}
    for i in range(N):
        for j in range(i + 1, N):
            pairs[(i, j)] = -1
            pairs[(N + i, N + j)] = 3 if j == last else 1
        for j in range(N):
            if i == last:
                pairs[(i, N + j)] = 2 if j == last else 1
            elif i != j:
                pairs[(i, N + j)] = -1
    return _from_pairs(2 * N, pairs)


def m_matrix(x: int) -> SkewMatrix:
    """M_x: -1 everywhere above the diagonal."""
    return _from_pairs(x, {(i, j): -1 for i in range(x) for j in range(i + 1, x)})


def l_matrix(segments: Sequence[int], omegas: int) -> SkewMatrix:
    """
    Segments of z-generators separated by Omega_1..Omega_omegas.

    z's come first in ascending order, then the Omegas. The z's pairwise
    q^-1-commute, Omega_u q^2-commutes with the z's of segments 1..u and
    commutes with everything else.
    """
    segment_of = [t for t, size in enumerate(segments, start=1) for _ in range(size)]
    count = len(segment_of)
    pairs = {(a, b): -1 for a in range(count) for b in range(a + 1, count)}
    for u in range(1, omegas + 1):
        for z, t in enumerate(segment_of):
            if t <= u:
                pairs[(z, count + u - 1)] = -2
    return _from_pairs(count + omegas, pairs)


def build_matrix(spec: AlgebraSpec) -> SkewMatrix:
    """Defining matrix H with x_u x_v = q^H[u][v] x_v x_u."""
    if spec.kind == "frtbar":
        return frtbar_matrix(spec.N)
    if spec.kind == "oh":
        return oh_matrix(spec.N)
    if spec.kind == "ohloc":
        return oh_localized_matrix(spec.N)
    if spec.kind == "m":
        return m_matrix(spec.N)
    if spec.kind == "lup":
        return l_matrix(spec.s, len(spec.s))
    if spec.kind == "ldown":
        return l_matrix(spec.s, len(spec.s) - 1)
    return spec.matrix
