"""
Classical side: the Poisson structure of F_q(N) at q = 1.

Points are stored in the order (a_0, ..., a_{N-1}, a*_{N-1}, ..., a*_0).
Everything here is exact rational arithmetic over QQ.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .coeff import format_rational, to_rational
from .exceptions import DomainError, SpecValidationError, UnknownGeneratorError
from .skewnf import SkewMatrix, exact_rank

logger = logging.getLogger(__name__)

PLAIN = "plain"
STAR = "star"


@lru_cache(maxsize=None)
def classical_ring(N: int):
    """QQ[a0..a{N-1}, as0..as{N-1}] with generators in PBW order."""
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    names = [f"a{k}" for k in range(N)] + [f"as{k}" for k in range(N)]
    R, *gens = ring(",".join(names), QQ)
    return R, tuple(gens)


@dataclass(frozen=True)
class PointData:
    N: int
    a: Tuple

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise SpecValidationError(f"N must be a positive integer, got {self.N!r}")
        if len(self.a) != 2 * self.N:
            raise SpecValidationError(f"A point for N={self.N} has {2 * self.N} coordinates, got {len(self.a)}")

    @classmethod
    def from_values(cls, N: int, values: Sequence) -> "PointData":
        try:
            coords = tuple(to_rational(v) for v in values)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise SpecValidationError(f"Invalid coordinate: {e}")
        return cls(N, coords)

    @classmethod
    def from_pairs(cls, plain: Sequence, star: Sequence) -> "PointData":
        """Build from a_0..a_{N-1} and a*_0..a*_{N-1}, both in ascending index order."""
        if len(plain) != len(star):
            raise SpecValidationError("plain and starred coordinates differ in length")
        return cls.from_values(len(plain), list(plain) + list(reversed(star)))

    @classmethod
    def parse(cls, N: int, text: str) -> "PointData":
        """Read a comma separated list such as "1,1,-1,1" or "1/2,0,3,1"."""
        return cls.from_values(N, [v.strip() for v in text.split(",") if v.strip()])

    @classmethod
    def zero(cls, N: int) -> "PointData":
        return cls.from_values(N, [0] * (2 * N))

    def plain(self, i: int):
        return self.a[i]

    def star(self, i: int):
        return self.a[2 * self.N - 1 - i]

    def pair_product(self, i: int):
        return self.plain(i) * self.star(i)

    def coordinate_index(self, position: int) -> int:
        """Generator index i of the coordinate stored at position."""
        return position if position < self.N else 2 * self.N - 1 - position

    def nonzero_count(self, accept: Callable[[int], bool]) -> int:
        return sum(1 for pos, v in enumerate(self.a) if v != 0 and accept(self.coordinate_index(pos)))

    def scaled(self, factor) -> "PointData":
        factor = to_rational(factor)
        return PointData(self.N, tuple(v * factor for v in self.a))

    def with_pairs(self, plain: Sequence, star: Sequence) -> "PointData":
        return PointData.from_pairs(plain, star)

    def pairs(self) -> Tuple[List, List]:
        return [self.plain(i) for i in range(self.N)], [self.star(i) for i in range(self.N)]

    def to_json(self) -> Dict:
        return {"N": self.N, "a": [format_rational(v) for v in self.a]}

    @classmethod
    def from_json(cls, payload: Dict) -> "PointData":
        try:
            return cls.from_values(int(payload["N"]), payload["a"])
        except (KeyError, TypeError) as e:
            raise SpecValidationError(f"Malformed point JSON: {e}")

    def __str__(self) -> str:
        return ",".join(format_rational(v) for v in self.a)


def leaf_invariants(p: PointData) -> List:
    """Cumulative sums omega_i = sum_{k >= i} a_k a*_k for i = 0..N, with omega_N = 0."""
    omegas = [QQ(0)] * (p.N + 1)
    for i in range(p.N - 1, -1, -1):
        omegas[i] = omegas[i + 1] + p.pair_product(i)
    return omegas


@dataclass(frozen=True)
class LeafStructure:
    """
    Combinatorial invariants of a point.

    i_seq is empty exactly when every product a_i a*_i vanishes; degenerate_r0
    then counts all nonzero coordinates. r maps 2j to r_{2j}; for odd s it
    also holds the synthetic r_{2l+2}.
    """

    N: int
    i_seq: Tuple[int, ...]
    r: Tuple[Tuple[int, int], ...]
    degenerate_r0: int = 0

    @property
    def degenerate(self) -> bool:
        return not self.i_seq

    @property
    def s(self) -> int:
        return len(self.i_seq) - 1

    @property
    def ell(self) -> int:
        return self.s // 2

    def r_value(self, index: int) -> int:
        return dict(self.r)[index]

    def i_value(self, index: int) -> int:
        """i_index, with the convention i_{2l+1} = 0 when s = 2l."""
        if index < len(self.i_seq):
            return self.i_seq[index]
        if index == len(self.i_seq) and self.s % 2 == 0:
            return 0
        raise DomainError(f"i_{index} is not defined for s={self.s}")

    def to_json(self) -> Dict:
        return {
            "N": self.N,
            "i_seq": list(self.i_seq),
            "r": {str(k): v for k, v in self.r},
            "degenerate_r0": self.degenerate_r0,
        }


def structure_data(p: PointData) -> LeafStructure:
    products = [p.pair_product(i) for i in range(p.N)]
    nonzero = [i for i, v in enumerate(products) if v != 0]
    if not nonzero:
        return LeafStructure(N=p.N, i_seq=(), r=(), degenerate_r0=p.nonzero_count(lambda i: True))

    omegas = leaf_invariants(p)
    i_seq = [nonzero[-1]]
    while True:
        last = i_seq[-1]
        # odd positions close a segment where omega vanishes, even ones open the next
        if len(i_seq) % 2:
            candidates = [i for i in range(last) if omegas[i] == 0]
        else:
            candidates = [i for i in range(last) if products[i] != 0]
        if not candidates:
            break
        i_seq.append(candidates[-1])

    r = {0: p.nonzero_count(lambda i: i > i_seq[0])}
    for j in range(1, len(i_seq) // 2 + 1):
        if 2 * j < len(i_seq):
            low, high = i_seq[2 * j], i_seq[2 * j - 1]
            r[2 * j] = p.nonzero_count(lambda i: low < i < high)
    s = len(i_seq) - 1
    if s % 2:
        last_odd = i_seq[s]
        r[s + 1] = p.nonzero_count(lambda i: i < last_odd) - 1
    return LeafStructure(N=p.N, i_seq=tuple(i_seq), r=tuple(sorted(r.items())))


def leaf_dimension(ls: LeafStructure) -> int:
    """Dimension of the symplectic leaf through any point with this structure."""
    if ls.degenerate:
        return 2 * (ls.degenerate_r0 // 2)
    ell = ls.ell
    total = 0
    for k in range(ell + 1):
        total += 2 * (ls.i_value(2 * k) - ls.i_value(2 * k + 1))
    last = ell + 1 if ls.s % 2 else ell
    for k in range(last + 1):
        total += 2 * ((ls.r_value(2 * k) + 1) // 2)
    return total


def _coordinates(N: int) -> List[Tuple[str, int]]:
    return [(PLAIN, i) for i in range(N)] + [(STAR, i) for i in range(N - 1, -1, -1)]


def _bracket(u: Tuple[str, int], v: Tuple[str, int], value: Callable, omega: Callable):
    """{x_u, x_v} built from coordinate values; works for numbers and polynomials alike."""
    (ku, i), (kv, j) = u, v
    if ku == kv:
        if i == j:
            return value(ku, i) * 0
        sign = -1 if ku == PLAIN else 1
        if i > j:
            sign = -sign
        return value(ku, i) * value(kv, j) * sign
    if ku == STAR:
        return -_bracket(v, u, value, omega)
    if i == j:
        return omega(i + 1) * 2
    return -value(ku, i) * value(kv, j)


def bracket_value(p: PointData, u: int, v: int):
    """{x_u, x_v} at p, with u and v positions in the point's coordinate order."""
    coords = _coordinates(p.N)
    omegas = leaf_invariants(p)

    def value(kind, i):
        return p.plain(i) if kind == PLAIN else p.star(i)

    return _bracket(coords[u], coords[v], value, lambda i: omegas[i])


def poisson_matrix(p: PointData) -> List[List]:
    n = 2 * p.N
    return [[bracket_value(p, u, v) for v in range(n)] for u in range(n)]


def rank(p: PointData) -> int:
    return exact_rank(poisson_matrix(p))


def generator_variable(name: str, N: int) -> Tuple[str, int]:
    """Map a generator name z<k> or zs<k> to its coordinate."""
    kind = STAR if name.startswith("zs") else PLAIN
    digits = name[2:] if kind == STAR else name[1:]
    if not name.startswith("z") or not digits.isdigit() or int(digits) >= N:
        raise UnknownGeneratorError(f"Unknown generator {name!r} for N={N}")
    return kind, int(digits)


def _ring_value(N: int):
    _, gens = classical_ring(N)

    def value(kind, i):
        return gens[i] if kind == PLAIN else gens[N + i]

    def omega(i):
        total = classical_ring(N)[0].zero
        for k in range(i, N):
            total += gens[k] * gens[N + k]
        return total

    return value, omega


def classical_bracket(g1: str, g2: str, N: int):
    """{g1, g2} as a polynomial in QQ[a, a*], for comparison with the commutator limit."""
    value, omega = _ring_value(N)
    return _bracket(generator_variable(g1, N), generator_variable(g2, N), value, omega)


def poisson_matrix_symbolic(N: int) -> List[List]:
    """Brackets of the ring generators a0..a{N-1}, as0..as{N-1}, as polynomials."""
    value, omega = _ring_value(N)
    coords = [(PLAIN, i) for i in range(N)] + [(STAR, i) for i in range(N)]
    return [[_bracket(u, v, value, omega) for v in coords] for u in coords]


def poisson_bracket(f, g, N: int):
    """{f, g} = sum_{u,v} df/dx_u dg/dx_v {x_u, x_v} for polynomials in classical_ring(N)."""
    _, gens = classical_ring(N)
    matrix = poisson_matrix_symbolic(N)
    total = classical_ring(N)[0].zero
    for u, x_u in enumerate(gens):
        df = f.diff(x_u)
        if not df:
            continue
        for v, x_v in enumerate(gens):
            if matrix[u][v]:
                total += df * g.diff(x_v) * matrix[u][v]
    return total


def _oh_exponent(u: Tuple[str, int], v: Tuple[str, int], N: int) -> int:
    """h(u, v) for the localized Oh relations, u before v in (w..., w*...) order."""
    last = N - 1
    (ku, i), (kv, j) = u, v
    if ku == kv == PLAIN:
        return -1
    if ku == kv == STAR:
        return 3 if j == last else 1
    if i == last:
        return 2 if j == last else 1
    return 0 if i == j else -1


def oh_poisson_matrix(p: PointData) -> List[List]:
    """
    Poisson matrix of Oh's algebra in the localized w-form, at p.

    Quasi pairs give h * b_u b_v; the pairs (b_i, b*_i) with i < N-1 give
    2 sum_{k>i} b_k b*_k as for F_q(N).
    """
    coords = _coordinates(p.N)
    omegas = leaf_invariants(p)

    def value(kind, i):
        return p.plain(i) if kind == PLAIN else p.star(i)

    def order(c):
        kind, i = c
        return i if kind == PLAIN else p.N + i

    def entry(u, v):
        if u == v:
            return QQ(0)
        if order(u) > order(v):
            return -entry(v, u)
        if u[0] == PLAIN and v[0] == STAR and u[1] == v[1] and u[1] < p.N - 1:
            return 2 * omegas[u[1] + 1]
        return _oh_exponent(u, v, p.N) * value(*u) * value(*v)

    return [[entry(u, v) for v in coords] for u in coords]


def oh_rank(p: PointData) -> int:
    return exact_rank(oh_poisson_matrix(p))


def quasi_poisson_matrix(H: SkewMatrix, point: Sequence) -> List[List]:
    """(h_uv a_u a_v) for a quasipolynomial algebra with defining matrix H."""
    values = [to_rational(v) for v in point]
    if len(values) != H.n:
        raise SpecValidationError(f"Point has {len(values)} coordinates, matrix needs {H.n}")
    return [[H[u, v] * values[u] * values[v] for v in range(H.n)] for u in range(H.n)]


def good_point(p: PointData) -> PointData:
    """
    Point with the same structure data whose pairs strictly between each
    i_{2j+1} and i_{2j} vanish.

    Along the leaf the cumulative sum at i_{2j+1} stays zero, so after the
    middle pairs are cleared a_{i_{2j}} is rescaled to give a_{i_{2j}} a*_{i_{2j}}
    = -a_{i_{2j+1}} a*_{i_{2j+1}}. For even s the last segment runs down to
    index 0; when clearing it would make omega_0 vanish, a_{i_s} is doubled.
    Only a_{i_{2j}} and the cleared pairs change.
    """
    ls = structure_data(p)
    if ls.degenerate:
        return p
    plain, star = p.pairs()
    segments = (ls.s + 2) // 2
    for j in range(segments):
        high = ls.i_value(2 * j)
        low = ls.i_value(2 * j + 1)
        for i in range(low + 1, high):
            plain[i] = star[i] = QQ(0)
        if 2 * j + 1 < len(ls.i_seq):
            target = -plain[low] * star[low]
            plain[high] = plain[high] * target / (plain[high] * star[high])
    if ls.s % 2 == 0 and ls.i_seq[-1] > 0:
        top = ls.i_seq[-1]
        if plain[0] * star[0] + plain[top] * star[top] == 0:
            plain[top] *= 2
    result = PointData.from_pairs(plain, star)
    logger.debug(f"Good point of {p}: {result}")
    return result


def flow_step(p: PointData, k: int, lam) -> PointData:
    """
    Point reached along the Hamiltonian flow of a_k, in the closed form with
    lam = exp(-a_k t).

    When a_k = 0 the flow is a translation of a*_k and lam is read as the
    additive parameter t.
    """
    if not 0 <= k < p.N:
        raise DomainError(f"Flow index {k} out of range 0..{p.N - 1}")
    lam = to_rational(lam)
    plain, star = p.pairs()
    omegas = leaf_invariants(p)
    a_k = plain[k]
    if a_k == 0:
        star[k] = star[k] + 2 * omegas[k + 1] * lam
        return PointData.from_pairs(plain, star)
    if lam == 0:
        raise DomainError("Flow parameter must be nonzero")
    for j in range(p.N):
        if j > k:
            plain[j] *= lam
        elif j < k:
            plain[j] /= lam
        if j != k:
            star[j] *= lam
    star[k] = star[k] - omegas[k + 1] / a_k * (lam**2 - 1)
    return PointData.from_pairs(plain, star)


def random_point(N: int, values: Sequence = (-2, -1, 0, 1, 2), rng: Optional[random.Random] = None) -> PointData:
    rng = rng or random.Random()
    return PointData.from_values(N, [rng.choice(list(values)) for _ in range(2 * N)])
