"""
Noncommutative core: PBW rewriting in F_q(N), Oh's algebra and quantum tori.

An algebra is a list of generators in PBW order together with, for every
pair j > k, the rule x_j x_k = q^H[j][k] x_k x_j + correction. Elements are
kept in normal form at all times, so equality is equality of term maps.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from django.conf import settings
from sympy.polys.domains import QQ
from sympy.polys.fields import field as fraction_field

from .coeff import GENERIC, CycloNum, LaurentPoly, Mode, check_modulus, limit_bracket
from .exceptions import (
    DomainError,
    InconsistencyError,
    LimitDoesNotExistError,
    ModeMismatchError,
    SpecValidationError,
    UnknownGeneratorError,
)
from .poisson import classical_ring
from .skewnf import SkewMatrix, frtbar_matrix, oh_localized_matrix, oh_matrix

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]
Coefficient = Union[LaurentPoly, CycloNum]
Terms = Tuple[Tuple[Exps, Coefficient], ...]
Correction = Tuple[Tuple[LaurentPoly, Exps], ...]

KINDS = ("frt", "frtbar", "oh", "ohloc", "torus")


def _unit(n: int, entries: Mapping[int, int]) -> Exps:
    exps = [0] * n
    for index, value in entries.items():
        exps[index] += value
    return tuple(exps)


@dataclass(frozen=True)
class Relation:
    """x_left x_right = q^exponent x_right x_left + sum(coeff * monomial)."""

    name: str
    left: int
    right: int
    exponent: int
    correction: Correction = ()


@dataclass(frozen=True)
class AlgebraPreset:
    """
    Generators, PBW order and rewriting rules of one algebra.

    block_rule (a, b, sign) states the closed form for a corrected pair
    (x_j, x_k) = (star_i, plain_i):
    x_j^e x_k = q^(a e) x_k x_j^e + sign (q^(b e) - 1) Omega_{i+1} x_j^(e-1).
    """

    kind: str
    N: int
    matrix: SkewMatrix
    names: Tuple[str, ...]
    invertible: FrozenSet[int] = frozenset()
    correction_table: Tuple[Tuple[Tuple[int, int], Correction], ...] = ()
    block_rule: Optional[Tuple[int, int, int]] = None
    localized: bool = False

    @classmethod
    def frt(cls, N: int) -> "AlgebraPreset":
        _check_size(N)
        tail = -(LaurentPoly.monomial(2) - 1)
        return cls(
            kind="frt",
            N=N,
            matrix=frtbar_matrix(N),
            names=_star_names("z", N),
            correction_table=_star_corrections(N, tail),
            block_rule=(0, 2, -1),
        )

    @classmethod
    def frtbar(cls, N: int) -> "AlgebraPreset":
        _check_size(N)
        return cls(kind="frtbar", N=N, matrix=frtbar_matrix(N), names=_star_names("z", N))

    @classmethod
    def oh(cls, N: int, localized: bool = False) -> "AlgebraPreset":
        """Oh(N) in z-form; localized=True makes z_{N-1} invertible."""
        _check_size(N)
        tail = LaurentPoly.monomial(-2) - 1
        return cls(
            kind="oh",
            N=N,
            matrix=oh_matrix(N),
            names=_star_names("z", N),
            invertible=frozenset({N - 1}) if localized else frozenset(),
            correction_table=_star_corrections(N, tail),
            block_rule=(-2, -2, 1),
            localized=localized,
        )

    @classmethod
    def oh_localized(cls, N: int) -> "AlgebraPreset":
        """w-form of Oh(N) with w_{N-1} invertible."""
        _check_size(N)
        tail = -(LaurentPoly.monomial(2) - 1)
        return cls(
            kind="ohloc",
            N=N,
            matrix=oh_localized_matrix(N),
            names=_star_names("w", N),
            invertible=frozenset({N - 1}),
            correction_table=_star_corrections(N, tail),
            block_rule=(0, 2, -1),
        )

    @classmethod
    def torus(cls, H: SkewMatrix) -> "AlgebraPreset":
        return cls(
            kind="torus",
            N=H.n,
            matrix=H,
            names=tuple(f"z{k}" for k in range(H.n)),
            invertible=frozenset(range(H.n)),
        )

    @classmethod
    def from_name(cls, kind: str, N: Optional[int] = None, H: Optional[SkewMatrix] = None) -> "AlgebraPreset":
        if kind == "torus":
            if H is None:
                raise SpecValidationError("torus preset needs a matrix")
            return cls.torus(H)
        if kind not in KINDS:
            raise SpecValidationError(f"Unknown preset {kind!r}; expected one of {', '.join(KINDS)}")
        if N is None:
            raise SpecValidationError(f"Preset {kind} needs N")
        return {"frt": cls.frt, "frtbar": cls.frtbar, "oh": cls.oh, "ohloc": cls.oh_localized}[kind](N)

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def has_stars(self) -> bool:
        return self.kind != "torus"

    @cached_property
    def corrections(self) -> Dict[Tuple[int, int], Correction]:
        return dict(self.correction_table)

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {name: index for index, name in enumerate(self.names)}

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGeneratorError(f"Unknown generator {name!r} for preset {self.label}")

    @property
    def label(self) -> str:
        return f"{self.kind}({self.N})"

    def relations(self) -> List[Relation]:
        """Every defining relation, one per pair j > k in PBW order."""
        result = []
        for j in range(self.size):
            for k in range(j):
                result.append(
                    Relation(
                        name=f"{self.names[j]}*{self.names[k]}",
                        left=j,
                        right=k,
                        exponent=self.matrix[j, k],
                        correction=self.corrections.get((j, k), ()),
                    )
                )
        return result

    def check_exponents(self, exps: Exps):
        if len(exps) != self.size:
            raise SpecValidationError(f"{self.label} monomials need {self.size} exponents, got {len(exps)}")
        for index, e in enumerate(exps):
            if e < 0 and index not in self.invertible:
                raise DomainError(f"{self.names[index]} is not invertible in {self.label}")

    def generator(self, name: str, mode: Mode = GENERIC) -> "NCElement":
        return NCElement(self, mode, {_unit(self.size, {self.index_of(name): 1}): mode.one()})

    def monomial(self, exps: Sequence[int], coeff=1, mode: Mode = GENERIC) -> "NCElement":
        return NCElement(self, mode, {tuple(exps): coeff})

    def scalar(self, coeff, mode: Mode = GENERIC) -> "NCElement":
        return NCElement(self, mode, {(0,) * self.size: coeff})

    def one(self, mode: Mode = GENERIC) -> "NCElement":
        return self.scalar(1, mode)

    def zero(self, mode: Mode = GENERIC) -> "NCElement":
        return NCElement(self, mode, {})

    def generators(self, mode: Mode = GENERIC) -> List["NCElement"]:
        return [self.generator(name, mode) for name in self.names]


def _check_size(N: int):
    if not isinstance(N, int) or N < 1:
        raise SpecValidationError(f"N must be a positive integer, got {N!r}")


def _star_names(letter: str, N: int) -> Tuple[str, ...]:
    return tuple(f"{letter}{k}" for k in range(N)) + tuple(f"{letter}s{k}" for k in range(N))


def _pair_exps(N: int, k: int) -> Exps:
    return _unit(2 * N, {k: 1, N + k: 1})


def _star_corrections(N: int, coeff: LaurentPoly) -> Tuple[Tuple[Tuple[int, int], Correction], ...]:
    """star_i * plain_i picks up coeff * sum_{k>i} plain_k star_k for every i < N-1."""
    return tuple(((N + i, i), tuple((coeff, _pair_exps(N, k)) for k in range(i + 1, N))) for i in range(N - 1))


def correction_descends(exps: Exps, k: int) -> bool:
    """
    A correction term of x_j x_k has degree two and uses only letters after x_k.

    Every rewrite of a pair then raises its lowest letter, so rewriting stops.
    """
    return sum(exps) == 2 and not any(exps[: k + 1])


def _accumulate(total: Dict[Exps, Coefficient], exps: Exps, coeff: Coefficient):
    current = total.get(exps)
    value = coeff if current is None else current + coeff
    if value.is_zero():
        total.pop(exps, None)
    else:
        total[exps] = value


def _freeze(total: Dict[Exps, Coefficient]) -> Terms:
    return tuple(total.items())


class RewritingEngine:
    """
    Multiplies PBW monomials of one algebra in one coefficient mode.

    Monomial products are memoised in an LRU cache; the block rule moves a
    whole power of a starred generator past its plain partner in one step.
    """

    def __init__(self, algebra: AlgebraPreset, mode: Mode, block_rules: bool = True, cache_size: Optional[int] = None):
        self.algebra = algebra
        self.mode = mode
        self.block_rules = block_rules and algebra.block_rule is not None
        self._H = algebra.matrix.entries
        self._corrections = algebra.corrections
        self._one = mode.one()
        if cache_size is None:
            cache_size = settings.REWRITE_CACHE_SIZE
        self.multiply = lru_cache(maxsize=cache_size)(self._multiply)
        self._swap = lru_cache(maxsize=cache_size)(self._swap_uncached)

    def _multiply(self, left: Exps, right: Exps) -> Terms:
        if not any(right):
            return ((left, self._one),)
        if not any(left):
            return ((right, self._one),)

        exponent = 0
        for j, e in enumerate(left):
            if not e:
                continue
            for k in range(j):
                f = right[k]
                if not f:
                    continue
                if (j, k) in self._corrections:
                    return self._peel(left, right)
                exponent += self._H[j][k] * e * f
        merged = tuple(a + b for a, b in zip(left, right))
        return ((merged, self.mode.q_power(exponent)),)

    def _peel(self, left: Exps, right: Exps) -> Terms:
        k = next(index for index, f in enumerate(right) if f)
        step = 1 if right[k] > 0 else -1
        rest = right[:k] + (right[k] - step,) + right[k + 1 :]
        total: Dict[Exps, Coefficient] = {}
        for mono, c in self._times_letter(left, k, step):
            for mono2, c2 in self.multiply(mono, rest):
                _accumulate(total, mono2, c * c2)
        return _freeze(total)

    def _times_letter(self, left: Exps, k: int, step: int) -> Terms:
        """left * x_k^step, moving x_k past the largest generator of left above it."""
        j = next((index for index in range(len(left) - 1, k, -1) if left[index]), None)
        if j is None:
            return ((left[:k] + (left[k] + step,) + left[k + 1 :], self._one),)
        base = left[:j] + (0,) + left[j + 1 :]
        total: Dict[Exps, Coefficient] = {}
        for mono, c in self._swap(j, left[j], k, step):
            for mono2, c2 in self.multiply(base, mono):
                _accumulate(total, mono2, c * c2)
        return _freeze(total)

    def _swap_uncached(self, j: int, e: int, k: int, step: int) -> Terms:
        """Normal form of x_j^e x_k^step for j > k."""
        n = self.algebra.size
        if (j, k) not in self._corrections:
            return ((_unit(n, {k: step, j: e}), self.mode.q_power(self._H[j][k] * e * step)),)
        if e < 0 or step < 0:
            raise DomainError(f"Negative power of non-invertible generator in {self.algebra.label}")
        assert all(
            correction_descends(exps, k) for _, exps in self._corrections[(j, k)]
        ), f"Corrections of ({j}, {k}) in {self.algebra.label} do not raise the lowest letter"
        if self.block_rules:
            return self._block(j, e, k)
        single: Dict[Exps, Coefficient] = {_unit(n, {k: 1, j: 1}): self.mode.q_power(self._H[j][k])}
        for coeff, exps in self._corrections[(j, k)]:
            _accumulate(single, exps, self.mode.lift(coeff))
        if e == 1:
            return _freeze(single)
        total: Dict[Exps, Coefficient] = {}
        for mono, c in single.items():
            for mono2, c2 in self.multiply(_unit(n, {j: e - 1}), mono):
                _accumulate(total, mono2, c * c2)
        return _freeze(total)

    def _block(self, j: int, e: int, k: int) -> Terms:
        a, b, sign = self.algebra.block_rule
        n = self.algebra.size
        total: Dict[Exps, Coefficient] = {_unit(n, {k: 1, j: e}): self.mode.q_power(a * e)}
        factor = self.mode.lift((LaurentPoly.monomial(b * e) - 1) * sign)
        tail = _unit(n, {j: e - 1})
        for _, omega_exps in self._corrections[(j, k)]:
            for mono, c in self.multiply(omega_exps, tail):
                _accumulate(total, mono, factor * c)
        return _freeze(total)

    def get_cache_info(self) -> Dict:
        """Statistics of the monomial product cache."""
        info = self.multiply.cache_info()
        calls = info.hits + info.misses
        return {
            "hits": info.hits,
            "misses": info.misses,
            "size": info.currsize,
            "maxsize": info.maxsize,
            "hit_rate": info.hits / calls if calls > 0 else 0,
        }

    def clear_cache(self):
        self.multiply.cache_clear()
        self._swap.cache_clear()
        logger.info(f"Rewriting cache cleared for {self.algebra.label} in mode {self.mode}")


@lru_cache(maxsize=64)
def rewriting_engine(algebra: AlgebraPreset, mode: Mode, block_rules: bool = True) -> RewritingEngine:
    return RewritingEngine(algebra, mode, block_rules)


class NCElement:
    """
    Element of an algebra preset in normal form.

    terms maps PBW exponent vectors to nonzero coefficients, LaurentPoly in
    generic mode and CycloNum at a root of unity.
    """

    __slots__ = ("algebra", "mode", "_terms", "block_rules")

    def __init__(
        self,
        algebra: AlgebraPreset,
        mode: Mode,
        terms: Optional[Mapping[Sequence[int], object]] = None,
        block_rules: bool = True,
    ):
        self.algebra = algebra
        self.mode = mode
        self.block_rules = block_rules
        cleaned: Dict[Exps, Coefficient] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            algebra.check_exponents(exps)
            _accumulate(cleaned, exps, mode.lift(coeff))
        self._terms = dict(sorted(cleaned.items(), reverse=True))

    @classmethod
    def _raw(cls, algebra: AlgebraPreset, mode: Mode, terms: Dict[Exps, Coefficient], block_rules: bool) -> "NCElement":
        element = cls.__new__(cls)
        element.algebra = algebra
        element.mode = mode
        element.block_rules = block_rules
        element._terms = dict(sorted(terms.items(), reverse=True))
        return element

    @property
    def terms(self) -> Dict[Exps, Coefficient]:
        """Exponent vector to coefficient, in descending lexicographic order."""
        return dict(self._terms)

    @property
    def engine(self) -> RewritingEngine:
        return rewriting_engine(self.algebra, self.mode, self.block_rules)

    def with_block_rules(self, enabled: bool) -> "NCElement":
        """Same element, multiplied letter by letter when enabled is False."""
        return NCElement._raw(self.algebra, self.mode, self._terms, enabled)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _compatible(self, other: "NCElement"):
        if other.mode != self.mode:
            raise ModeMismatchError(f"Cannot combine elements in modes {self.mode} and {other.mode}")
        if other.algebra != self.algebra:
            raise ModeMismatchError(f"Cannot combine elements of {self.algebra.label} and {other.algebra.label}")

    def _coerce(self, other) -> "NCElement":
        if isinstance(other, NCElement):
            self._compatible(other)
            return other
        return NCElement(self.algebra, self.mode, {(0,) * self.algebra.size: other}, self.block_rules)

    def __add__(self, other) -> "NCElement":
        other = self._coerce(other)
        total = dict(self._terms)
        for exps, coeff in other._terms.items():
            _accumulate(total, exps, coeff)
        return NCElement._raw(self.algebra, self.mode, total, self.block_rules)

    __radd__ = __add__

    def __neg__(self) -> "NCElement":
        return NCElement._raw(self.algebra, self.mode, {e: -c for e, c in self._terms.items()}, self.block_rules)

    def __sub__(self, other) -> "NCElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NCElement":
        return self._coerce(other) - self

    def scale(self, coeff) -> "NCElement":
        coeff = self.mode.lift(coeff)
        total: Dict[Exps, Coefficient] = {}
        for exps, c in self._terms.items():
            _accumulate(total, exps, c * coeff)
        return NCElement._raw(self.algebra, self.mode, total, self.block_rules)

    def __mul__(self, other) -> "NCElement":
        if not isinstance(other, NCElement):
            return self.scale(other)
        self._compatible(other)
        engine = self.engine
        total: Dict[Exps, Coefficient] = {}
        for left, c1 in self._terms.items():
            for right, c2 in other._terms.items():
                for mono, c3 in engine.multiply(left, right):
                    _accumulate(total, mono, c1 * c2 * c3)
        return NCElement._raw(self.algebra, self.mode, total, self.block_rules)

    def __rmul__(self, other) -> "NCElement":
        return self.scale(other)

    def __pow__(self, n: int) -> "NCElement":
        return power(self, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCElement):
            if self.is_zero() and other == 0:
                return True
            return NotImplemented
        return self.algebra == other.algebra and self.mode == other.mode and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.algebra, self.mode, frozenset(self._terms.items())))

    def substitute(self, images: Sequence["NCElement"]) -> "NCElement":
        """Image under the homomorphism sending generator k to images[k]."""
        if len(images) != self.algebra.size:
            raise SpecValidationError(f"Need {self.algebra.size} images, got {len(images)}")
        target = images[0]
        result = target.algebra.zero(target.mode)
        for exps, coeff in self._terms.items():
            scalar = coeff.lift() if isinstance(coeff, CycloNum) else coeff
            result = result + monomial_image(exps, images, target.algebra.one(target.mode)).scale(scalar)
        return result

    def to_json(self) -> List[Dict]:
        return [{"exps": list(exps), "coeff": coeff.to_json()} for exps, coeff in self._terms.items()]

    @classmethod
    def from_json(cls, algebra: AlgebraPreset, mode: Mode, payload: Iterable[Mapping]) -> "NCElement":
        terms: Dict[Exps, Coefficient] = {}
        try:
            for item in payload:
                exps = tuple(int(e) for e in item["exps"])
                terms[exps] = mode.coefficient_from_json(item["coeff"])
        except (KeyError, TypeError, ValueError) as e:
            raise SpecValidationError(f"Malformed element JSON: {e}")
        return cls(algebra, mode, terms)

    def monomial_text(self, exps: Exps) -> str:
        factors = []
        for index, e in enumerate(exps):
            if e == 1:
                factors.append(self.algebra.names[index])
            elif e:
                factors.append(f"{self.algebra.names[index]}^{e}")
        return "*".join(factors)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for exps, coeff in self._terms.items():
            poly = coeff.lift() if isinstance(coeff, CycloNum) else coeff
            terms = poly.terms()
            negative = terms[max(terms)] < 0
            if negative:
                poly = -poly
            if poly == 1:
                coeff_text = ""
            elif poly.is_monomial():
                coeff_text = str(poly)
            else:
                coeff_text = f"({poly})"
            mono = self.monomial_text(exps)
            if mono and coeff_text:
                body = f"{coeff_text}*{mono}"
            else:
                body = mono or coeff_text or "1"
            pieces.append(("-" if negative else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        return text + "".join(f" {sign} {body}" for sign, body in pieces[1:])

    def __repr__(self) -> str:
        return f"NCElement({self.algebra.label}, {self.mode}, {self})"


def monomial_image(exps: Exps, images: Sequence, one):
    """Product over the PBW order of images[k] ** exps[k]."""
    result = one
    for index, e in enumerate(exps):
        if e < 0:
            raise DomainError("Negative powers cannot be substituted")
        for _ in range(e):
            result = result * images[index]
    return result


def relation_residue(relation: Relation, images: Sequence, one, scalar: Callable[[LaurentPoly], object]):
    """
    images[j]·images[k] - q^h images[k]·images[j] - correction, evaluated in any ring.

    scalar maps a Laurent coefficient into the target ring's coefficients.
    """
    j, k = relation.left, relation.right
    residue = images[j] * images[k] - (images[k] * images[j]) * scalar(LaurentPoly.monomial(relation.exponent))
    for coeff, exps in relation.correction:
        residue = residue - monomial_image(exps, images, one) * scalar(coeff)
    return residue


def normal_order(*factors: NCElement) -> NCElement:
    """Normal form of the left-to-right product of the factors."""
    if not factors:
        raise ValueError("normal_order needs at least one factor")
    result = factors[0]
    for factor in factors[1:]:
        result = result * factor
    return result


def multiply(a: NCElement, b: NCElement) -> NCElement:
    return normal_order(a, b)


def omega(algebra: AlgebraPreset, i: int, mode: Mode = GENERIC) -> NCElement:
    """Omega_i = sum_{k >= i} x_k x_k* in normal form."""
    if not algebra.has_stars:
        raise DomainError(f"Omega elements need starred generators; {algebra.label} has none")
    if not 0 <= i <= algebra.N - 1:
        raise DomainError(f"Omega index {i} out of range 0..{algebra.N - 1}")
    return NCElement(algebra, mode, {_pair_exps(algebra.N, k): 1 for k in range(i, algebra.N)})


def commutator(a: NCElement, b: NCElement) -> NCElement:
    return a * b - b * a


def power(a: NCElement, n: int) -> NCElement:
    """a^n by binary exponentiation."""
    if n < 0:
        raise DomainError("power needs a nonnegative exponent")
    result = NCElement._raw(a.algebra, a.mode, {(0,) * a.algebra.size: a.mode.one()}, a.block_rules)
    base = a
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


@dataclass(frozen=True)
class CentralityResult:
    central: bool
    witness: Optional[str] = None
    commutator: Optional[NCElement] = None

    def __bool__(self) -> bool:
        return self.central


def is_central(a: NCElement) -> CentralityResult:
    """Checks [a, g] = 0 for every generator g; reports the first that fails."""
    for name in a.algebra.names:
        g = a.algebra.generator(name, a.mode)
        c = commutator(a, g)
        if not c.is_zero():
            return CentralityResult(False, name, c)
    return CentralityResult(True)


def a_coefficients(n: int) -> List[LaurentPoly]:
    """
    a_0(n), ..., a_n(n) with (z z*)^n = sum_t a_t(n) z^t z*^t Omega^(n-t).

    a_t(n+1) = (q^-2t - 1) a_t(n) + a_{t-1}(n), a_0(0) = 1.
    """
    if n < 0:
        raise DomainError("a_coefficients needs n >= 0")
    current = [LaurentPoly.one()]
    for step in range(n):
        following = []
        for t in range(step + 2):
            value = LaurentPoly.zero()
            if t <= step:
                value += (LaurentPoly.monomial(-2 * t) - 1) * current[t]
            if t >= 1:
                value += current[t - 1]
            following.append(value)
        current = following
    return current


_FIELD, _QF = fraction_field("q", QQ)


def a_closed_form(t: int, n: int) -> LaurentPoly:
    """
    a_t(n) = sum_b p_b^(n-1) / prod_{a != b} (p_b - p_a) with p_i = q^-2i - 1.

    The rational function is cleared to a Laurent polynomial.
    """
    if t < 1 or n < 1:
        raise DomainError("a_closed_form needs t >= 1 and n >= 1")
    p = [None] + [_QF ** (-2 * i) - 1 for i in range(1, t + 1)]
    total = _FIELD.zero
    for b in range(1, t + 1):
        denominator = _FIELD.one
        for a in range(1, t + 1):
            if a != b:
                denominator *= p[b] - p[a]
        total += p[b] ** (n - 1) / denominator
    numer_terms = {monom[0]: coeff for monom, coeff in total.numer.terms()}
    denom_terms = total.denom.terms()
    if len(denom_terms) != 1:
        raise InconsistencyError(f"a_{t}({n}) did not clear to a Laurent polynomial")
    ((denom_exp,), denom_coeff) = denom_terms[0]
    return LaurentPoly.from_terms({exp - denom_exp: coeff / denom_coeff for exp, coeff in numer_terms.items()})


def c_coefficients(i: int) -> List[LaurentPoly]:
    """c_{i,0}, ..., c_{i,i} from c_{i+1,j} = q^-2j c_{i,j} + q^-2(j-1) c_{i,j-1}, c_{0,0} = 1."""
    if i < 0:
        raise DomainError("c_coefficients needs i >= 0")
    row = [LaurentPoly.one()]
    for step in range(i):
        following = []
        for j in range(step + 2):
            value = LaurentPoly.zero()
            if j <= step:
                value += LaurentPoly.monomial(-2 * j) * row[j]
            if j >= 1:
                value += LaurentPoly.monomial(-2 * (j - 1)) * row[j - 1]
            following.append(value)
        row = following
    return row


def young_coefficients(i: int) -> List[LaurentPoly]:
    """
    f_{i,j} for j = 0..i: sum of q^(2 * area) over strictly decreasing rows
    of j parts below i, enumerated explicitly.
    """
    result = []
    for j in range(i + 1):
        terms: Dict[int, int] = {}
        for row in combinations(range(i), j):
            area = 2 * sum(row)
            terms[area] = terms.get(area, 0) + 1
        result.append(LaurentPoly.from_terms(terms))
    return result


def d_coefficients(i: int, s: int) -> List[LaurentPoly]:
    """
    d_{i,1}(s), ..., d_{i,i}(s) in z^i z*^s = z*^s z^i + sum_j d_{i,j}(s) Omega^j z*^(s-j) z^(i-j).

    Raises:
        DomainError: unless 1 <= i <= s
    """
    if not 1 <= i <= s:
        raise DomainError(f"d_coefficients needs 1 <= i <= s, got i={i}, s={s}")
    c = c_coefficients(i)
    result = []
    prefix = LaurentPoly.one()
    for j in range(1, i + 1):
        prefix = prefix * (LaurentPoly.monomial(2 * (s - j + 1)) - 1)
        result.append(prefix * c[j])
    return result


def d_coefficient_residue(i: int, s: int, N: int = 2, mode: Mode = GENERIC) -> NCElement:
    """
    Residue of the d-coefficient identity for z = z_0 in FRT(N); zero when the identity holds.
    """
    algebra = AlgebraPreset.frt(N)
    z = algebra.generator("z0", mode)
    zs = algebra.generator("zs0", mode)
    big_omega = omega(algebra, 1, mode)
    rhs = power(zs, s) * power(z, i)
    for j, d in enumerate(d_coefficients(i, s), start=1):
        rhs = rhs + normal_order(power(big_omega, j), power(zs, s - j), power(z, i - j)).scale(d)
    return power(z, i) * power(zs, s) - rhs


def poisson_from_commutator(g1: str, g2: str, N: int, m: int, max_product: Optional[int] = None):
    """
    Classical bracket {g1, g2} as lim [g1^m, g2^m] / (m (q^m - 1)) at a primitive m-th root.

    The commutator is computed in FRT(N) at generic q, the limit is taken
    coefficient by coefficient and surviving monomials x^(m e) become a^e.

    Returns:
        PolyElement in QQ[a0..a{N-1}, as0..as{N-1}]

    Raises:
        DomainError: m·N exceeds the configured bound
        InconsistencyError: a limit fails to exist or a surviving monomial is off the m-lattice
    """
    if max_product is None:
        max_product = settings.POISSON_ORACLE_MAX_MN
    check_modulus(m)
    if m * N > max_product:
        raise DomainError(f"m*N = {m * N} exceeds the configured oracle bound {max_product}")
    algebra = AlgebraPreset.frt(N)
    x = power(algebra.generator(g1), m)
    y = power(algebra.generator(g2), m)
    bracket = commutator(x, y)
    ring, gens = classical_ring(N)
    result = ring.zero
    for exps, coeff in bracket.terms.items():
        try:
            value = limit_bracket(coeff, m)
        except LimitDoesNotExistError as e:
            raise InconsistencyError(f"Commutator coefficient {coeff} of {bracket.monomial_text(exps)} has no limit: {e}")
        if value.is_zero():
            continue
        if not value.is_rational() or any(e % m for e in exps):
            raise InconsistencyError(f"Limit {value} survives on {bracket.monomial_text(exps)}, off the m-lattice")
        term = ring.one * value.to_rational()
        for index, e in enumerate(exps):
            term *= gens[index] ** (e // m)
        result += term
    logger.info(f"Oracle bracket {{{g1}, {g2}}} for N={N}, m={m}: {result}")
    return result
