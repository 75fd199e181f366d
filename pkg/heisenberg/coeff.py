"""
Exact coefficient arithmetic.

LaurentPoly is a Laurent polynomial in the quantum parameter q over the
rationals, CycloNum its residue modulo the m-th cyclotomic polynomial, i.e.
its value at a primitive m-th root of unity. Both are immutable.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .exceptions import (
    LimitDoesNotExistError,
    ModeMismatchError,
    NotInvertibleError,
    SpecValidationError,
    UnsupportedModulusError,
)

logger = logging.getLogger(__name__)

POLY_RING, Q = ring("q", QQ)

RationalLike = Union[int, str, Fraction, Rational, "QQ.dtype"]


def to_rational(value) -> "QQ.dtype":
    """
    Convert an int, a "p/q" string, a Fraction or a sympy Rational to a QQ element.

    Raises:
        SpecValidationError: the value cannot be read as an exact rational
    """
    if isinstance(value, bool):
        raise SpecValidationError(f"Not a rational number: {value!r}")
    if QQ.of_type(value):
        return value
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    if isinstance(value, str):
        try:
            return QQ.from_sympy(Rational(value.strip()))
        except (TypeError, ValueError, ZeroDivisionError):
            raise SpecValidationError(f"Not a rational number: {value!r}")
    raise SpecValidationError(f"Not a rational number: {value!r}")


def format_rational(value) -> str:
    """Fully reduced "p/q" form, plain integer when the denominator is 1."""
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _poly_from_terms(terms: Mapping[int, "QQ.dtype"]):
    return POLY_RING.from_dict({(exp,): coeff for exp, coeff in terms.items() if coeff})


def _poly_terms(poly) -> Dict[int, "QQ.dtype"]:
    return {monom[0]: coeff for monom, coeff in poly.terms()}


class LaurentPoly:
    """
    Laurent polynomial in q with rational coefficients.

    Stored as q^shift * poly where poly is an ordinary polynomial that is not
    divisible by q, so equal values always have equal representations.
    """

    __slots__ = ("_shift", "_poly")

    def __init__(self, poly=None, shift: int = 0):
        if poly is None:
            poly = POLY_RING.zero
        if not poly:
            self._shift = 0
            self._poly = POLY_RING.zero
            return
        low = min(monom[0] for monom in poly.monoms())
        if low:
            poly = _poly_from_terms({exp - low: coeff for exp, coeff in _poly_terms(poly).items()})
        self._shift = shift + low
        self._poly = poly

    @classmethod
    def from_terms(cls, terms: Mapping[int, RationalLike]) -> "LaurentPoly":
        """Build from an {exponent: coefficient} mapping; zero coefficients are dropped."""
        cleaned = {int(exp): to_rational(coeff) for exp, coeff in terms.items()}
        cleaned = {exp: coeff for exp, coeff in cleaned.items() if coeff}
        if not cleaned:
            return cls()
        low = min(cleaned)
        return cls(_poly_from_terms({exp - low: coeff for exp, coeff in cleaned.items()}), low)

    @classmethod
    def constant(cls, value: RationalLike) -> "LaurentPoly":
        return cls.from_terms({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: RationalLike = 1) -> "LaurentPoly":
        return cls.from_terms({exponent: coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(POLY_RING.one)

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls.monomial(1)

    @classmethod
    def coerce(cls, value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return cls.constant(value)

    @property
    def shift(self) -> int:
        return self._shift

    @property
    def poly(self):
        """The q-free polynomial part; self == q^shift * poly."""
        return self._poly

    def terms(self) -> Dict[int, "QQ.dtype"]:
        """Exponent to coefficient map, exponent-ascending."""
        raw = _poly_terms(self._poly)
        return {exp + self._shift: raw[exp] for exp in sorted(raw)}

    def is_zero(self) -> bool:
        return not self._poly

    def __bool__(self) -> bool:
        return bool(self._poly)

    def is_constant(self) -> bool:
        return self.is_zero() or (self._shift == 0 and self._poly.is_ground)

    def is_monomial(self) -> bool:
        return len(self._poly.terms()) == 1

    def constant_value(self) -> "QQ.dtype":
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms().get(0, QQ.zero)

    def degree_range(self) -> Tuple[int, int]:
        """(lowest, highest) exponent; (0, 0) for zero."""
        if self.is_zero():
            return 0, 0
        return self._shift, self._shift + self._poly.degree()

    def __add__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        low = min(self._shift, other._shift)
        total = self._poly * Q ** (self._shift - low) + other._poly * Q ** (other._shift - low)
        return LaurentPoly(total, low)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self._poly, self._shift)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        # q does not divide either factor, so it does not divide the product
        product = LaurentPoly.__new__(LaurentPoly)
        product._shift = self._shift + other._shift
        product._poly = self._poly * other._poly
        return product

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n >= 0:
            result = LaurentPoly.__new__(LaurentPoly)
            result._shift = self._shift * n
            result._poly = self._poly**n
            if not result._poly:
                result._shift = 0
            return result
        if not self.is_monomial():
            raise NotInvertibleError(f"{self} is not a unit of the Laurent ring")
        ((exp, coeff),) = self.terms().items()
        return LaurentPoly.monomial(exp * n, coeff**n)

    def __truediv__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        return self * other ** (-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._shift == other._shift and self._poly == other._poly
        try:
            return self == LaurentPoly.coerce(other)
        except SpecValidationError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self._shift, tuple(sorted(self.terms().items()))))

    def substitute_power(self, k: int) -> "LaurentPoly":
        """The Laurent polynomial p(q^k)."""
        result: Dict[int, "QQ.dtype"] = {}
        for exp, coeff in self.terms().items():
            result[exp * k] = result.get(exp * k, QQ.zero) + coeff
        return LaurentPoly.from_terms(result)

    def evaluate(self, point: RationalLike) -> "QQ.dtype":
        """Value at a nonzero rational q."""
        point = to_rational(point)
        if not point and self._shift < 0:
            raise ZeroDivisionError("negative powers of q at q = 0")
        total = QQ.zero
        for exp, coeff in self.terms().items():
            total += coeff * point**exp
        return total

    def to_json(self) -> Dict[str, str]:
        return {str(exp): format_rational(coeff) for exp, coeff in self.terms().items()}

    @classmethod
    def from_json(cls, payload: Mapping[str, str]) -> "LaurentPoly":
        if not isinstance(payload, Mapping):
            raise SpecValidationError(f"Laurent polynomial must be a JSON object, got {payload!r}")
        try:
            return cls.from_terms({int(exp): coeff for exp, coeff in payload.items()})
        except (TypeError, ValueError) as e:
            raise SpecValidationError(f"Malformed Laurent polynomial {payload!r}: {e}")

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exp, coeff in sorted(self.terms().items(), reverse=True):
            sign = "-" if coeff < 0 else "+"
            magnitude = -coeff if coeff < 0 else coeff
            if exp == 0:
                body = format_rational(magnitude)
            else:
                power = "q" if exp == 1 else f"q^{exp}"
                body = power if magnitude == 1 else f"{format_rational(magnitude)}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        return text + "".join(f"{sign}{body}" for sign, body in parts[1:])

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def check_modulus(m: int):
    if not isinstance(m, int) or m < 3 or m % 2 == 0:
        raise UnsupportedModulusError(f"Root-of-unity order must be odd and at least 3, got {m}")


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int):
    """
    Phi_m as a polynomial in q, by exact division of q^m - 1 by Phi_d over the proper divisors d.
    """
    if m < 1:
        raise UnsupportedModulusError(f"Cyclotomic polynomial needs m >= 1, got {m}")
    poly = Q**m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = poly.exquo(cyclotomic_polynomial(d))
    return poly


@lru_cache(maxsize=None)
def _cofactor(m: int):
    return (Q**m - 1).exquo(cyclotomic_polynomial(m))


def totient(m: int) -> int:
    return cyclotomic_polynomial(m).degree()


class CycloNum:
    """
    Element of Q(zeta_m), stored as a polynomial of degree < phi(m) reduced modulo Phi_m.
    """

    __slots__ = ("m", "_poly")

    def __init__(self, m: int, poly=None):
        check_modulus(m)
        self.m = m
        if poly is None:
            poly = POLY_RING.zero
        self._poly = poly.rem(cyclotomic_polynomial(m))

    @classmethod
    def from_coeffs(cls, m: int, coeffs: Iterable[RationalLike]) -> "CycloNum":
        coeffs = [to_rational(c) for c in coeffs]
        if len(coeffs) != totient(m):
            raise SpecValidationError(f"CycloNum for m={m} needs {totient(m)} coefficients, got {len(coeffs)}")
        return cls(m, _poly_from_terms(dict(enumerate(coeffs))))

    @classmethod
    def rational(cls, m: int, value: RationalLike) -> "CycloNum":
        return cls(m, POLY_RING.from_dict({(0,): to_rational(value)}) if to_rational(value) else None)

    @property
    def coeffs(self) -> List["QQ.dtype"]:
        raw = _poly_terms(self._poly)
        return [raw.get(k, QQ.zero) for k in range(totient(self.m))]

    @property
    def poly(self):
        return self._poly

    def _same_field(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.m != self.m:
                raise ModeMismatchError(f"Cannot combine values at m={self.m} and m={other.m}")
            return other
        return CycloNum.rational(self.m, other)

    def is_zero(self) -> bool:
        return not self._poly

    def __bool__(self) -> bool:
        return bool(self._poly)

    def is_rational(self) -> bool:
        return self._poly.is_ground

    def to_rational(self) -> "QQ.dtype":
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return _poly_terms(self._poly).get(0, QQ.zero)

    def __add__(self, other) -> "CycloNum":
        other = self._same_field(other)
        return CycloNum(self.m, self._poly + other._poly)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.m, -self._poly)

    def __sub__(self, other) -> "CycloNum":
        other = self._same_field(other)
        return CycloNum(self.m, self._poly - other._poly)

    def __rsub__(self, other) -> "CycloNum":
        return self._same_field(other) - self

    def __mul__(self, other) -> "CycloNum":
        other = self._same_field(other)
        return CycloNum(self.m, self._poly * other._poly)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """
        Inverse by the extended Euclidean algorithm against Phi_m.

        Raises:
            NotInvertibleError: the residue is zero or shares a factor with Phi_m
        """
        if self.is_zero():
            raise NotInvertibleError("Zero has no inverse")
        s, _, g = self._poly.gcdex(cyclotomic_polynomial(self.m))
        if g.degree() > 0:
            raise NotInvertibleError(f"{self} is a zero divisor modulo Phi_{self.m}")
        return CycloNum(self.m, s.quo_ground(g.LC))

    def __truediv__(self, other) -> "CycloNum":
        other = self._same_field(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "CycloNum":
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloNum.rational(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.m == other.m and self._poly == other._poly
        try:
            return self == CycloNum.rational(self.m, other)
        except SpecValidationError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, tuple(self.coeffs)))

    def lift(self) -> LaurentPoly:
        """The reduced representative as a Laurent polynomial."""
        return LaurentPoly(self._poly)

    def to_json(self) -> Dict:
        return {"m": self.m, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, payload: Mapping) -> "CycloNum":
        try:
            return cls.from_coeffs(int(payload["m"]), payload["coeffs"])
        except (KeyError, TypeError) as e:
            raise SpecValidationError(f"Malformed cyclotomic number {payload!r}: {e}")

    def __str__(self) -> str:
        return str(self.lift())

    def __repr__(self) -> str:
        return f"CycloNum(m={self.m}, {self})"


def cyclo_reduce(p: LaurentPoly, m: int) -> CycloNum:
    """
    Value of p at a primitive m-th root of unity, as a residue modulo Phi_m.

    Negative exponents map through q^-1 = q^(m-1).

    Raises:
        UnsupportedModulusError: m even or m < 3
    """
    check_modulus(m)
    p = LaurentPoly.coerce(p)
    return CycloNum(m, p.poly * Q ** (p.shift % m))


def zeta_power(k: int, m: int) -> CycloNum:
    """zeta^k for the primitive m-th root zeta = q mod Phi_m."""
    return cyclo_reduce(LaurentPoly.monomial(k), m)


def limit_bracket(p: LaurentPoly, m: int) -> CycloNum:
    """
    Exact limit of p(q) / (m (q^m - 1)) as q tends to a primitive m-th root of unity.

    Both numerator and denominator are divided by Phi_m, then evaluated.

    Raises:
        UnsupportedModulusError: m even or m < 3
        LimitDoesNotExistError: Phi_m does not divide p
    """
    check_modulus(m)
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        return CycloNum(m)
    quotient, remainder = p.poly.div(cyclotomic_polynomial(m))
    if remainder:
        raise LimitDoesNotExistError(f"Phi_{m} does not divide {p}; the limit does not exist")
    numerator = cyclo_reduce(LaurentPoly.monomial(p.shift), m) * CycloNum(m, quotient)
    denominator = CycloNum(m, _cofactor(m)) * m
    return numerator / denominator


@dataclass(frozen=True)
class Mode:
    """
    Coefficient mode of noncommutative elements and representation matrices.

    m is None for generic q, otherwise q is a primitive m-th root of unity.
    """

    m: Optional[int] = None

    def __post_init__(self):
        if self.m is not None:
            check_modulus(self.m)

    @classmethod
    def root_of_unity(cls, m: int) -> "Mode":
        return cls(m)

    @property
    def is_generic(self) -> bool:
        return self.m is None

    def lift(self, value) -> Union[LaurentPoly, CycloNum]:
        """Bring a scalar (int, rational, LaurentPoly or CycloNum) into this mode."""
        if isinstance(value, CycloNum):
            if value.m != self.m:
                raise ModeMismatchError(f"Value at m={value.m} used in mode {self}")
            return value
        value = LaurentPoly.coerce(value)
        if self.m is None:
            return value
        return cyclo_reduce(value, self.m)

    def zero(self) -> Union[LaurentPoly, CycloNum]:
        return self.lift(0)

    def one(self) -> Union[LaurentPoly, CycloNum]:
        return self.lift(1)

    def q_power(self, exponent: int) -> Union[LaurentPoly, CycloNum]:
        return self.lift(LaurentPoly.monomial(exponent))

    def coefficient_from_json(self, payload) -> Union[LaurentPoly, CycloNum]:
        if self.m is None:
            return LaurentPoly.from_json(payload)
        return self.lift(CycloNum.from_json(payload))

    def __str__(self) -> str:
        return "generic" if self.m is None else f"root_of_unity({self.m})"


GENERIC = Mode()
