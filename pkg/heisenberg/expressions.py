"""
Expression language for algebra elements.

Grammar (whitespace is insignificant, '^' binds tighter than '*'):

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] integer)?
    atom   := generator | rational | 'q' | '(' expr ')'

Generators are z<k>, zs<k>, w<k>, ws<k> and O<k> for Omega_k. Rationals are
written as a single token, "3" or "3/4".
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .coeff import GENERIC, CycloNum, LaurentPoly, Mode, format_rational, to_rational
from .exceptions import DomainError, ExpressionSyntaxError, SpecValidationError
from .ncalg import AlgebraPreset, NCElement, omega, power

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<generator>(?:zs|ws|z|w|O)\d+)"
    r"|(?P<q>q)"
    r"|(?P<op>[-+*^()])"
)
GENERATOR_PATTERN = re.compile(r"(zs|ws|z|w|O)(\d+)")


@dataclass(frozen=True)
class Num:
    value: object


@dataclass(frozen=True)
class QSym:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    """terms are (sign, node) pairs with sign +1 or -1."""

    terms: Tuple[Tuple[int, "Node"], ...]


Node = Union[Num, QSym, Gen, Power, Product, Sum]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def _location(text: str, position: int) -> Tuple[int, int]:
    line = text.count("\n", 0, position) + 1
    column = position - (text.rfind("\n", 0, position) + 1) + 1
    return line, column


def _syntax_error(text: str, position: int, message: str) -> ExpressionSyntaxError:
    line, column = _location(text, position)
    return ExpressionSyntaxError(message, line, column, text)


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise _syntax_error(text, position, f"Unexpected character {text[position]!r}")
        kind = match.lastgroup
        if kind != "space":
            tokens.append(Token(kind, match.group(), position))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def fail(self, message: str, token: Optional[Token] = None) -> ExpressionSyntaxError:
        token = token or self.current
        return _syntax_error(self.text, token.position, message)

    def parse(self) -> Node:
        if self.current.kind == "end":
            raise self.fail("Empty expression")
        node = self.expr()
        if self.current.kind != "end":
            raise self.fail(f"Unexpected {self.current.text!r}")
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        leading = False
        if self.accept("-"):
            sign, leading = -1, True
        else:
            self.accept("+")
        terms.append((sign, self.term()))
        while self.current.kind == "op" and self.current.text in "+-":
            sign = 1 if self.advance().text == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and not leading:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if not self.accept("^"):
            return base
        negative = self.accept("-")
        token = self.current
        if token.kind != "number" or "/" in token.text:
            raise self.fail("Exponent must be an integer")
        self.advance()
        exponent = int(token.text)
        return Power(base, -exponent if negative else exponent)

    def atom(self) -> Node:
        token = self.current
        if token.kind == "number":
            self.advance()
            try:
                return Num(to_rational(token.text))
            except SpecValidationError:
                raise self.fail(f"Invalid rational {token.text!r}", token)
        if token.kind == "generator":
            self.advance()
            return Gen(token.text)
        if token.kind == "q":
            self.advance()
            return QSym()
        if self.accept("("):
            node = self.expr()
            if not self.accept(")"):
                raise self.fail("Expected ')'")
            return node
        if token.kind == "end":
            raise self.fail("Unexpected end of expression")
        raise self.fail(f"Unexpected {token.text!r}")


def parse_expression(text: str) -> Node:
    """
    Parse text into an expression tree.

    Raises:
        ExpressionSyntaxError: with the line and column of the offending token
    """
    return _Parser(text).parse()


def format_expression(node: Node) -> str:
    """Print a tree so that parsing the result gives the same tree back."""
    if isinstance(node, Num):
        return format_rational(node.value)
    if isinstance(node, QSym):
        return "q"
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Power):
        base = format_expression(node.base)
        if isinstance(node.base, (Sum, Product, Power)):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Product):
        parts = []
        for factor in node.factors:
            text = format_expression(factor)
            parts.append(f"({text})" if isinstance(factor, (Sum, Product)) else text)
        return "*".join(parts)
    pieces = []
    for position, (sign, term) in enumerate(node.terms):
        text = format_expression(term)
        if isinstance(term, Sum):
            text = f"({text})"
        if position == 0:
            pieces.append(f"-{text}" if sign < 0 else text)
        else:
            pieces.append(f" {'-' if sign < 0 else '+'} {text}")
    return "".join(pieces)


def format_element(element: NCElement) -> str:
    return str(element)


def _split_generator(name: str) -> Tuple[str, int]:
    prefix, digits = GENERATOR_PATTERN.fullmatch(name).groups()
    return prefix, int(digits)


def _inverse(element: NCElement, exponent: int) -> NCElement:
    """element^exponent for exponent < 0; only monomial scalars and single generators are inverted."""
    algebra, mode = element.algebra, element.mode
    terms = element.terms
    if len(terms) == 1:
        ((exps, coeff),) = terms.items()
        if not any(exps):
            if isinstance(coeff, CycloNum) or coeff.is_monomial():
                return algebra.scalar(coeff**exponent, mode)
        elif coeff == mode.one() and sum(1 for e in exps if e) == 1:
            return algebra.monomial([e * exponent for e in exps], 1, mode)
    raise DomainError(f"Negative exponent needs a generator or a monomial scalar, got {element}")


def evaluate(node: Node, algebra: AlgebraPreset, mode: Mode = GENERIC) -> NCElement:
    """
    Evaluate a tree in algebra.

    Raises:
        UnknownGeneratorError: a generator name is not part of algebra
        DomainError: a negative power of a non-invertible generator
    """
    if isinstance(node, Num):
        return algebra.scalar(node.value, mode)
    if isinstance(node, QSym):
        return algebra.scalar(LaurentPoly.q(), mode)
    if isinstance(node, Gen):
        prefix, index = _split_generator(node.name)
        if prefix == "O":
            return omega(algebra, index, mode)
        return algebra.generator(node.name, mode)
    if isinstance(node, Power):
        base = evaluate(node.base, algebra, mode)
        if node.exponent < 0:
            return _inverse(base, node.exponent)
        return power(base, node.exponent)
    if isinstance(node, Product):
        result = evaluate(node.factors[0], algebra, mode)
        for factor in node.factors[1:]:
            result = result * evaluate(factor, algebra, mode)
        return result
    result = algebra.zero(mode)
    for sign, term in node.terms:
        value = evaluate(term, algebra, mode)
        result = result + value if sign > 0 else result - value
    return result


def evaluate_text(text: str, algebra: AlgebraPreset, mode: Mode = GENERIC) -> NCElement:
    element = evaluate(parse_expression(text), algebra, mode)
    logger.debug(f"Evaluated {text!r} in {algebra.label}: {element}")
    return element
