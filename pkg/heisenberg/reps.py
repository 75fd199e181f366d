"""
Explicit representations over Q(zeta_m) and the dimension bookkeeping of irreducibles.

Matrices are sparse and exact. Representations are checked against an
algebra preset by substituting them into every defining relation.
"""

import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from django.conf import settings
from sympy import Matrix, igcd

from .coeff import CycloNum, LaurentPoly, check_modulus, cyclo_reduce, totient, zeta_power
from .exceptions import DegenerateBlockError, DimensionMismatchError, DomainError, UnknownGeneratorError
from .ncalg import AlgebraPreset, relation_residue
from .poisson import LeafStructure, PointData, leaf_dimension, oh_rank, rank, structure_data
from .skewnf import AlgebraSpec, SkewMatrix, build_matrix, canonical_form, exact_rank, matrix_rank

logger = logging.getLogger(__name__)

Position = Tuple[int, int]


class CycloMatrix:
    """Square sparse matrix with CycloNum entries; missing entries are zero."""

    __slots__ = ("m", "dim", "_entries")

    def __init__(self, m: int, dim: int, entries: Optional[Mapping[Position, object]] = None):
        check_modulus(m)
        self.m = m
        self.dim = dim
        self._entries: Dict[Position, CycloNum] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatchError(f"Entry ({i}, {j}) outside a {dim}x{dim} matrix")
            value = _as_cyclo(value, m)
            if value:
                self._entries[(i, j)] = value

    @classmethod
    def identity(cls, m: int, dim: int) -> "CycloMatrix":
        return cls(m, dim, {(i, i): 1 for i in range(dim)})

    @classmethod
    def diagonal(cls, m: int, values: Sequence) -> "CycloMatrix":
        return cls(m, len(values), {(i, i): v for i, v in enumerate(values)})

    @property
    def entries(self) -> Dict[Position, CycloNum]:
        return dict(self._entries)

    def __getitem__(self, position: Position) -> CycloNum:
        return self._entries.get(position, CycloNum(self.m))

    def _check(self, other: "CycloMatrix"):
        if other.m != self.m or other.dim != self.dim:
            raise DimensionMismatchError(
                f"Cannot combine {self.dim}x{self.dim} (m={self.m}) with {other.dim}x{other.dim} (m={other.m})"
            )

    def is_zero(self) -> bool:
        return not self._entries

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check(other)
        total = dict(self._entries)
        for position, value in other._entries.items():
            total[position] = total[position] + value if position in total else value
        return CycloMatrix(self.m, self.dim, total)

    def __neg__(self) -> "CycloMatrix":
        return CycloMatrix(self.m, self.dim, {p: -v for p, v in self._entries.items()})

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        return self + (-other)

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check(other)
        by_row: Dict[int, List[Tuple[int, CycloNum]]] = {}
        for (l, j), value in other._entries.items():
            by_row.setdefault(l, []).append((j, value))
        total: Dict[Position, CycloNum] = {}
        for (i, l), left in self._entries.items():
            for j, right in by_row.get(l, ()):
                product = left * right
                total[(i, j)] = total[(i, j)] + product if (i, j) in total else product
        return CycloMatrix(self.m, self.dim, total)

    def scale(self, value) -> "CycloMatrix":
        value = _as_cyclo(value, self.m)
        return CycloMatrix(self.m, self.dim, {p: v * value for p, v in self._entries.items()})

    def __mul__(self, other) -> "CycloMatrix":
        if isinstance(other, CycloMatrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other) -> "CycloMatrix":
        return self.scale(other)

    def transpose(self) -> "CycloMatrix":
        return CycloMatrix(self.m, self.dim, {(j, i): v for (i, j), v in self._entries.items()})

    def kron(self, other: "CycloMatrix") -> "CycloMatrix":
        if other.m != self.m:
            raise DimensionMismatchError(f"Cannot take a tensor product across m={self.m} and m={other.m}")
        n = other.dim
        entries = {}
        for (i, j), a in self._entries.items():
            for (k, l), b in other._entries.items():
                entries[(i * n + k, j * n + l)] = a * b
        return CycloMatrix(self.m, self.dim * n, entries)

    def is_monomial(self) -> bool:
        rows = [i for i, _ in self._entries]
        cols = [j for _, j in self._entries]
        return len(self._entries) == self.dim and len(set(rows)) == self.dim and len(set(cols)) == self.dim

    def inverse(self) -> "CycloMatrix":
        """Inverse of a monomial matrix (one nonzero entry per row and column)."""
        if not self.is_monomial():
            raise DomainError("Only monomial matrices are inverted")
        return CycloMatrix(self.m, self.dim, {(j, i): v.inverse() for (i, j), v in self._entries.items()})

    def power(self, n: int) -> "CycloMatrix":
        base = self.inverse() if n < 0 else self
        n = abs(n)
        result = CycloMatrix.identity(self.m, self.dim)
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def __pow__(self, n: int) -> "CycloMatrix":
        return self.power(n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return self.m == other.m and self.dim == other.dim and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.m, self.dim, frozenset(self._entries.items())))

    def to_json(self) -> Dict:
        return {
            "m": self.m,
            "dim": self.dim,
            "entries": [[i, j, self._entries[(i, j)].to_json()["coeffs"]] for i, j in sorted(self._entries)],
        }

    def __repr__(self) -> str:
        return f"CycloMatrix(m={self.m}, dim={self.dim}, nonzero={len(self._entries)})"


def _as_cyclo(value, m: int) -> CycloNum:
    if isinstance(value, CycloNum):
        if value.m != m:
            raise DimensionMismatchError(f"Entry at m={value.m} in a matrix over m={m}")
        return value
    if isinstance(value, LaurentPoly):
        return cyclo_reduce(value, m)
    return CycloNum.rational(m, value)


def clock(m: int) -> CycloMatrix:
    """D = diag(1, zeta, ..., zeta^(m-1))."""
    return CycloMatrix.diagonal(m, [zeta_power(i, m) for i in range(m)])


def shift(m: int) -> CycloMatrix:
    """sigma(v_i) = v_{i+1} with indices mod m, so that D sigma = q sigma D."""
    return CycloMatrix(m, m, {((i + 1) % m, i): 1 for i in range(m)})


def _embed(op: CycloMatrix, position: int, factors: int) -> CycloMatrix:
    """I x ... x op x ... x I with op in the given tensor factor."""
    result = None
    for index in range(factors):
        piece = op if index == position else CycloMatrix.identity(op.m, op.dim)
        result = piece if result is None else result.kron(piece)
    return result


@dataclass
class RepMatrices:
    m: int
    dim: int
    mats: Dict[str, CycloMatrix]

    def __post_init__(self):
        for name, matrix in self.mats.items():
            if matrix.dim != self.dim or matrix.m != self.m:
                raise DimensionMismatchError(
                    f"Generator {name} acts as a {matrix.dim}x{matrix.dim} matrix over m={matrix.m}, "
                    f"expected {self.dim}x{self.dim} over m={self.m}"
                )

    @property
    def names(self) -> List[str]:
        return list(self.mats)

    def with_matrix(self, name: str, matrix: CycloMatrix) -> "RepMatrices":
        mats = dict(self.mats)
        mats[name] = matrix
        return RepMatrices(self.m, self.dim, mats)

    def to_json(self) -> Dict:
        return {"m": self.m, "dim": self.dim, "generators": {name: mat.to_json() for name, mat in self.mats.items()}}


def frt_representation(N: int, m: int) -> RepMatrices:
    """
    The m^(N-1) dimensional representation of FRTbar(N) by clock and shift
    operators on N-1 tensor factors.

    z_0 = D_1 s_1 ... s_{N-1}, z_0* = D_1^-1 s_1^-1 ... s_{N-1}^-1,
    z_i = D_i s_{i+1} ... s_{N-1}, z_i* = D_i s_{i+1}^-1 ... s_{N-1}^-1 for 0 < i < N-1,
    z_{N-1} = z_{N-1}* = D_{N-1}.
    """
    check_modulus(m)
    if N < 2:
        raise DomainError(f"frt_representation needs N >= 2, got {N}")
    factors = N - 1
    D = [_embed(clock(m), i - 1, factors) for i in range(1, N)]
    S = [_embed(shift(m), i - 1, factors) for i in range(1, N)]
    S_inv = [s.inverse() for s in S]

    def chain(ops, start):
        result = CycloMatrix.identity(m, m**factors)
        for op in ops[start:]:
            result = result @ op
        return result

    plain, star = {}, {}
    plain[0] = D[0] @ chain(S, 0)
    star[0] = D[0].inverse() @ chain(S_inv, 0)
    for i in range(1, N - 1):
        plain[i] = D[i - 1] @ chain(S, i)
        star[i] = D[i - 1] @ chain(S_inv, i)
    plain[N - 1] = star[N - 1] = D[N - 2]

    mats = {f"z{i}": plain[i] for i in range(N)}
    mats.update({f"zs{i}": star[i] for i in range(N)})
    logger.info(f"Built FRTbar({N}) representation at m={m} of dimension {m ** factors}")
    return RepMatrices(m, m**factors, mats)


def torus_representation(H: SkewMatrix, m: int) -> RepMatrices:
    """
    Representation of the quantum torus with defining matrix H of dimension m^(rank/2).

    Each canonical block gets a shift / clock^m_i pair on its own tensor factor,
    kernel directions act as the identity, and the original generators are
    transported back through W^-1.

    Raises:
        DegenerateBlockError: m shares a factor with some canonical block
    """
    check_modulus(m)
    form = canonical_form(H)
    for size in form.blocks:
        if igcd(size, m) != 1:
            raise DegenerateBlockError(f"Block {size} shares a factor with m={m}")
    factors = len(form.blocks)
    dim = m**factors
    new_generators: List[CycloMatrix] = []
    for b, size in enumerate(form.blocks):
        pair = [_embed(shift(m), b, factors), _embed(clock(m).power(size), b, factors)]
        if b == 0 and form.orientation == -1:
            pair.reverse()
        new_generators.extend(pair)
    new_generators.extend(CycloMatrix.identity(m, dim) for _ in range(form.zero_count))

    W_inv = Matrix([list(row) for row in form.W]).inv() if H.n else None
    mats = {}
    for u in range(H.n):
        image = CycloMatrix.identity(m, dim)
        for k, generator in enumerate(new_generators):
            exponent = int(W_inv[u, k])
            if exponent:
                image = image @ generator.power(exponent)
        mats[f"z{u}"] = image
    logger.info(f"Built torus representation of a {H.n}x{H.n} matrix at m={m} of dimension {dim}")
    return RepMatrices(m, dim, mats)


def direct_sum(rep1: RepMatrices, rep2: RepMatrices) -> RepMatrices:
    if rep1.m != rep2.m or rep1.names != rep2.names:
        raise DimensionMismatchError("Direct sums need the same modulus and generator names")
    dim = rep1.dim + rep2.dim
    mats = {}
    for name in rep1.names:
        entries = dict(rep1.mats[name].entries)
        for (i, j), value in rep2.mats[name].entries.items():
            entries[(i + rep1.dim, j + rep1.dim)] = value
        mats[name] = CycloMatrix(rep1.m, dim, entries)
    return RepMatrices(rep1.m, dim, mats)


@dataclass(frozen=True)
class RelationCheck:
    name: str
    ok: bool


@dataclass
class VerificationReport:
    algebra: str
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def failures(self) -> List[str]:
        return [check.name for check in self.checks if not check.ok]

    def to_json(self) -> Dict:
        return {
            "algebra": self.algebra,
            "ok": self.ok,
            "failures": self.failures,
            "checks": [{"relation": c.name, "ok": c.ok} for c in self.checks],
        }


def verify_relations(rep: RepMatrices, preset: AlgebraPreset) -> VerificationReport:
    """
    Substitute the matrices into every defining relation of preset.

    Raises:
        UnknownGeneratorError: a generator of preset has no matrix
    """
    missing = [name for name in preset.names if name not in rep.mats]
    if missing:
        raise UnknownGeneratorError(f"Representation has no matrix for {', '.join(missing)}")
    images = [rep.mats[name] for name in preset.names]
    one = CycloMatrix.identity(rep.m, rep.dim)
    report = VerificationReport(algebra=preset.label)
    for relation in preset.relations():
        residue = relation_residue(relation, images, one, lambda c: cyclo_reduce(c, rep.m))
        report.checks.append(RelationCheck(relation.name, residue.is_zero()))
    if report.ok:
        logger.info(f"All {len(report.checks)} relations of {preset.label} hold at m={rep.m}")
    else:
        logger.warning(f"Relations of {preset.label} failing at m={rep.m}: {', '.join(report.failures)}")
    return report


def commutant_dimension(rep: RepMatrices, max_dim: Optional[int] = None) -> int:
    """
    Dimension over Q(zeta_m) of {X : X g = g X for every generator g}.

    Each unknown entry is expanded into phi(m) rational coordinates and the
    linear system is solved exactly over QQ.

    Raises:
        DomainError: dim exceeds the configured bound
    """
    if max_dim is None:
        max_dim = settings.COMMUTANT_MAX_DIM
    if rep.dim > max_dim:
        raise DomainError(f"Commutant of a {rep.dim}-dimensional representation exceeds the bound {max_dim}")
    m, dim = rep.m, rep.dim
    phi = totient(m)
    basis = [zeta_power(s, m) for s in range(phi)]
    tables: Dict[CycloNum, List[List]] = {}

    def table(value: CycloNum) -> List[List]:
        if value not in tables:
            tables[value] = [(value * b).coeffs for b in basis]
        return tables[value]

    rows = []
    for matrix in rep.mats.values():
        equations: Dict[Position, Dict[Position, CycloNum]] = {}
        for (l, j), c in matrix.entries.items():
            for i in range(dim):
                eq = equations.setdefault((i, j), {})
                eq[(i, l)] = eq[(i, l)] + c if (i, l) in eq else c
        for (i, l), c in matrix.entries.items():
            for j in range(dim):
                eq = equations.setdefault((i, j), {})
                eq[(l, j)] = eq[(l, j)] - c if (l, j) in eq else -c
        for eq in equations.values():
            eq = {var: c for var, c in eq.items() if c}
            if not eq:
                continue
            expanded = [[0] * (dim * dim * phi) for _ in range(phi)]
            for (a, b), c in eq.items():
                column = (a * dim + b) * phi
                for s, coords in enumerate(table(c)):
                    for r, value in enumerate(coords):
                        expanded[r][column + s] = value
            rows.extend(expanded)
    unknowns = dim * dim * phi
    nullity = unknowns - (exact_rank(rows) if rows else 0)
    logger.debug(f"Commutant of dimension {nullity // phi} for a {dim}-dimensional representation")
    return nullity // phi


@dataclass(frozen=True)
class DKPReport:
    """
    Dimension check of one irreducible against its symplectic leaf.

    oracle_dim is the rank of the Poisson matrix when a point was supplied.
    """

    structure: LeafStructure
    m: int
    s_nil: int
    torus_spec: str
    torus_rank: int
    rep_dim: int
    leaf_dim: int
    oracle_dim: Optional[int] = None

    @property
    def ok(self) -> bool:
        if self.oracle_dim is not None and self.oracle_dim != self.leaf_dim:
            return False
        return self.rep_dim == self.m ** (self.leaf_dim // 2) and self.leaf_dim % 2 == 0

    def to_json(self) -> Dict:
        return {
            "structure": self.structure.to_json(),
            "m": self.m,
            "s_nil": self.s_nil,
            "torus": self.torus_spec,
            "torus_rank": self.torus_rank,
            "rep_dim": self.rep_dim,
            "leaf_dim": self.leaf_dim,
            "oracle_dim": self.oracle_dim,
            "ok": self.ok,
        }


def _segments(ls: LeafStructure) -> List[int]:
    """s_1, ..., s_{r+1} of the torus algebra attached to a nondegenerate structure."""
    ell = ls.ell
    r = ell + 1
    s = [0] * (r + 2)
    s[r + 1] = ls.r_value(0) + 1
    for i in range(1, r):
        s[r + 1 - i] = 2 + ls.r_value(2 * i)
    s[1] = ls.r_value(2 * ell + 2) + 2 if ls.s % 2 else 0
    return s[1:]


def _nilpotent_count(ls: LeafStructure) -> int:
    ell = ls.ell
    total = sum(ls.i_value(2 * k) - ls.i_value(2 * k + 1) - 1 for k in range(ell))
    if ls.s % 2:
        return total + ls.i_value(2 * ell) - ls.i_value(2 * ell + 1) - 1
    return total + ls.i_value(2 * ell)


def _torus_part(ls: LeafStructure) -> Tuple[int, AlgebraSpec]:
    return _nilpotent_count(ls), AlgebraSpec.l_down(*_segments(ls))


def dkp_check(ls: LeafStructure, m: int, oracle_dim: Optional[int] = None) -> DKPReport:
    check_modulus(m)
    leaf = leaf_dimension(ls)
    if ls.degenerate:
        half = ls.degenerate_r0 // 2
        report = DKPReport(
            structure=ls,
            m=m,
            s_nil=0,
            torus_spec="degenerate",
            torus_rank=2 * half,
            rep_dim=m**half,
            leaf_dim=leaf,
            oracle_dim=oracle_dim,
        )
    else:
        s_nil, spec = _torus_part(ls)
        torus_rank = matrix_rank(build_matrix(spec))
        rep_dim = m**s_nil * m ** (torus_rank // 2)
        report = DKPReport(ls, m, s_nil, str(spec), torus_rank, rep_dim, leaf, oracle_dim)
    if not report.ok:
        logger.warning(f"Dimension check failed for {ls}: rep_dim={report.rep_dim} leaf_dim={leaf}")
    return report


def irrep_dimension(ls: LeafStructure, m: int) -> int:
    """Dimension of the irreducible module attached to a point with structure ls."""
    return dkp_check(ls, m).rep_dim


@dataclass
class SweepReport:
    """
    Result of a grid sweep.

    skipped counts points outside the chart of the algebra being checked;
    only the Oh sweep skips points.
    """

    N: int
    m: int
    points: int = 0
    structures: int = 0
    skipped: int = 0
    failures: List[Dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "ok" if self.ok else "failed"
        skipped = f" skipped={self.skipped}" if self.skipped else ""
        return f"{status} points={self.points}{skipped} structures={self.structures} failures={len(self.failures)}"

    def to_json(self) -> Dict:
        return {
            "N": self.N,
            "m": self.m,
            "points": self.points,
            "structures": self.structures,
            "skipped": self.skipped,
            "ok": self.ok,
            "failures": self.failures,
        }


def parse_coord_range(text: Optional[str] = None) -> List[int]:
    text = text or settings.DEFAULT_COORD_RANGE
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise DomainError(f"Coordinate range must be comma separated integers, got {text!r}")


def grid_points(N: int, values: Optional[Sequence[int]] = None, max_points: Optional[int] = None) -> Iterator[PointData]:
    """
    Every point with coordinates in values, in lexicographic order.

    Raises:
        DomainError: the number of points exceeds the configured bound
    """
    values = list(values) if values is not None else parse_coord_range()
    if max_points is None:
        max_points = settings.DKP_SWEEP_MAX_POINTS
    count = len(values) ** (2 * N)
    if count > max_points:
        raise DomainError(f"Sweep over {count} points exceeds the configured bound {max_points}")
    for coords in itertools.product(values, repeat=2 * N):
        yield PointData.from_values(N, coords)


def _log_sweep(kind: str, report: SweepReport):
    logger.info(
        f"Swept {report.points} points of {kind} for N={report.N}, m={report.m}: "
        f"{report.structures} structures, {report.skipped} skipped, {len(report.failures)} failures"
    )


def dkp_sweep(N: int, m: int, values: Optional[Sequence[int]] = None, max_points: Optional[int] = None) -> SweepReport:
    """
    Check every point with coordinates in values: the leaf formula against
    the Poisson rank, and the dimension identity once per structure.

    Raises:
        DomainError: the number of points exceeds the configured bound
    """
    check_modulus(m)
    report = SweepReport(N=N, m=m)
    seen: Dict[LeafStructure, DKPReport] = {}
    for point in grid_points(N, values, max_points):
        ls = structure_data(point)
        report.points += 1
        if ls not in seen:
            seen[ls] = dkp_check(ls, m)
            if not seen[ls].ok:
                report.failures.append({"point": point.to_json(), "reason": "dimension", "report": seen[ls].to_json()})
        formula, oracle = leaf_dimension(ls), rank(point)
        if formula != oracle:
            report.failures.append({"point": point.to_json(), "reason": "leaf", "formula": formula, "oracle": oracle})
    report.structures = len(seen)
    _log_sweep("F_q(N)", report)
    return report


def in_oh_chart(p: PointData) -> bool:
    """b_{N-1} b*_{N-1} != 0, where the w-form of Oh's algebra describes the point."""
    return p.pair_product(p.N - 1) != 0


def oh_prediction(ls: LeafStructure, m: int) -> DKPReport:
    """
    Dimension predicted for Oh's algebra from the structure data alone.

    In the chart b_{N-1} b*_{N-1} != 0 the index sequence starts at N-1, so
    the F_q(N) torus L_down(s_1, ..., s_r, 1) loses its top segment. The
    inverted top generator sits below index 0 and joins the first segment,
    which gives L_up(s_1 + 1, s_2, ..., s_r). The leaf gains 2 exactly when
    s_1 is even.
    """
    check_modulus(m)
    if ls.degenerate or ls.i_seq[0] != ls.N - 1:
        raise DomainError("The Oh dimension check needs b_{N-1} b*_{N-1} != 0")
    s_nil, f_spec = _torus_part(ls)
    segments = list(f_spec.s[:-1])
    segments[0] += 1
    spec = AlgebraSpec.l_up(*segments)
    torus_rank = matrix_rank(build_matrix(spec))
    return DKPReport(
        structure=ls,
        m=m,
        s_nil=s_nil,
        torus_spec=str(spec),
        torus_rank=torus_rank,
        rep_dim=m**s_nil * m ** (torus_rank // 2),
        leaf_dim=leaf_dimension(ls) + (2 if f_spec.s[0] % 2 == 0 else 0),
    )


def oh_dkp_check(p: PointData, m: int) -> DKPReport:
    """Dimension check for Oh's algebra at a point with b_{N-1} b*_{N-1} != 0."""
    if not in_oh_chart(p):
        raise DomainError("The Oh dimension check needs b_{N-1} b*_{N-1} != 0")
    report = replace(oh_prediction(structure_data(p), m), oracle_dim=oh_rank(p))
    if not report.ok:
        logger.warning(f"Oh dimension check failed at {p}: rep_dim={report.rep_dim} oracle={report.oracle_dim}")
    return report


def oh_irrep_dimension(p: PointData, m: int) -> int:
    return oh_dkp_check(p, m).rep_dim


def oh_dkp_sweep(N: int, m: int, values: Optional[Sequence[int]] = None, max_points: Optional[int] = None) -> SweepReport:
    """
    The dimension check for Oh's algebra over every grid point in its chart.

    The predicted leaf is compared with the rank of the Oh Poisson matrix at
    each point; points with b_{N-1} b*_{N-1} = 0 are counted as skipped.

    Raises:
        DomainError: the number of points exceeds the configured bound
    """
    check_modulus(m)
    report = SweepReport(N=N, m=m)
    seen: Dict[LeafStructure, DKPReport] = {}
    for point in grid_points(N, values, max_points):
        report.points += 1
        if not in_oh_chart(point):
            report.skipped += 1
            continue
        ls = structure_data(point)
        if ls not in seen:
            seen[ls] = oh_prediction(ls, m)
            if not seen[ls].ok:
                report.failures.append({"point": point.to_json(), "reason": "dimension", "report": seen[ls].to_json()})
        predicted, oracle = seen[ls].leaf_dim, oh_rank(point)
        if predicted != oracle:
            report.failures.append({"point": point.to_json(), "reason": "leaf", "formula": predicted, "oracle": oracle})
    report.structures = len(seen)
    _log_sweep("Oh(N)", report)
    return report
