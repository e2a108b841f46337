"""Local identifiability of networks from their constitutive coefficients.

``is_locally_identifiable`` computes the generic rank of the Jacobian of the
normalized coefficient map over F_p.  ``count_criterion`` compares the number
of non-monic coefficients with the number of parameters, which decides
identifiability for networks built from at most two element kinds.  The
``(G H)`` matrix routines handle the linear system behind combining two
LC networks.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Sequence

from .constitutive import ConstEq, Param, build_consteq, coefficient_map, nonmonic_count
from .network import ElementKind, Network, format_network, kinds_used
from .polyalg import P, MultiPoly, Shape, determinant, poly_eval, poly_partial, random_point, rank

N_POINTS = 3
MAX_RETRIES = 10


class Method(enum.Enum):
    RANK_TEST = "RankTest"
    COUNT_CRITERION = "CountCriterion"


class DegenerateEvaluation(RuntimeError):
    pass


class NotApplicable(ValueError):
    """The counting criterion was asked about a network with all three element kinds."""


@dataclass(frozen=True)
class IdentVerdict:
    locally_identifiable: bool
    generic_rank: int | None
    n_params: int
    n_nonmonic: int
    method: Method
    point_ranks: tuple[int, ...] = field(default=(), compare=False)

    def to_json(self, network: Network | None = None, seed: int | None = None) -> dict:
        out = {}
        if network is not None:
            out["network"] = format_network(network)
        out.update(
            n_params=self.n_params,
            n_nonmonic=self.n_nonmonic,
            generic_rank=self.generic_rank,
            locally_identifiable=self.locally_identifiable,
            method=self.method.value,
        )
        if seed is not None:
            out["seed"] = seed
        return out


def jacobian_rows(e: ConstEq) -> list[list[MultiPoly]]:
    """Polynomial Jacobian of the normalized coefficient map, scaled by the monic coefficient squared.

    Entry (i, j) is ``dc_i/dx_j * c_k - c_i * dc_k/dx_j`` with ``c_k`` the
    monic coefficient.  The monic row is identically zero and is omitted.
    """
    cmap = coefficient_map(e)
    ck = cmap.monic.poly
    dck = [poly_partial(ck, v) for v in e.vars]
    rows = []
    for entry in cmap.nonmonic():
        ci = entry.poly
        rows.append([poly_partial(ci, v) * ck - ci * dck[j] for j, v in enumerate(e.vars)])
    return rows


class _JacobianData:
    """Coefficient polynomials and their partials, computed once per equation."""

    def __init__(self, e: ConstEq):
        cmap = coefficient_map(e)
        self.vars = e.vars
        self.ck = cmap.monic.poly
        self.dck = [poly_partial(self.ck, v) for v in e.vars]
        self.rows = [(en.poly, [poly_partial(en.poly, v) for v in e.vars]) for en in cmap.nonmonic()]

    def evaluate(self, point: dict[str, int]) -> list[list[int]] | None:
        """Jacobian values at ``point``, or None if the monic coefficient vanishes there."""
        ck = poly_eval(self.ck, point)
        if ck == 0:
            return None
        dck = [poly_eval(d, point) for d in self.dck]
        out = []
        for ci_poly, partials in self.rows:
            ci = poly_eval(ci_poly, point)
            out.append([(poly_eval(d, point) * ck - ci * dk) % P for d, dk in zip(partials, dck)])
        return out


def generic_rank(e: ConstEq, rng: random.Random, n_points: int = N_POINTS) -> tuple[int, tuple[int, ...]]:
    """Maximum Jacobian rank over ``n_points`` random points, and the per-point ranks."""
    data = _JacobianData(e)
    ranks = []
    for _ in range(n_points):
        for _attempt in range(MAX_RETRIES):
            J = data.evaluate(random_point(e.vars, rng))
            if J is not None:
                break
        else:
            raise DegenerateEvaluation("monic coefficient vanished at every trial point")
        ranks.append(rank(J) if J else 0)
    return max(ranks), tuple(ranks)


def is_locally_identifiable(n: Network, seed: int = 0, n_points: int = N_POINTS) -> IdentVerdict:
    e = build_consteq(n, Param.AFFINE)
    r, ranks = generic_rank(e, random.Random(seed), n_points)
    n_params = len(e.vars)
    return IdentVerdict(r == n_params, r, n_params, nonmonic_count(e), Method.RANK_TEST, ranks)


def count_criterion(n: Network) -> IdentVerdict:
    if len(kinds_used(n)) > 2:
        raise NotApplicable("the counting criterion does not decide networks with R, L and C together")
    e = build_consteq(n, Param.AFFINE)
    n_params = len(e.vars)
    m = nonmonic_count(e)
    return IdentVerdict(m == n_params, None, n_params, m, Method.COUNT_CRITERION)


# alternating shape factorization


class ShapeGapError(ValueError):
    pass


def _shape(s) -> Shape:
    return s if isinstance(s, Shape) else Shape(*s)


@dataclass(frozen=True)
class GHProblem:
    """Shapes of f1..f4 for ``f = f1 f3``, ``g = f1 f4 + f2 f3`` with f1, f3 monic.

    ``f1`` and ``f3`` optionally carry concrete coefficients (ascending degree
    lists) for instantiation.
    """

    shapes: tuple[Shape, Shape, Shape, Shape]
    f1: tuple[int, ...] | None = None
    f3: tuple[int, ...] | None = None

    @classmethod
    def from_shapes(cls, shapes: Sequence) -> GHProblem:
        shapes = tuple(_shape(s) for s in shapes)
        if len(shapes) != 4:
            raise ValueError("need four shapes")
        return cls(shapes)

    def validate(self) -> None:
        s1, s2, s3, s4 = self.shapes
        for s in self.shapes:
            if (s.max_deg - s.min_deg) % 2:
                raise ShapeGapError(f"shape {s} cannot belong to an alternating polynomial")
        for x, y in ((s1, s2), (s3, s4)):
            if abs(x.min_deg - y.min_deg) != 1 or abs(x.max_deg - y.max_deg) != 1:
                raise ShapeGapError(f"shapes {x} and {y} must differ by exactly one at both ends")

    @property
    def g_range(self) -> tuple[int, int]:
        (m1, n1), (m2, n2), (m3, n3), (m4, n4) = self.shapes
        return min(m1 + m4, m2 + m3), max(n1 + n4, n2 + n3)

    def dimensions(self) -> tuple[int, int]:
        (m1, n1), (m2, n2), (m3, n3), (m4, n4) = self.shapes
        lo, hi = self.g_range
        return (hi - lo) // 2 + 1, (n2 - m2 + n4 - m4) // 2 + 2


def _alt_support(s: Shape) -> list[int]:
    return list(range(s.max_deg, s.min_deg - 1, -2))


def _full_gh(problem: GHProblem, coef1, coef3, zero):
    """Unreduced ``(G' H')``: rows are degrees of g, top down; columns are f4 then f2 coefficients."""
    s1, s2, s3, s4 = problem.shapes
    lo, hi = problem.g_range
    col_f4 = list(range(s4.max_deg, s4.min_deg - 1, -1))
    col_f2 = list(range(s2.max_deg, s2.min_deg - 1, -1))
    rows = []
    for deg in range(hi, lo - 1, -1):
        row = [coef1(deg - j) for j in col_f4] + [coef3(deg - j) for j in col_f2]
        rows.append(row)
    return rows, list(range(hi, lo - 1, -1)), col_f4 + col_f2, len(col_f4)


def build_gh(problem: GHProblem | Sequence, symbolic: bool = True):
    """Reduced ``(G H)`` matrix.

    With ``symbolic`` the entries are polynomials in the coefficients
    ``a<k>`` of f1 and ``c<k>`` of f3 (leading ones fixed to 1); otherwise
    the problem's concrete ``f1``/``f3`` are used and entries lie in F_p.
    Columns for the zero coefficients of the alternating unknowns, and the
    rows of g of the wrong parity, are removed.
    """
    if not isinstance(problem, GHProblem):
        problem = GHProblem.from_shapes(problem)
    problem.validate()
    s1, s2, s3, s4 = problem.shapes
    sup1, sup3 = set(_alt_support(s1)), set(_alt_support(s3))

    if symbolic:
        names = tuple(f"a{k}" for k in _alt_support(s1)[1:]) + tuple(f"c{k}" for k in _alt_support(s3)[1:])
        zero = MultiPoly.zero(names)
        one = MultiPoly.const(names, 1)

        def coef(letter, sup, top):
            def get(k):
                if k not in sup:
                    return zero
                return one if k == top else MultiPoly.var(names, f"{letter}{k}")

            return get

        coef1 = coef("a", sup1, s1.max_deg)
        coef3 = coef("c", sup3, s3.max_deg)
    else:
        if problem.f1 is None or problem.f3 is None:
            raise ValueError("instantiation needs f1 and f3 coefficients")
        zero = 0
        f1, f3 = problem.f1, problem.f3

        def coef1(k):
            return f1[k] % P if 0 <= k < len(f1) else 0

        def coef3(k):
            return f3[k] % P if 0 <= k < len(f3) else 0

    rows, row_degs, col_degs, n_f4 = _full_gh(problem, coef1, coef3, zero)
    keep_cols = [
        c
        for c, d in enumerate(col_degs)
        if d in (_alt_support(s4) if c < n_f4 else _alt_support(s2))
    ]
    parity = row_degs[0] % 2
    keep_rows = [r for r, d in enumerate(row_degs) if d % 2 == parity]
    return [[rows[r][c] for c in keep_cols] for r in keep_rows]


def random_alternating(shape: Shape, rng: random.Random, p: int = P) -> tuple[int, ...]:
    """Monic alternating polynomial with the given shape, as an ascending coefficient list."""
    coeffs = [0] * (shape.max_deg + 1)
    for k in _alt_support(shape):
        coeffs[k] = rng.randrange(1, p)
    coeffs[shape.max_deg] = 1
    return tuple(coeffs)


def instantiate_gh(problem: GHProblem | Sequence, rng: random.Random) -> list[list[int]]:
    if not isinstance(problem, GHProblem):
        problem = GHProblem.from_shapes(problem)
    s1, _, s3, _ = problem.shapes
    inst = GHProblem(problem.shapes, random_alternating(s1, rng), random_alternating(s3, rng))
    return build_gh(inst, symbolic=False)


def is_alternating_good(shapes: GHProblem | Sequence) -> bool:
    problem = shapes if isinstance(shapes, GHProblem) else GHProblem.from_shapes(shapes)
    problem.validate()
    rows, cols = problem.dimensions()
    return rows == cols


def gh_determinant(problem: GHProblem | Sequence, rng: random.Random) -> int:
    return determinant(instantiate_gh(problem, rng))


def split_quadruple(op_is_series: bool, child1: ConstEq, child2: ConstEq) -> tuple[Shape, ...]:
    """Shapes (f1, f2, f3, f4) of the factorization problem for combining two children.

    Series combination factors the V side, so the children's V operators play
    the monic roles.  Parallel combination factors the I side, so the roles swap.
    """
    v1, i1 = child1.shapes()
    v2, i2 = child2.shapes()
    if op_is_series:
        return (v1, i1, v2, i2)
    return (i1, v1, i2, v2)


def uses_only(n: Network, kinds: set[ElementKind]) -> bool:
    return kinds_used(n) <= kinds
