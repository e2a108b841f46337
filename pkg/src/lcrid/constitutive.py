"""Constitutive equations ``f1 V = f2 I`` of series-parallel networks.

Base elements::

    resistor   R0 V  = R1 I
    inductor   L0 V  = L1 I'
    capacitor  C0 V' = C1 I      (C is the inverse capacitance)

In affine mode every ``x0`` is the constant 1 and ``x1`` is the element
label.  In projective mode both are variables named ``<label>_0`` and
``<label>_1``.  Combinations, for children ``f1 V = f2 I`` and ``f3 V = f4 I``::

    series    f1 f3 V = (f1 f4 + f2 f3) I
    parallel  (f1 f4 + f2 f3) V = f2 f4 I

No common factors are cancelled.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .network import ElementKind, Leaf, Network, Series, leaves
from .polyalg import Alternation, DiffOp, MultiPoly, Shape, alternation_class, shape_of


class Param(enum.Enum):
    AFFINE = "affine"
    PROJECTIVE = "projective"


class Side(enum.Enum):
    V = "V"
    I = "I"  # noqa: E741


def projective_names(label: str) -> tuple[str, str]:
    return f"{label}_0", f"{label}_1"


def parameter_names(n: Network, param: Param = Param.AFFINE) -> tuple[str, ...]:
    """Registry of the network's parameters, in leaf order."""
    if param is Param.AFFINE:
        return tuple(lf.label for lf in leaves(n))
    out: list[str] = []
    for lf in leaves(n):
        out.extend(projective_names(lf.label))
    return tuple(out)


@dataclass(frozen=True)
class ConstEq:
    v_op: DiffOp
    i_op: DiffOp
    param: Param = Param.AFFINE

    @property
    def vars(self) -> tuple[str, ...]:
        return self.v_op.vars

    def side(self, side: Side) -> DiffOp:
        return self.v_op if side is Side.V else self.i_op

    def shapes(self) -> tuple[Shape, Shape]:
        return shape_of(self.v_op), shape_of(self.i_op)

    def to_json(self) -> dict:
        def side_json(op: DiffOp) -> list[dict]:
            return [{"order": k, "poly": str(op[k])} for k in range(op.order, -1, -1) if not op[k].is_zero()]

        return {
            "v": side_json(self.v_op),
            "i": side_json(self.i_op),
            "monic": {"side": "V", "order": self.v_op.order},
        }

    def __str__(self) -> str:
        return f"{render_side(self.v_op, 'V')} = {render_side(self.i_op, 'I')}"


def _deriv(symbol: str, k: int) -> str:
    if k == 0:
        return symbol
    if k == 1:
        return symbol + "̇"
    if k == 2:
        return symbol + "̈"
    return f"{symbol}^({k})"


def render_side(op: DiffOp, symbol: str) -> str:
    """Human form such as ``(L1*R1) V̈ + R1 V̇``."""
    parts = []
    for k in range(op.order, -1, -1):
        c = op[k]
        if c.is_zero():
            continue
        text = str(c)
        if text == "1":
            parts.append(_deriv(symbol, k))
        else:
            if len(c) > 1:
                text = f"({text})"
            parts.append(f"{text} {_deriv(symbol, k)}")
    return " + ".join(parts)


def _base(lf: Leaf, registry: tuple[str, ...], param: Param) -> tuple[DiffOp, DiffOp]:
    if param is Param.AFFINE:
        x0 = MultiPoly.const(registry, 1)
        x1 = MultiPoly.var(registry, lf.label)
    else:
        n0, n1 = projective_names(lf.label)
        x0 = MultiPoly.var(registry, n0)
        x1 = MultiPoly.var(registry, n1)
    zero = MultiPoly.zero(registry)
    if lf.kind is ElementKind.RESISTOR:
        return DiffOp([x0]), DiffOp([x1])
    if lf.kind is ElementKind.INDUCTOR:
        return DiffOp([x0]), DiffOp([zero, x1])
    return DiffOp([zero, x0]), DiffOp([x1])


def combine_series_eq(a: tuple[DiffOp, DiffOp], b: tuple[DiffOp, DiffOp]) -> tuple[DiffOp, DiffOp]:
    f1, f2 = a
    f3, f4 = b
    return f1 * f3, f1 * f4 + f2 * f3


def combine_parallel_eq(a: tuple[DiffOp, DiffOp], b: tuple[DiffOp, DiffOp]) -> tuple[DiffOp, DiffOp]:
    f1, f2 = a
    f3, f4 = b
    return f1 * f4 + f2 * f3, f2 * f4


def build_consteq(
    n: Network, param: Param = Param.AFFINE, registry: Sequence[str] | None = None
) -> ConstEq:
    """Constitutive equation by recursion over the tree, folding n-ary nodes left to right.

    ``registry`` defaults to the network's own parameters; a larger registry
    lets subnetworks share variables with their parent.
    """
    param = Param(param)
    registry = tuple(registry) if registry is not None else parameter_names(n, param)

    def rec(node: Network) -> tuple[DiffOp, DiffOp]:
        if isinstance(node, Leaf):
            return _base(node, registry, param)
        combine = combine_series_eq if isinstance(node, Series) else combine_parallel_eq
        acc = rec(node.children[0])
        for ch in node.children[1:]:
            acc = combine(acc, rec(ch))
        return acc

    v, i = rec(n)
    return ConstEq(v, i, param)


# coefficient map


@dataclass(frozen=True)
class CoefficientEntry:
    side: Side
    order: int
    poly: MultiPoly


@dataclass(frozen=True)
class CoefficientMap:
    entries: tuple[CoefficientEntry, ...]
    monic_index: int
    n_params: int

    @property
    def monic(self) -> CoefficientEntry:
        return self.entries[self.monic_index]

    def nonmonic(self) -> list[CoefficientEntry]:
        return [e for k, e in enumerate(self.entries) if k != self.monic_index]


def coefficient_map(e: ConstEq) -> CoefficientMap:
    """Nonzero coefficients, V side then I side, each by descending order.

    The V-side leading coefficient is the normalizing (monic) entry.
    """
    entries = []
    for side, op in ((Side.V, e.v_op), (Side.I, e.i_op)):
        for k in range(op.order, -1, -1):
            if not op[k].is_zero():
                entries.append(CoefficientEntry(side, k, op[k]))
    return CoefficientMap(tuple(entries), 0, len(e.vars))


def nonmonic_count(e: ConstEq) -> int:
    return len(e.v_op.support()) + len(e.i_op.support()) - 1


# invariants


class InvariantViolation(AssertionError):
    pass


def check_invariants(e: ConstEq, n_leaves: int) -> list[str]:
    """Return descriptions of violated structural invariants (empty when all hold)."""
    problems = []
    for name, op in (("v", e.v_op), ("i", e.i_op)):
        for k, c in enumerate(op.coeffs):
            if not c.coefficients_nonnegative():
                problems.append(f"{name}[{k}] has a negative coefficient")
        if op.order > n_leaves:
            problems.append(f"{name} order {op.order} exceeds leaf count {n_leaves}")
        if alternation_class(op) is Alternation.NEITHER:
            problems.append(f"{name} side skips a degree without alternating")
    sv, si = e.shapes()
    if abs(sv.max_deg - si.max_deg) > 1:
        problems.append(f"max degree gap {sv.max_deg - si.max_deg}")
    if abs(sv.min_deg - si.min_deg) > 1:
        problems.append(f"min degree gap {sv.min_deg - si.min_deg}")
    return problems


def check_lc_invariants(e: ConstEq, n_leaves: int) -> list[str]:
    """Extra structure of inductor/capacitor-only networks."""
    problems = []
    for name, op in (("v", e.v_op), ("i", e.i_op)):
        if alternation_class(op) is not Alternation.ALTERNATING:
            problems.append(f"{name} side does not alternate")
    sv, si = e.shapes()
    if abs(sv.max_deg - si.max_deg) != 1:
        problems.append(f"max degree gap {sv.max_deg - si.max_deg} is not exactly 1")
    if abs(sv.min_deg - si.min_deg) != 1:
        problems.append(f"min degree gap {sv.min_deg - si.min_deg} is not exactly 1")
    if nonmonic_count(e) > n_leaves:
        problems.append(f"{nonmonic_count(e)} non-monic coefficients exceed {n_leaves} elements")
    return problems
