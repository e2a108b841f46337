"""Type quadruples of constitutive equations and the LC combination tables.

The type of ``f1 V = f2 I`` with shapes ``[m1,n1]`` and ``[m2,n2]`` is
``(m1 - m2, n1 - n2, c, d)`` where ``c``/``d`` flag an alternating V/I side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .constitutive import ConstEq
from .network import ElementKind, Network, kinds_used
from .polyalg import Alternation, alternation_class, shape_of


class TypeInconsistency(RuntimeError):
    """A constitutive equation with a side that skips without alternating."""


class TypeQuad(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c},{self.d})"


RESISTOR_TYPE = TypeQuad(0, 0, 1, 1)
INDUCTOR_TYPE = TypeQuad(-1, -1, 1, 1)
CAPACITOR_TYPE = TypeQuad(1, 1, 1, 1)
BASE_TYPES = {
    ElementKind.RESISTOR: RESISTOR_TYPE,
    ElementKind.INDUCTOR: INDUCTOR_TYPE,
    ElementKind.CAPACITOR: CAPACITOR_TYPE,
}

FORBIDDEN_TYPES = frozenset(
    TypeQuad(*t)
    for t in [
        (1, 0, 0, 1), (-1, 0, 1, 0), (0, 1, 1, 0), (0, -1, 0, 1), (1, 1, 0, 1),
        (-1, -1, 1, 0), (-1, -1, 0, 1), (1, 1, 1, 0), (1, 0, 1, 1), (-1, 0, 1, 1),
        (0, 1, 1, 1), (0, -1, 1, 1), (1, -1, 0, 1), (-1, 1, 1, 0),
    ]
)


def type_of(e: ConstEq) -> TypeQuad:
    classes = []
    for op in (e.v_op, e.i_op):
        cls = alternation_class(op)
        if cls is Alternation.NEITHER:
            raise TypeInconsistency(f"operator {op} skips a degree without alternating")
        classes.append(int(cls is Alternation.ALTERNATING))
    sv, si = shape_of(e.v_op), shape_of(e.i_op)
    return TypeQuad(sv.min_deg - si.min_deg, sv.max_deg - si.max_deg, classes[0], classes[1])


def combine_series(t1: TypeQuad, t2: TypeQuad) -> TypeQuad:
    a, b, c, d = t1
    e, f, g, h = t2
    return TypeQuad(max(a, e), min(b, f), c * g, c * d * g * h * (1 - abs(abs(a) - abs(e))))


def combine_parallel(t1: TypeQuad, t2: TypeQuad) -> TypeQuad:
    a, b, c, d = t1
    e, f, g, h = t2
    return TypeQuad(min(a, e), max(b, f), c * d * g * h * (1 - abs(abs(a) - abs(e))), d * h)


def dual_type(t: TypeQuad) -> TypeQuad:
    """Type of the dual network: sides swap, so gaps change sign and flags swap."""
    return TypeQuad(-t.a, -t.b, t.d, t.c)


def all_quads() -> list[TypeQuad]:
    return [TypeQuad(a, b, c, d) for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (0, 1) for d in (0, 1)]


def type_closure() -> frozenset[TypeQuad]:
    """Least set containing the three base types closed under both combinations."""
    found = set(BASE_TYPES.values())
    work = list(found)
    while work:
        t = work.pop()
        for u in list(found):
            for new in (
                combine_series(t, u),
                combine_series(u, t),
                combine_parallel(t, u),
                combine_parallel(u, t),
            ):
                if new not in found:
                    found.add(new)
                    work.append(new)
    return frozenset(found)


# LC classes and tables


class LCClass(enum.Enum):
    A = (-1, -1)
    B = (-1, 1)
    C = (1, -1)
    D = (1, 1)

    @property
    def quad(self) -> TypeQuad:
        return TypeQuad(*self.value, 1, 1)

    @classmethod
    def from_gaps(cls, a: int, b: int) -> LCClass:
        return cls((a, b))


class NotLCError(ValueError):
    pass


def lc_class(e: ConstEq, network: Network | None = None) -> LCClass:
    if network is not None and ElementKind.RESISTOR in kinds_used(network):
        raise NotLCError("network contains resistors")
    t = type_of(e)
    if (t.c, t.d) != (1, 1) or (t.a, t.b) not in {c.value for c in LCClass}:
        raise NotLCError(f"type {t} is not an LC class")
    return LCClass.from_gaps(t.a, t.b)


class Op(enum.Enum):
    SERIES = "series"
    PARALLEL = "parallel"


@dataclass(frozen=True)
class LCTableRow:
    """One row of the LC combination tables.

    Shapes are ``[lo, n1 + n2 + hi]`` stored as ``(lo, hi)``; the non-monic
    coefficient count is ``n1 + n2 + count_offset``.
    """

    pair: tuple[LCClass, LCClass]
    op: Op
    v_shape: tuple[int, int]
    i_shape: tuple[int, int]
    count_offset: int
    identifiable: bool
    result: LCClass

    def shapes_for(self, n1: int, n2: int) -> tuple[tuple[int, int], tuple[int, int]]:
        s = n1 + n2
        return (self.v_shape[0], s + self.v_shape[1]), (self.i_shape[0], s + self.i_shape[1])

    def to_json(self) -> dict:
        def expr(off: int) -> str:
            return "n1+n2" if off == 0 else f"n1+n2{off:+d}"

        return {
            "op": self.op.value,
            "pair": [self.pair[0].name, self.pair[1].name],
            "v_shape": [self.v_shape[0], expr(self.v_shape[1])],
            "i_shape": [self.i_shape[0], expr(self.i_shape[1])],
            "nonmonic": expr(self.count_offset),
            "identifiable": self.identifiable,
            "result": self.result.name,
        }


_A, _B, _C, _D = LCClass.A, LCClass.B, LCClass.C, LCClass.D

# (pair, v_shape, i_shape, count_offset, identifiable, result)
_SERIES_ROWS = [
    ((_A, _A), (0, -2), (1, -1), -1, False, _A),
    ((_A, _B), (0, -1), (1, 0), 0, True, _A),
    ((_A, _C), (1, -2), (0, -1), -1, False, _C),
    ((_A, _D), (1, -1), (0, 0), 0, True, _C),
    ((_B, _B), (0, 0), (1, -1), 0, True, _B),
    ((_B, _C), (1, -1), (0, 0), 0, True, _C),
    ((_B, _D), (1, 0), (0, -1), 0, True, _D),
    ((_C, _C), (2, -2), (1, -1), -2, False, _C),
    ((_C, _D), (2, -1), (1, 0), -1, False, _C),
    ((_D, _D), (2, 0), (1, -1), -1, False, _D),
]

_PARALLEL_ROWS = [
    ((_A, _A), (1, -1), (2, 0), -1, False, _A),
    ((_A, _B), (1, 0), (2, -1), -1, False, _B),
    ((_A, _C), (0, -1), (1, 0), 0, True, _A),
    ((_A, _D), (0, 0), (1, -1), 0, True, _B),
    ((_B, _B), (1, -1), (2, -2), -2, False, _B),
    ((_B, _C), (0, 0), (1, -1), 0, True, _B),
    ((_B, _D), (0, -1), (1, -2), -1, False, _B),
    ((_C, _C), (1, -1), (0, 0), 0, True, _C),
    ((_C, _D), (1, 0), (0, -1), 0, True, _D),
    ((_D, _D), (1, -1), (0, -2), -1, False, _D),
]

LC_TABLES: dict[Op, tuple[LCTableRow, ...]] = {
    Op.SERIES: tuple(LCTableRow(p, Op.SERIES, v, i, k, y, r) for p, v, i, k, y, r in _SERIES_ROWS),
    Op.PARALLEL: tuple(LCTableRow(p, Op.PARALLEL, v, i, k, y, r) for p, v, i, k, y, r in _PARALLEL_ROWS),
}

_ORDER = [_A, _B, _C, _D]


def lc_table_lookup(op: Op, t1: LCClass, t2: LCClass) -> LCTableRow:
    """Row for an unordered class pair; the stored row lists the pair in A<B<C<D order."""
    op = Op(op)
    pair = tuple(sorted((t1, t2), key=_ORDER.index))
    for row in LC_TABLES[op]:
        if row.pair == pair:
            return row
    raise KeyError(pair)
