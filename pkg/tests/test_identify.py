import random

import pytest
import sympy

from lcrid.constitutive import build_consteq, nonmonic_count
from lcrid.identify import (
    GHProblem,
    Method,
    NotApplicable,
    ShapeGapError,
    build_gh,
    count_criterion,
    gh_determinant,
    instantiate_gh,
    is_alternating_good,
    is_locally_identifiable,
    jacobian_rows,
    random_alternating,
)
from lcrid.network import enumerate_networks, parse_network
from lcrid.polyalg import P, Shape, rank


def verdict(text, seed=0):
    return is_locally_identifiable(parse_network(text), seed=seed)


def test_series_lrc_identifiable():
    v = verdict("L1 & R1 & C1")
    assert v.locally_identifiable and v.generic_rank == 3 and v.n_params == 3
    assert v.method is Method.RANK_TEST


def test_five_element_network_unidentifiable():
    v = verdict("L1 | (R1 & (C1 | C2 | L2))")
    assert not v.locally_identifiable
    assert v.n_params == 5 and v.n_nonmonic == 6 and v.generic_rank <= 4


def test_type_zero_chain():
    m = verdict("(R1 | C1) & (R2 | L1)")
    assert m.locally_identifiable and (m.generic_rank, m.n_params, m.n_nonmonic) == (4, 4, 5)
    n = verdict("(R1 | C1) & (R2 | L1) & R3")
    assert n.locally_identifiable and (n.generic_rank, n.n_params) == (5, 5)
    n2 = verdict("(R1 | C1) & (R2 | L1) & R3 & R4")
    assert not n2.locally_identifiable and (n2.n_params, n2.n_nonmonic) == (6, 5)


def test_two_resistors_in_parallel():
    v = verdict("R1 | R2")
    assert not v.locally_identifiable and v.generic_rank == 1


def test_rank_matches_sympy_jacobian():
    # the scaled Jacobian has the same generic rank as the Jacobian of the ratios c_i / c_k
    for text in ["(R1 | C1) & L1", "L1 | (R1 & C1)", "(R1 | C1) & (R2 | L1)", "R1 | R2 | L1"]:
        n = parse_network(text)
        e = build_consteq(n)
        syms = {v: sympy.Symbol(v) for v in e.vars}

        def to_expr(p):
            return sum(c * sympy.Mul(*[syms[v] ** k for v, k in zip(p.vars, exp)]) for exp, c in p.terms.items())

        coeffs = [to_expr(c) for op in (e.v_op, e.i_op) for c in reversed(op.coeffs) if not c.is_zero()]
        ratios = [c / coeffs[0] for c in coeffs[1:]]
        J = sympy.Matrix([[sympy.diff(r, syms[v]) for v in e.vars] for r in ratios])
        point = {syms[v]: sympy.Integer(k + 2) * (3 if k % 2 else 5) for k, v in enumerate(e.vars)}
        assert J.subs(point).rank() == is_locally_identifiable(n).generic_rank, text


def test_jacobian_rows_shape():
    e = build_consteq(parse_network("(R1 | C1) & L1"))
    rows = jacobian_rows(e)
    assert len(rows) == nonmonic_count(e) and all(len(r) == 3 for r in rows)


def test_seed_determinism():
    n = parse_network("L1 | (R1 & (C1 | C2 | L2))")
    a = is_locally_identifiable(n, seed=5)
    b = is_locally_identifiable(n, seed=5)
    assert a.point_ranks == b.point_ranks and a == b


def test_count_criterion():
    v = count_criterion(parse_network("R1 & L1"))
    assert v.locally_identifiable and v.method is Method.COUNT_CRITERION
    assert not count_criterion(parse_network("R1 | R2")).locally_identifiable
    with pytest.raises(NotApplicable):
        count_criterion(parse_network("R1 & L1 & C1"))


def test_count_agrees_with_rank_up_to_five_leaves():
    for kinds in ("RL", "RC", "LC"):
        for n in enumerate_networks(kinds, 5):
            assert count_criterion(n).locally_identifiable == is_locally_identifiable(n).locally_identifiable, n


def test_json_verdict():
    n = parse_network("L1 | (R1 & (C1 | C2 | L2))")
    js = is_locally_identifiable(n, seed=42).to_json(n, 42)
    assert js == {
        "network": "L1 | (R1 & (C1 | C2 | L2))",
        "n_params": 5,
        "n_nonmonic": 6,
        "generic_rank": 4,
        "locally_identifiable": False,
        "method": "RankTest",
        "seed": 42,
    }


# (G H) machinery


def _oracle_gh(shapes, f1, f3):
    """Linear map (f4, f2) -> g = f1 f4 + f2 f3 on alternating supports, by direct multiplication."""
    s1, s2, s3, s4 = shapes
    lo = min(s1.min_deg + s4.min_deg, s2.min_deg + s3.min_deg)
    hi = max(s1.max_deg + s4.max_deg, s2.max_deg + s3.max_deg)
    rows = list(range(hi, lo - 1, -2))
    cols = []
    for k in range(s4.max_deg, s4.min_deg - 1, -2):
        g = [0] * (hi + 1)
        for i, a in enumerate(f1):
            if i + k <= hi:
                g[i + k] += a
        cols.append(g)
    for k in range(s2.max_deg, s2.min_deg - 1, -2):
        g = [0] * (hi + 1)
        for i, a in enumerate(f3):
            if i + k <= hi:
                g[i + k] += a
        cols.append(g)
    return [[col[r] % P for col in cols] for r in rows]


# shape quadruples of identifiable LC combinations: L & C, L | C, (L | C) & L, (L | C) & (L | C), (L | C) & (L & C)
GOOD = [
    ((0, 0), (1, 1), (1, 1), (0, 0)),
    ((1, 1), (0, 0), (0, 0), (1, 1)),
    ((0, 2), (1, 1), (0, 0), (1, 1)),
    ((0, 2), (1, 1), (0, 2), (1, 1)),
    ((0, 2), (1, 1), (1, 1), (0, 2)),
]


@pytest.mark.parametrize("raw", GOOD)
def test_gh_matches_oracle(raw):
    shapes = tuple(Shape(*s) for s in raw)
    rng = random.Random(11)
    for _ in range(10):
        f1 = random_alternating(shapes[0], rng)
        f3 = random_alternating(shapes[2], rng)
        got = build_gh(GHProblem(shapes, f1, f3), symbolic=False)
        assert got == _oracle_gh(shapes, f1, f3)


@pytest.mark.parametrize("raw", GOOD)
def test_good_quadruples_are_square_and_invertible(raw):
    assert is_alternating_good(raw)
    rng = random.Random(3)
    assert all(gh_determinant(raw, rng) for _ in range(100))


def test_symbolic_gh_determinant_is_nonzero_polynomial():
    M = build_gh(((0, 2), (1, 1), (1, 1), (0, 2)))
    syms = {}

    def conv(p):
        return sum(
            c * sympy.Mul(*[syms.setdefault(v, sympy.Symbol(v)) ** k for v, k in zip(p.vars, exp)])
            for exp, c in p.terms.items()
        )

    det = sympy.expand(sympy.Matrix([[conv(x) for x in row] for row in M]).det())
    assert det != 0


def test_gh_dimensions_and_bad_shapes():
    assert GHProblem.from_shapes(((0, 0), (1, 1), (0, 0), (1, 3))).dimensions() == (2, 3)
    assert GHProblem.from_shapes(((0, 2), (1, 1), (1, 1), (0, 2))).dimensions() == (3, 3)
    # L & L: two unknowns, one equation
    assert not is_alternating_good(((0, 0), (1, 1), (0, 0), (1, 1)))
    with pytest.raises(ShapeGapError):
        is_alternating_good(((0, 1), (1, 2), (0, 0), (1, 1)))
    with pytest.raises(ShapeGapError):
        is_alternating_good(((0, 0), (2, 2), (0, 0), (1, 1)))


def test_instantiated_rank_for_good_quadruples_is_full():
    rng = random.Random(0)
    for raw in GOOD:
        M = instantiate_gh(raw, rng)
        assert rank(M) == len(M)

