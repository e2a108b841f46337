import sympy

from lcrid.constitutive import ConstEq

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def op_to_sympy(op, symbols: dict) -> list:
    """Coefficients of a DiffOp as sympy expressions, ascending order."""
    out = []
    for c in op.coeffs:
        expr = sympy.Integer(0)
        for exp, k in c.terms.items():
            expr += k * sympy.Mul(*[symbols[v] ** e for v, e in zip(c.vars, exp)])
        out.append(sympy.expand(expr))
    return out


def equation_matches(e: ConstEq, v_expected: dict, i_expected: dict) -> bool:
    """True iff e equals the expected coefficients ({order: sympy expr}) up to one positive rational scalar."""
    symbols = {name: sympy.Symbol(name) for name in e.vars}
    got_v = op_to_sympy(e.v_op, symbols)
    got_i = op_to_sympy(e.i_op, symbols)
    pairs = []
    for got, want in ((got_v, v_expected), (got_i, i_expected)):
        orders = set(range(len(got))) | set(want)
        for k in orders:
            g = got[k] if k < len(got) else sympy.Integer(0)
            w = sympy.expand(sympy.sympify(want.get(k, 0), locals=symbols))
            pairs.append((g, w))
    scale = None
    for g, w in pairs:
        if w == 0 or g == 0:
            if w != g:
                return False
            continue
        ratio = sympy.simplify(g / w)
        if not ratio.is_number or ratio <= 0:
            return False
        if scale is None:
            scale = ratio
        elif ratio != scale:
            return False
    return True
