"""Exact polynomial arithmetic and linear algebra over the integers and F_p.

``MultiPoly`` is a sparse multivariate polynomial with integer coefficients
over an ordered tuple of variable names.  ``DiffOp`` is a differential
operator stored densely by derivative order, each coefficient a ``MultiPoly``.
The matrix routines work on plain lists of lists of Python ints reduced
modulo ``P``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

P = (1 << 61) - 1

Exponent = tuple[int, ...]


class RegistryMismatch(ValueError):
    pass


class MultiPoly:
    """Sparse polynomial ``{exponent tuple: int}`` over a fixed variable registry.

    Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        for exp, coef in (terms or {}).items():
            if coef == 0:
                continue
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match registry arity {n}")
            clean[tuple(exp)] = coef
        self.terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, variables: Sequence[str]) -> MultiPoly:
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], value: int) -> MultiPoly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> MultiPoly:
        variables = tuple(variables)
        try:
            idx = variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None
        exp = [0] * len(variables)
        exp[idx] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, int]) -> MultiPoly:
        # trusted fast path: terms already normalized
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def coefficients_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # arithmetic

    def _check(self, other: MultiPoly) -> None:
        if self.vars != other.vars:
            raise RegistryMismatch(f"registries differ: {self.vars} vs {other.vars}")

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, int):
            return MultiPoly.const(self.vars, other)
        self._check(other)
        return other

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, int):
            if other == 0:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def partial(self, name: str) -> MultiPoly:
        return poly_partial(self, name)

    def eval_mod(self, point: Mapping[str, int], p: int = P) -> int:
        return poly_eval(self, point, p)

    # rendering

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms by descending total degree, then descending lex in registry order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exp, coef in self.sorted_terms():
            factors = []
            for name, k in zip(self.vars, exp):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append((coef < 0, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def poly_partial(p: MultiPoly, name: str) -> MultiPoly:
    """Formal partial derivative with respect to ``name``."""
    try:
        i = p.vars.index(name)
    except ValueError:
        raise KeyError(f"unknown variable {name!r}") from None
    out = {}
    for exp, coef in p.terms.items():
        k = exp[i]
        if k:
            e = exp[:i] + (k - 1,) + exp[i + 1:]
            out[e] = coef * k
    return MultiPoly._raw(p.vars, out)


def poly_eval(p: MultiPoly, point: Mapping[str, int], modulus: int = P) -> int:
    """Value of ``p`` at ``point`` in F_modulus."""
    try:
        vals = [point[v] % modulus for v in p.vars]
    except KeyError as exc:
        raise KeyError(f"point does not assign {exc.args[0]!r}") from None
    total = 0
    for exp, coef in p.terms.items():
        term = coef
        for v, k in zip(vals, exp):
            if k:
                term = term * pow(v, k, modulus) % modulus
        total += term
    return total % modulus


def poly_eval_int(p: MultiPoly, point: Mapping[str, int]) -> int:
    """Exact integer value of ``p`` at an integer point."""
    vals = [point[v] for v in p.vars]
    total = 0
    for exp, coef in p.terms.items():
        term = coef
        for v, k in zip(vals, exp):
            if k:
                term *= v ** k
        total += term
    return total


def poly_substitute(p: MultiPoly, images: Mapping[str, MultiPoly], target_vars: Sequence[str]) -> MultiPoly:
    """Compose ``p`` with ``images``: every variable of ``p`` becomes a polynomial over ``target_vars``."""
    target_vars = tuple(target_vars)
    powers: dict[tuple[str, int], MultiPoly] = {}

    def power(name: str, k: int) -> MultiPoly:
        key = (name, k)
        if key not in powers:
            powers[key] = images[name] ** k
        return powers[key]

    result = MultiPoly.zero(target_vars)
    for exp, coef in p.terms.items():
        term = MultiPoly.const(target_vars, coef)
        for name, k in zip(p.vars, exp):
            if k:
                term = term * power(name, k)
        result = result + term
    return result


def random_point(variables: Iterable[str], rng: random.Random, p: int = P) -> dict[str, int]:
    """Uniform point of (F_p^*)^n, keyed by variable name."""
    return {v: rng.randrange(1, p) for v in variables}


# differential operators


@dataclass(frozen=True)
class Shape:
    min_deg: int
    max_deg: int

    def __post_init__(self):
        if not 0 <= self.min_deg <= self.max_deg:
            raise ValueError(f"bad shape [{self.min_deg},{self.max_deg}]")

    def __iter__(self):
        yield self.min_deg
        yield self.max_deg

    def __str__(self) -> str:
        return f"[{self.min_deg},{self.max_deg}]"


class Alternation(enum.Enum):
    ALTERNATING = "Alternating"
    NONALTERNATING = "Nonalternating"
    NEITHER = "Neither"


class DiffOp:
    """Operator sum_i coeffs[i] * d^i/dt^i with polynomial coefficients.

    Trailing zero coefficients are trimmed; the zero operator is rejected.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[MultiPoly]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            raise ValueError("zero differential operator")
        registry = coeffs[0].vars
        for c in coeffs:
            if c.vars != registry:
                raise RegistryMismatch("coefficients over different registries")
        self.coeffs = tuple(coeffs)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.coeffs[0].vars

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> MultiPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return MultiPoly.zero(self.vars)

    def __len__(self) -> int:
        return len(self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: DiffOp) -> DiffOp:
        return diffop_mul(self, other)

    def __add__(self, other: DiffOp) -> DiffOp:
        return diffop_add(self, other)

    def __repr__(self) -> str:
        return f"DiffOp([{', '.join(str(c) for c in self.coeffs)}])"


def diffop_mul(f: DiffOp, g: DiffOp) -> DiffOp:
    """Operator product; with constant coefficients this is the coefficient convolution."""
    if f.vars != g.vars:
        raise RegistryMismatch("operators over different registries")
    zero = MultiPoly.zero(f.vars)
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(g.coeffs):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return DiffOp(out)


def diffop_add(f: DiffOp, g: DiffOp) -> DiffOp:
    if f.vars != g.vars:
        raise RegistryMismatch("operators over different registries")
    n = max(len(f), len(g))
    return DiffOp([f[i] + g[i] for i in range(n)])


def shape_of(f: DiffOp) -> Shape:
    sup = f.support()
    return Shape(sup[0], sup[-1])


def alternation_class(f: DiffOp) -> Alternation:
    sup = f.support()
    if len({i % 2 for i in sup}) == 1:
        return Alternation.ALTERNATING
    if len(sup) == sup[-1] - sup[0] + 1:
        return Alternation.NONALTERNATING
    return Alternation.NEITHER


# linear algebra over F_p

Matrix = list[list[int]]


def _reduce(M: Sequence[Sequence[int]], p: int) -> Matrix:
    return [[x % p for x in row] for row in M]


def row_echelon(M: Sequence[Sequence[int]], p: int = P) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    A = _reduce(M, p)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        pivot_row = A[r]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], pivot_row)]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: Sequence[Sequence[int]], p: int = P) -> int:
    if not M or not M[0]:
        return 0
    return len(row_echelon(M, p)[1])


def kernel(M: Sequence[Sequence[int]], p: int = P, ncols: int | None = None) -> list[list[int]]:
    """Basis of the right null space {x : M x = 0} over F_p.

    Each basis vector has a 1 in its free column and zeros in the other free columns.
    """
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, pivots = row_echelon(M, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row_i, pc in enumerate(pivots):
            v[pc] = (-R[row_i][f]) % p
        basis.append(v)
    return basis


def determinant(M: Sequence[Sequence[int]], p: int = P) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    A = _reduce(M, p)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[c])]
    return det % p


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix of two univariate polynomials.

    ``f`` and ``g`` are coefficient lists in ascending degree (``f[i]`` is the
    coefficient of x^i).  Column j < deg g holds f's coefficients from the top
    shifted down by j; the remaining deg f columns hold g's.  Entries are
    copied as given, so integers, field values or ``MultiPoly`` all work.
    """
    f = list(f)
    g = list(g)
    while len(f) > 1 and _is_zero(f[-1]):
        f.pop()
    while len(g) > 1 and _is_zero(g[-1]):
        g.pop()
    n, m = len(f) - 1, len(g) - 1
    if n < 1 or m < 1:
        raise ValueError("sylvester_matrix needs degrees >= 1")
    zero = _zero_like(f[0])
    size = n + m
    S = [[zero] * size for _ in range(size)]
    fd = f[::-1]
    gd = g[::-1]
    for j in range(m):
        for k, a in enumerate(fd):
            S[j + k][j] = a
    for j in range(n):
        for k, b in enumerate(gd):
            S[j + k][m + j] = b
    return S


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, MultiPoly) else x == 0


def _zero_like(x):
    return MultiPoly.zero(x.vars) if isinstance(x, MultiPoly) else 0


def rational_reconstruct(a: int, p: int = P) -> tuple[int, int] | None:
    """Find n/d with n = a*d mod p and |n|, d below sqrt(p/2), or None."""
    a %= p
    bound = int((p // 2) ** 0.5)
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if (r1 - a * s1) % p:
        return None
    return r1, s1
