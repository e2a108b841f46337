"""Polynomial relations among the constitutive coefficients of a network.

Coefficients are named ``c<k>`` (V side, order k) and ``d<k>`` (I side).
Relations are searched one stratum at a time: all monomials with a fixed
degree in the c variables, a fixed degree in the d variables, and a fixed
weighted degree where ``c_k`` and ``d_k`` weigh ``k``.  Sampling uses the
projective parameterization so that both kinds of homogeneity hold.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Sequence

from .constitutive import ConstEq, Param, build_consteq
from .network import Network
from .polyalg import P, MultiPoly, Shape, kernel, poly_eval, poly_substitute, random_point, rank, rational_reconstruct

MAX_STRATUM = 200
MAX_DEGREE = 3


class StratumTooLarge(ValueError):
    pass


Monomial = tuple[tuple[int, ...], tuple[int, ...]]  # (sorted c indices, sorted d indices)


def relation_vars(v_order: int, i_order: int) -> tuple[str, ...]:
    """Registry c_m..c_0, d_m..d_0 (descending, so printed relations lead with high orders)."""
    return tuple(f"c{k}" for k in range(v_order, -1, -1)) + tuple(f"d{k}" for k in range(i_order, -1, -1))


@dataclass(frozen=True)
class RelationPoly:
    poly: MultiPoly
    bidegree: tuple[int, int]
    weighted_degree: int
    verified_exact: bool | None = None
    modular_only: bool = False

    def __str__(self) -> str:
        return str(self.poly)

    def to_json(self) -> dict:
        out = {
            "poly": str(self.poly),
            "bidegree": list(self.bidegree),
            "wdegree": self.weighted_degree,
            "verified_exact": self.verified_exact,
        }
        if self.modular_only:
            out["modular_only"] = True
        return out

    def is_bihomogeneous(self) -> bool:
        return all(_bidegree(self.poly.vars, e) == self.bidegree for e in self.poly.terms)

    def is_weighted_homogeneous(self) -> bool:
        return all(_wdegree(self.poly.vars, e) == self.weighted_degree for e in self.poly.terms)


def _bidegree(names: Sequence[str], exp: Sequence[int]) -> tuple[int, int]:
    c = sum(k for n, k in zip(names, exp) if n[0] == "c")
    d = sum(k for n, k in zip(names, exp) if n[0] == "d")
    return c, d


def _wdegree(names: Sequence[str], exp: Sequence[int]) -> int:
    return sum(int(n[1:]) * k for n, k in zip(names, exp))


def parse_relation(text: str, v_order: int, i_order: int) -> RelationPoly:
    """Read a relation such as ``"c1*d1 - c0*d2"``; bidegree is taken from the first term."""
    names = relation_vars(v_order, i_order)
    poly = MultiPoly.zero(names)
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty relation")
    if text[0] not in "+-":
        text = "+" + text
    for sign, body in re.findall(r"([+-])([^+-]+)", text):
        coef = 1
        exp = [0] * len(names)
        for factor in body.split("*"):
            if factor.isdigit():
                coef *= int(factor)
                continue
            base, _, power = factor.partition("^")
            exp[names.index(base)] += int(power or 1)
        poly = poly + MultiPoly(names, {tuple(exp): -coef if sign == "-" else coef})
    if poly.is_zero():
        return RelationPoly(poly, (0, 0), 0)
    first = next(iter(poly.terms))
    return RelationPoly(poly, _bidegree(names, first), _wdegree(names, first))


def _support(s: Shape | Iterable[int]) -> list[int]:
    if isinstance(s, Shape):
        return list(range(s.min_deg, s.max_deg + 1))
    return sorted(set(s))


def monomial_stratum(v_shape, i_shape, cdeg: int, ddeg: int, wdeg: int) -> list[Monomial]:
    """Monomials of bidegree (cdeg, ddeg) and weighted degree wdeg.

    ``v_shape``/``i_shape`` are ``Shape`` ranges or explicit index sets of the
    live variables.  Each monomial is a pair of sorted index tuples.
    """
    cs, ds = _support(v_shape), _support(i_shape)
    out = []
    for cm in combinations_with_replacement(cs, cdeg):
        w = sum(cm)
        if w > wdeg:
            continue
        for dm in combinations_with_replacement(ds, ddeg):
            if w + sum(dm) == wdeg:
                out.append((cm, dm))
    return sorted(out, key=lambda m: (tuple(-k for k in m[0]), tuple(-k for k in m[1])))


def monomial_poly(m: Monomial, names: tuple[str, ...], coef: int = 1) -> MultiPoly:
    exp = [0] * len(names)
    for k in m[0]:
        exp[names.index(f"c{k}")] += 1
    for k in m[1]:
        exp[names.index(f"d{k}")] += 1
    return MultiPoly(names, {tuple(exp): coef})


def _coefficient_values(e: ConstEq, point: dict[str, int]) -> tuple[list[int], list[int]]:
    return (
        [poly_eval(c, point) for c in e.v_op.coeffs],
        [poly_eval(c, point) for c in e.i_op.coeffs],
    )


def _monomial_value(m: Monomial, cv: Sequence[int], dv: Sequence[int]) -> int:
    out = 1
    for k in m[0]:
        out = out * cv[k] % P
    for k in m[1]:
        out = out * dv[k] % P
    return out


def _lift(vec: Sequence[int]) -> list[int] | None:
    """Integer vector proportional to a modular kernel vector, with content 1."""
    fracs = []
    for x in vec:
        if x == 0:
            fracs.append((0, 1))
            continue
        rr = rational_reconstruct(x)
        if rr is None:
            return None
        fracs.append(rr)
    den = reduce(lcm, (d for _, d in fracs), 1)
    ints = [n * (den // d) for n, d in fracs]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return None
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


def sample_matrix(e: ConstEq, stratum: Sequence[Monomial], samples: int, rng: random.Random) -> list[list[int]]:
    rows = []
    for _ in range(samples):
        cv, dv = _coefficient_values(e, random_point(e.vars, rng))
        rows.append([_monomial_value(m, cv, dv) for m in stratum])
    return rows


def live_supports(e: ConstEq) -> tuple[list[int], list[int]]:
    """Orders of the coefficients that are not identically zero."""
    return e.v_op.support(), e.i_op.support()


def find_relations(
    n: Network,
    cdeg: int,
    ddeg: int,
    wdeg: int,
    samples: int | None = None,
    seed: int = 0,
    max_stratum: int = MAX_STRATUM,
    max_degree: int = MAX_DEGREE,
) -> list[RelationPoly]:
    """Relations in one stratum, found as the kernel of a sampled evaluation matrix.

    Each kernel vector is lifted to integers and then checked on fresh
    samples and by exact symbolic substitution.
    """
    if max(cdeg, ddeg) > max_degree:
        raise StratumTooLarge(f"degrees ({cdeg},{ddeg}) exceed the bound {max_degree}")
    e = build_consteq(n, Param.PROJECTIVE)
    vs, is_ = live_supports(e)
    stratum = monomial_stratum(vs, is_, cdeg, ddeg, wdeg)
    if len(stratum) > max_stratum:
        raise StratumTooLarge(f"stratum has {len(stratum)} monomials (limit {max_stratum})")
    if not stratum:
        return []
    if samples is None:
        samples = 2 * len(stratum) + 10
    if samples < 2 * len(stratum):
        raise ValueError("need at least twice as many samples as monomials")
    rng = random.Random(seed)
    M = sample_matrix(e, stratum, samples, rng)
    basis = kernel(M, ncols=len(stratum))
    names = relation_vars(e.v_op.order, e.i_op.order)
    fresh = sample_matrix(e, stratum, max(10, len(stratum)), rng)
    out = []
    for vec in basis:
        if any(sum(a * b for a, b in zip(row, vec)) % P for row in fresh):
            continue
        ints = _lift(vec)
        if ints is None:
            poly = MultiPoly(names)
            for m, x in zip(stratum, vec):
                poly = poly + monomial_poly(m, names, x)
            out.append(RelationPoly(poly, (cdeg, ddeg), wdeg, None, modular_only=True))
            continue
        poly = MultiPoly(names)
        for m, x in zip(stratum, ints):
            if x:
                poly = poly + monomial_poly(m, names, x)
        rel = RelationPoly(poly, (cdeg, ddeg), wdeg)
        out.append(RelationPoly(poly, (cdeg, ddeg), wdeg, verify_relation_exact(n, rel, e)))
    return out


def kernel_dimension(n: Network, cdeg: int, ddeg: int, wdeg: int, samples: int | None = None, seed: int = 0) -> int:
    e = build_consteq(n, Param.PROJECTIVE)
    vs, is_ = live_supports(e)
    stratum = monomial_stratum(vs, is_, cdeg, ddeg, wdeg)
    if not stratum:
        return 0
    samples = samples or 2 * len(stratum) + 10
    M = sample_matrix(e, stratum, samples, random.Random(seed))
    return len(stratum) - rank(M)


def _images(e: ConstEq, names: Sequence[str]) -> dict[str, MultiPoly]:
    images = {}
    for name in names:
        k = int(name[1:])
        op = e.v_op if name[0] == "c" else e.i_op
        images[name] = op[k]
    return images


def verify_relation_exact(n: Network, r: RelationPoly | MultiPoly, e: ConstEq | None = None) -> bool:
    """True iff the relation vanishes identically after substituting the projective coefficients."""
    poly = r.poly if isinstance(r, RelationPoly) else r
    if poly.is_zero():
        return True
    if e is None:
        e = build_consteq(n, Param.PROJECTIVE)
    for name in poly.vars:
        k = int(name[1:])
        op = e.v_op if name[0] == "c" else e.i_op
        if k > op.order and poly.degree_in(name) > 0:
            return False
    composed = poly_substitute(poly, _images(e, poly.vars), e.vars)
    return composed.is_zero()


def scaling_invariance_check(n: Network, r: RelationPoly | MultiPoly, trials: int = 100, seed: int = 0) -> bool:
    """Check that r vanishes on sampled coefficient points and on their rescalings.

    Every trial applies ``(c, d) -> (lam c, delta d)`` and the weighted action
    ``c_k -> lam^k c_k, d_k -> lam^k d_k`` with fresh nonzero scalars.
    """
    poly = r.poly if isinstance(r, RelationPoly) else r
    e = build_consteq(n, Param.PROJECTIVE)
    rng = random.Random(seed)
    for _ in range(trials):
        cv, dv = _coefficient_values(e, random_point(e.vars, rng))
        lam, delta, mu = (rng.randrange(1, P) for _ in range(3))
        for cs, ds in (
            (cv, dv),
            ([x * lam % P for x in cv], [x * delta % P for x in dv]),
            ([x * pow(mu, k, P) % P for k, x in enumerate(cv)], [x * pow(mu, k, P) % P for k, x in enumerate(dv)]),
        ):
            if _eval_relation(poly, cs, ds):
                return False
    return True


def _eval_relation(poly: MultiPoly, cv: Sequence[int], dv: Sequence[int]) -> int:
    point = {}
    for name in poly.vars:
        k = int(name[1:])
        vals = cv if name[0] == "c" else dv
        point[name] = vals[k] if k < len(vals) else 0
    return poly_eval(poly, point)
