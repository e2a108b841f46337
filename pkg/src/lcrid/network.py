"""Series-parallel LCR networks: parsing, printing, duals and enumeration.

Concrete syntax: ``&`` joins in series, ``|`` joins in parallel, ``&`` binds
tighter and parentheses group.  Labels start with the element kind letter::

    >>> str(parse_network("(R1 & C1) | (R2 & L1)"))
    '(R1 & C1) | (R2 & L1)'

Nested nodes of the same operation are flattened.  Children keep their
written order; ``canonical_key`` sorts them for comparisons up to
commutativity.
"""

from __future__ import annotations

import enum
import random
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

MAX_ENUM_LEAVES = 8


class ElementKind(enum.Enum):
    RESISTOR = "R"
    INDUCTOR = "L"
    CAPACITOR = "C"

    @classmethod
    def from_letter(cls, letter: str) -> ElementKind:
        return cls(letter.upper())

    @property
    def dual(self) -> ElementKind:
        return _DUAL_KIND[self]


_DUAL_KIND = {
    ElementKind.RESISTOR: ElementKind.RESISTOR,
    ElementKind.INDUCTOR: ElementKind.CAPACITOR,
    ElementKind.CAPACITOR: ElementKind.INDUCTOR,
}


class NetworkError(ValueError):
    pass


class NetworkSyntaxError(NetworkError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DuplicateLabelError(NetworkError):
    pass


class LabelKindMismatch(NetworkError):
    pass


class LimitExceeded(NetworkError):
    pass


_LABEL_RE = re.compile(r"[RLC][A-Za-z0-9_']*")


@dataclass(frozen=True)
class Element:
    kind: ElementKind
    label: str

    def __post_init__(self):
        if not _LABEL_RE.fullmatch(self.label):
            raise NetworkError(f"invalid label {self.label!r}")
        if self.label[0] != self.kind.value:
            raise LabelKindMismatch(f"label {self.label!r} does not start with {self.kind.value}")


@dataclass(frozen=True)
class Leaf:
    element: Element

    @property
    def kind(self) -> ElementKind:
        return self.element.kind

    @property
    def label(self) -> str:
        return self.element.label

    def __str__(self) -> str:
        return format_network(self)


@dataclass(frozen=True)
class Series:
    children: tuple[Network, ...]

    def __str__(self) -> str:
        return format_network(self)


@dataclass(frozen=True)
class Parallel:
    children: tuple[Network, ...]

    def __str__(self) -> str:
        return format_network(self)


Network = Union[Leaf, Series, Parallel]


def leaf(label: str) -> Leaf:
    return Leaf(Element(ElementKind.from_letter(label[0]), label))


def series(*children: Network) -> Network:
    return _make(Series, children)


def parallel(*children: Network) -> Network:
    return _make(Parallel, children)


def _make(node_type, children: Iterable[Network]) -> Network:
    flat: list[Network] = []
    for ch in children:
        if isinstance(ch, node_type):
            flat.extend(ch.children)
        else:
            flat.append(ch)
    if not flat:
        raise NetworkError("empty combination")
    if len(flat) == 1:
        return flat[0]
    net = node_type(tuple(flat))
    _check_labels(net)
    return net


def leaves(n: Network) -> list[Leaf]:
    if isinstance(n, Leaf):
        return [n]
    out = []
    for ch in n.children:
        out.extend(leaves(ch))
    return out


def labels(n: Network) -> list[str]:
    return [lf.label for lf in leaves(n)]


def kind_counts(n: Network) -> Counter:
    return Counter(lf.kind for lf in leaves(n))


def kinds_used(n: Network) -> frozenset[ElementKind]:
    return frozenset(lf.kind for lf in leaves(n))


def _check_labels(n: Network) -> None:
    seen = set()
    for lab in labels(n):
        if lab in seen:
            raise DuplicateLabelError(f"duplicate label {lab!r}")
        seen.add(lab)


# parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<label>[A-Za-z][A-Za-z0-9_']*)|(?P<op>[&|()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise NetworkSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start("label") if m.group("label") else m.start("op")
        if m.group("label"):
            lab = m.group("label")
            if lab[0] not in "RLC":
                raise LabelKindMismatch(f"label {lab!r} at position {start} must start with R, L or C")
            tokens.append(("label", lab, start))
        else:
            tokens.append((m.group("op"), m.group("op"), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise NetworkSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Network:
        net = self.parallel()
        self.take("end")
        return net

    def parallel(self) -> Network:
        parts = [self.series()]
        while self.peek()[0] == "|":
            self.i += 1
            parts.append(self.series())
        return _make_unchecked(Parallel, parts)

    def series(self) -> Network:
        parts = [self.atom()]
        while self.peek()[0] == "&":
            self.i += 1
            parts.append(self.atom())
        return _make_unchecked(Series, parts)

    def atom(self) -> Network:
        kind, value, pos = self.peek()
        if kind == "label":
            self.i += 1
            return leaf(value)
        if kind == "(":
            self.i += 1
            inner = self.parallel()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(value)
        raise NetworkSyntaxError(f"expected a label or '(', found {what}", pos)


def _make_unchecked(node_type, parts: list[Network]) -> Network:
    flat: list[Network] = []
    for ch in parts:
        if isinstance(ch, node_type):
            flat.extend(ch.children)
        else:
            flat.append(ch)
    return flat[0] if len(flat) == 1 else node_type(tuple(flat))


def parse_network(text: str) -> Network:
    """Parse network text into flattened form, validating labels."""
    net = _Parser(text).parse()
    _check_labels(net)
    return net


def format_network(n: Network) -> str:
    if isinstance(n, Leaf):
        return n.label
    if isinstance(n, Series):
        # a parallel child needs parentheses since & binds tighter
        return " & ".join(
            f"({format_network(ch)})" if isinstance(ch, Parallel) else format_network(ch) for ch in n.children
        )
    return " | ".join(
        f"({format_network(ch)})" if isinstance(ch, Series) else format_network(ch) for ch in n.children
    )


def canonical_key(n: Network):
    """Ordering key that ignores child order, so equal keys mean equal up to commutativity."""
    if isinstance(n, Leaf):
        return (0, n.label)
    tag = 1 if isinstance(n, Series) else 2
    return (tag, tuple(sorted(canonical_key(ch) for ch in n.children)))


def shape_key(n: Network):
    """Like ``canonical_key`` but ignores labels, keeping only element kinds."""
    if isinstance(n, Leaf):
        return (0, n.kind.value)
    tag = 1 if isinstance(n, Series) else 2
    return (tag, tuple(sorted(shape_key(ch) for ch in n.children)))


def canonicalize(n: Network) -> Network:
    """Same network with children sorted by ``canonical_key``."""
    if isinstance(n, Leaf):
        return n
    kids = sorted((canonicalize(ch) for ch in n.children), key=canonical_key)
    return type(n)(tuple(kids))


# duality


def dual_label(label: str) -> str:
    """Swap the kind letter and toggle the dual marker.

    An even number of trailing primes gains one, an odd number loses one, so
    the map is an involution on labels.
    """
    kind = ElementKind.from_letter(label[0])
    body = label[1:]
    primes = len(body) - len(body.rstrip("'"))
    body = body[:-1] if primes % 2 else body + "'"
    return kind.dual.value + body


def dual_network(n: Network) -> Network:
    """Swap series with parallel and inductors with capacitors."""
    if isinstance(n, Leaf):
        return leaf(dual_label(n.label))
    kids = tuple(dual_network(ch) for ch in n.children)
    return Parallel(kids) if isinstance(n, Series) else Series(kids)


# enumeration


def _parse_kinds(kinds) -> tuple[ElementKind, ...]:
    if isinstance(kinds, str):
        kinds = [ElementKind.from_letter(ch) for ch in kinds if not ch.isspace()]
    out = []
    for k in kinds:
        k = k if isinstance(k, ElementKind) else ElementKind.from_letter(k)
        if k not in out:
            out.append(k)
    order = [ElementKind.RESISTOR, ElementKind.INDUCTOR, ElementKind.CAPACITOR]
    return tuple(sorted(out, key=order.index))


def _multisets(items: list, size: int, start: int = 0) -> Iterator[tuple]:
    if size == 0:
        yield ()
        return
    for i in range(start, len(items)):
        for rest in _multisets(items, size - 1, i):
            yield (items[i],) + rest


def _partitions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n into parts <= max_part, parts non-increasing."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _shapes(n: int, kinds: tuple[str, ...], top: str) -> tuple:
    """Unlabeled trees with n leaves whose root is not of type ``top``.

    Trees are nested tuples: a kind letter for a leaf, ('S', kids) or ('P', kids)
    with kids sorted.  top is 'S', 'P' or '' (any root).
    """
    out = []
    if n == 1:
        return tuple(kinds)
    for op in ("S", "P"):
        if op == top:
            continue
        for parts in _partitions(n, n - 1):
            # group equal part sizes so kids come out as multisets
            groups = Counter(parts)
            choices = [[]]
            for size in sorted(groups, reverse=True):
                cands = sorted(_shapes(size, kinds, op), key=repr)
                new = []
                for combo in _multisets(cands, groups[size]):
                    for prefix in choices:
                        new.append(prefix + list(combo))
                choices = new
            for kids in choices:
                out.append((op, tuple(sorted(kids, key=repr))))
    return tuple(out)


def _label_shape(shape) -> Network:
    counters: Counter = Counter()

    def build(s) -> Network:
        if isinstance(s, str):
            counters[s] += 1
            return leaf(f"{s}{counters[s]}")
        op, kids = s
        built = tuple(build(k) for k in kids)
        return Series(built) if op == "S" else Parallel(built)

    return build(shape)


def enumerate_networks(kinds, max_leaves: int, min_leaves: int = 1) -> Iterator[Network]:
    """Every series-parallel network over ``kinds`` with min_leaves..max_leaves leaves.

    Each network appears once up to commutativity and relabeling within a
    kind.  Leaves are labeled R1, R2, ..., L1, ... in traversal order.
    """
    if max_leaves > MAX_ENUM_LEAVES:
        raise LimitExceeded(f"max_leaves {max_leaves} exceeds {MAX_ENUM_LEAVES}")
    ks = tuple(k.value for k in _parse_kinds(kinds))
    if not ks:
        return
    for n in range(max(1, min_leaves), max_leaves + 1):
        for shape in _shapes(n, ks, ""):
            yield _label_shape(shape)


def count_networks(kinds, leaves_: int) -> int:
    ks = tuple(k.value for k in _parse_kinds(kinds))
    return len(_shapes(leaves_, ks, ""))


def random_network(kinds, n_leaves: int, seed: int) -> Network:
    """Random network with exactly n_leaves leaves; deterministic in seed."""
    if n_leaves < 1:
        raise NetworkError("need at least one leaf")
    ks = [k.value for k in _parse_kinds(kinds)]
    rng = random.Random(seed)

    def build(n: int, forbid: str):
        if n == 1:
            return rng.choice(ks)
        ops = [op for op in ("S", "P") if op != forbid]
        op = rng.choice(ops)
        # split into 2..n parts by random cuts
        n_parts = rng.randint(2, n)
        cuts = sorted(rng.sample(range(1, n), n_parts - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        return (op, tuple(build(s, op) for s in sizes))

    return _label_shape(build(n_leaves, ""))
