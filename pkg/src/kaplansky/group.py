"""Finite groups given by explicit multiplication tables.

Elements are the indices ``0..n-1`` and index 0 is always the identity.
Left translation ``L_g`` is a row lookup: ``G.mul(g, h)`` is ``g*h``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidGroup, InvalidParameter, SpecSyntaxError, UnsupportedSpec

MAX_SYMMETRIC_DEGREE = 4

_LABEL_RE = re.compile(r"[A-Za-z\[][A-Za-z0-9.\[\]]*\Z")


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    mul_table: tuple[tuple[int, ...], ...]
    inv_table: tuple[int, ...]
    labels: tuple[str, ...]
    _label_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.mul_table)
        if n == 0:
            raise InvalidParameter("a group needs at least one element")
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise InvalidGroup("labels must be unique, one per element")
        if self.labels[0] != "e":
            raise InvalidGroup("the identity (index 0) must be labelled 'e'")
        for lab in self.labels:
            if not _LABEL_RE.match(lab):
                raise InvalidGroup(f"bad element label {lab!r}")
        object.__setattr__(self, "_label_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def order(self) -> int:
        return len(self.mul_table)

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    identity = 0

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise InvalidParameter(f"no element labelled {label!r} in {self.name}") from None

    @cached_property
    def is_abelian(self) -> bool:
        t = self.mul_table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.mul_table == other.mul_table and self.labels == other.labels

    def __hash__(self):
        return hash((self.mul_table, self.labels))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def check_same_group(g: FiniteGroup, h: FiniteGroup) -> None:
    if g != h:
        raise InvalidParameter(f"group mismatch: {g.name} vs {h.name}")


def _validate(table: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Check group axioms on a table whose identity is 0; return inverses."""
    n = len(table)
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise InvalidGroup(f"0 is not a two-sided identity at element {a}")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InvalidGroup(f"associativity fails at ({a}, {b}, {c})", (a, b, c))
    inv = []
    for a in range(n):
        row = table[a]
        try:
            b = row.index(0)
        except ValueError:
            raise InvalidGroup(f"element {a} has no right inverse") from None
        if table[b][a] != 0:
            raise InvalidGroup(f"element {a} has no two-sided inverse")
        inv.append(b)
    return tuple(inv)


def _build(name: str, table: Sequence[Sequence[int]], labels: Sequence[str]) -> FiniteGroup:
    table = tuple(tuple(row) for row in table)
    return FiniteGroup(name, table, _validate(table), tuple(labels))


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"cyclic group order must be >= 1, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + ["g" if i == 1 else f"g{i}" for i in range(1, n)]
    return _build(f"C{n}", table, labels)


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element ``i + n*j`` is ``r^i s^j``."""
    if n < 1:
        raise InvalidParameter(f"dihedral parameter must be >= 1, got {n}")

    def power(i: int) -> str:
        return "" if i == 0 else ("r" if i == 1 else f"r{i}")

    elems = [(i, j) for j in range(2) for i in range(n)]
    pos = {e: k for k, e in enumerate(elems)}
    table = []
    for a, b in elems:
        row = []
        for c, d in elems:
            # r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b+d)
            row.append(pos[((a + (c if b == 0 else -c)) % n, (b + d) % 2)])
        table.append(row)
    labels = [(power(i) + ("s" if j else "")) or "e" for i, j in elems]
    return _build(f"D{n}", table, labels)


def make_symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n points, composition ``(s*t)(i) = s(t(i))``."""
    if n < 1:
        raise InvalidParameter(f"symmetric degree must be >= 1, got {n}")
    if n > MAX_SYMMETRIC_DEGREE:
        raise InvalidParameter(f"symmetric groups are capped at degree {MAX_SYMMETRIC_DEGREE}")
    perms = list(itertools.permutations(range(n)))
    pos = {p: k for k, p in enumerate(perms)}
    table = [[pos[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    labels = ["e"] + ["p" + "".join(str(i + 1) for i in p) for p in perms[1:]]
    return _build(f"S{n}", table, labels)


def _wrap(label: str) -> str:
    return f"[{label}]" if "." in label else label


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with element ``a*|H| + b`` standing for ``(a, b)``."""
    m = h.order
    pairs = [(a, b) for a in g.elements for b in h.elements]
    table = [
        [g.mul(a, c) * m + h.mul(b, d) for c, d in pairs]
        for a, b in pairs
    ]
    labels = ["e"] + [f"{_wrap(g.label(a))}.{_wrap(h.label(b))}" for a, b in pairs[1:]]
    return _build(f"{g.name}x{h.name}", table, labels)


def from_table(rows: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
               name: str = "G") -> FiniteGroup:
    """Validate a raw multiplication table and normalize its identity to index 0.

    Errors name elements by their position in the raw table.
    """
    n = len(rows)
    if n == 0:
        raise InvalidParameter("empty multiplication table")
    for r, row in enumerate(rows):
        if len(row) != n:
            raise InvalidGroup(f"row {r} has length {len(row)}, expected {n}")
        for x in row:
            if not isinstance(x, int) or not 0 <= x < n:
                raise InvalidGroup(f"entry {x!r} in row {r} is out of range")
    ident = next(
        (e for e in range(n)
         if all(rows[e][a] == a and rows[a][e] == a for a in range(n))),
        None,
    )
    if ident is None:
        raise InvalidGroup("table has no two-sided identity")
    # swap ident <-> 0
    perm = list(range(n))
    perm[0], perm[ident] = ident, 0
    table = [[perm[rows[perm[a]][perm[b]]] for b in range(n)] for a in range(n)]
    try:
        inv = _validate(table)
    except InvalidGroup as exc:
        triple = None if exc.triple is None else tuple(perm[i] for i in exc.triple)
        msg = str(exc) if triple is None else f"associativity fails at {triple}"
        raise InvalidGroup(msg, triple) from None
    if labels is None:
        new_labels = ["e"] + [f"a{perm[i]}" for i in range(1, n)]
    else:
        new_labels = [labels[perm[i]] for i in range(n)]
        new_labels[0] = "e"
    return FiniteGroup(name, tuple(tuple(r) for r in table), inv, tuple(new_labels))


@dataclass(frozen=True)
class Subset:
    """A finite subset of a group, stored as strictly ascending indices."""

    group: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(self.elements)
        if any(not 0 <= x < self.group.order for x in els):
            raise InvalidParameter("subset index out of range")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise InvalidParameter("subset indices must be strictly ascending")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, group: FiniteGroup, elements: Iterable[int]) -> "Subset":
        return cls(group, tuple(sorted(set(elements))))

    @classmethod
    def all(cls, group: FiniteGroup) -> "Subset":
        return cls(group, tuple(group.elements))

    @classmethod
    def from_labels(cls, group: FiniteGroup, labels: Iterable[str]) -> "Subset":
        return cls.of(group, (group.index(lab) for lab in labels))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def labels(self) -> list[str]:
        return [self.group.label(x) for x in self.elements]

    def issubset(self, other: "Subset") -> bool:
        return set(self.elements) <= set(other.elements)


def product_set(s: Subset, t: Subset) -> Subset:
    check_same_group(s.group, t.group)
    g = s.group
    return Subset.of(g, (g.mul(a, b) for a in s for b in t))


def parse_support(group: FiniteGroup, text: str) -> Subset:
    """``all`` or a comma-separated list of element labels."""
    text = text.strip()
    if text == "all":
        return Subset.all(group)
    labels = [part.strip() for part in text.split(",")]
    if not text or any(not lab for lab in labels):
        raise SpecSyntaxError("empty label in support list", 0)
    return Subset.from_labels(group, labels)


# group spec grammar:
#   spec   := family ":" nat | "product(" spec "," spec ")" | "table:" matrix
#   family := "cyclic" | "dihedral" | "symmetric"
#   matrix := "[" row ("," row)* "]" ;  row := "[" nat ("," nat)* "]"

_FAMILIES = {"cyclic": make_cyclic, "dihedral": make_dihedral, "symmetric": make_symmetric}


class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise SpecSyntaxError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def word(self) -> str:
        self.skip()
        m = re.compile(r"[A-Za-z_]+").match(self.text, self.pos)
        if not m:
            self.error("expected a group family name")
        self.pos = m.end()
        return m.group()

    def nat(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected a natural number")
        self.pos = m.end()
        return int(m.group())

    def spec(self) -> FiniteGroup:
        start = self.pos
        name = self.word()
        if name == "product":
            self.expect("(")
            left = self.spec()
            self.expect(",")
            right = self.spec()
            self.expect(")")
            return direct_product(left, right)
        if name == "table":
            self.expect(":")
            return from_table(self.matrix())
        self.expect(":")
        if name not in _FAMILIES:
            raise UnsupportedSpec(f"unsupported group family {name!r} at position {start}")
        return _FAMILIES[name](self.nat())

    def _list(self, item):
        self.expect("[")
        out = [item()]
        while self.peek(","):
            self.expect(",")
            out.append(item())
        self.expect("]")
        return out

    def matrix(self) -> list[list[int]]:
        return self._list(lambda: self._list(self.nat))


def parse_group_spec(text: str) -> FiniteGroup:
    """Parse e.g. ``cyclic:3``, ``product(cyclic:2,cyclic:2)``, ``table:[[0,1],[1,0]]``."""
    p = _SpecParser(text)
    g = p.spec()
    p.skip()
    if p.pos != len(text):
        p.error("trailing characters after group spec")
    return g
