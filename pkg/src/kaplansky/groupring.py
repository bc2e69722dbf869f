"""The group ring K[G], matrices over it, and exhaustive Kaplansky-property searches.

Elements of K[G] are sparse maps ``group index -> nonzero field code``.
The probes enumerate coefficient vectors lexicographically by
(entry row, entry column, group-element index, field-element code) and
always report the first witness in that order, whatever the job count.
"""

from __future__ import annotations

import itertools
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from . import linalg
from .errors import BudgetExceeded, InvalidParameter, SpecSyntaxError
from .field import FiniteField
from .group import FiniteGroup, Subset, check_same_group, direct_product

DEFAULT_BUDGET = 1 << 22

WITNESS_FOUND = "witness-found"
NONE_IN_SCOPE = "none-in-scope"


class GroupRingElement:
    """An element of K[G]; immutable, zero coefficients are never stored."""

    __slots__ = ("group", "field", "_coeffs", "_hash")

    def __init__(self, group: FiniteGroup, field: FiniteField, coeffs: Mapping[int, int] | Iterable = ()):
        self.group = group
        self.field = field
        clean = {}
        for g, c in dict(coeffs).items():
            if not 0 <= g < group.order:
                raise InvalidParameter(f"group index {g} out of range")
            field.check(c)
            if c:
                clean[g] = c
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def zero(cls, group: FiniteGroup, field: FiniteField) -> "GroupRingElement":
        return cls(group, field)

    @classmethod
    def one(cls, group: FiniteGroup, field: FiniteField) -> "GroupRingElement":
        return cls(group, field, {0: 1})

    @classmethod
    def from_vector(cls, group: FiniteGroup, field: FiniteField, support: Sequence[int],
                    values: Sequence[int]) -> "GroupRingElement":
        return cls(group, field, dict(zip(support, values)))

    @property
    def coeffs(self) -> Mapping[int, int]:
        return MappingProxyType(self._coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._coeffs)

    def __getitem__(self, g: int) -> int:
        return self._coeffs.get(g, 0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: "GroupRingElement") -> None:
        check_same_group(self.group, other.group)
        if self.field != other.field:
            raise InvalidParameter(f"field mismatch: {self.field.name} vs {other.field.name}")

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (self._coeffs == other._coeffs and self.field == other.field
                and self.group == other.group)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group.order, self.field, tuple(self._coeffs.items())))
        return self._hash

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return add(self, other)

    def __neg__(self) -> "GroupRingElement":
        f = self.field
        return GroupRingElement(self.group, f, {g: f.neg(c) for g, c in self._coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return add(self, -other)

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            return convolve(self, other)
        if isinstance(other, int):
            return scalar_mul(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return scalar_mul(other, self)
        return NotImplemented

    def format(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{self.field.format(c)}*{self.group.label(g)}" for g, c in self._coeffs.items())

    def __repr__(self):
        return f"<{self.format()} in {self.field.name}[{self.group.name}]>"

    def to_pairs(self) -> list[list]:
        return [[self.group.label(g), c] for g, c in self._coeffs.items()]

    @classmethod
    def from_pairs(cls, group: FiniteGroup, field: FiniteField, pairs) -> "GroupRingElement":
        out: dict[int, int] = {}
        for label, c in pairs:
            g = group.index(label)
            out[g] = field.add(out.get(g, 0), field.check(c))
        return cls(group, field, out)


def delta(group: FiniteGroup, field: FiniteField, g: int) -> GroupRingElement:
    return GroupRingElement(group, field, {g: 1})


def add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    a._check(b)
    f = a.field
    out = dict(a._coeffs)
    for g, c in b._coeffs.items():
        out[g] = f.add(out.get(g, 0), c)
    return GroupRingElement(a.group, f, out)


def scalar_mul(c: int, a: GroupRingElement) -> GroupRingElement:
    f = a.field
    f.check(c)
    return GroupRingElement(a.group, f, {g: f.mul(c, x) for g, x in a._coeffs.items()})


def convolve(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """(ab)(g) = sum over h1*h2 = g of a(h1) b(h2)."""
    a._check(b)
    f, mt = a.field, a.group.mul_table
    out: dict[int, int] = {}
    for h1, x in a._coeffs.items():
        row = mt[h1]
        for h2, y in b._coeffs.items():
            g = row[h2]
            out[g] = f.add(out.get(g, 0), f.mul(x, y))
    return GroupRingElement(a.group, f, out)


class GroupRingMatrix:
    """A d x d matrix over K[G]."""

    __slots__ = ("group", "field", "entries")

    def __init__(self, group: FiniteGroup, field: FiniteField,
                 entries: Sequence[Sequence[GroupRingElement]]):
        d = len(entries)
        if d < 1 or any(len(row) != d for row in entries):
            raise InvalidParameter("a group-ring matrix must be square with d >= 1")
        for row in entries:
            for x in row:
                check_same_group(group, x.group)
                if x.field != field:
                    raise InvalidParameter("matrix entries must share one field")
        self.group = group
        self.field = field
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def d(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> GroupRingElement:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __mul__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if other.d != self.d:
            raise InvalidParameter("dimension mismatch")
        return GroupRingMatrix(self.group, self.field, [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def is_identity(self) -> bool:
        return self == mat_identity(self.group, self.field, self.d)

    def supports(self) -> Subset:
        return Subset.of(self.group, (g for row in self.entries for x in row for g in x.support))

    def coefficient(self, i: int, j: int, g: int) -> int:
        return self.entries[i][j][g]

    def format(self) -> str:
        return "\n".join("[" + ", ".join(x.format() for x in row) + "]" for row in self.entries)

    def __repr__(self):
        return f"GroupRingMatrix(d={self.d}, {self.field.name}[{self.group.name}])"

    def to_quadruples(self) -> list[list]:
        """Serialized as ``[row, col, group-label, field-code]`` with 1-based row/col."""
        return [
            [i + 1, j + 1, self.group.label(g), c]
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
            for g, c in x.coeffs.items()
        ]

    @classmethod
    def from_quadruples(cls, group: FiniteGroup, field: FiniteField, d: int,
                        quads: Iterable[Sequence]) -> "GroupRingMatrix":
        cells: list[list[dict[int, int]]] = [[{} for _ in range(d)] for _ in range(d)]
        for i, j, label, c in quads:
            if not (1 <= i <= d and 1 <= j <= d):
                raise InvalidParameter(f"entry ({i},{j}) outside a {d}x{d} matrix")
            g = group.index(label)
            cell = cells[i - 1][j - 1]
            cell[g] = field.add(cell.get(g, 0), field.check(c))
        return cls(group, field, [[GroupRingElement(group, field, c) for c in row] for row in cells])

    @classmethod
    def from_coefficients(cls, group: FiniteGroup, field: FiniteField, d: int,
                          support: Sequence[int], values: Sequence[int]) -> "GroupRingMatrix":
        """Inverse of the enumeration order: values indexed by (row, col, support position)."""
        n = len(support)
        return cls(group, field, [
            [GroupRingElement.from_vector(group, field, support, values[(i * d + j) * n:(i * d + j + 1) * n])
             for j in range(d)]
            for i in range(d)
        ])


def mat_identity(group: FiniteGroup, field: FiniteField, d: int) -> GroupRingMatrix:
    one, zero = GroupRingElement.one(group, field), GroupRingElement.zero(group, field)
    return GroupRingMatrix(group, field, [[one if i == j else zero for j in range(d)] for i in range(d)])


def mat_zero(group: FiniteGroup, field: FiniteField, d: int) -> GroupRingMatrix:
    zero = GroupRingElement.zero(group, field)
    return GroupRingMatrix(group, field, [[zero] * d for _ in range(d)])


def mat_mul(a: GroupRingMatrix, b: GroupRingMatrix) -> GroupRingMatrix:
    if a.d != b.d:
        raise InvalidParameter(f"dimension mismatch: {a.d} vs {b.d}")
    check_same_group(a.group, b.group)
    if a.field != b.field:
        raise InvalidParameter("field mismatch")
    d = a.d
    zero = GroupRingElement.zero(a.group, a.field)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = zero
            for k in range(d):
                acc = acc + convolve(a.entries[i][k], b.entries[k][j])
            row.append(acc)
        rows.append(row)
    return GroupRingMatrix(a.group, a.field, rows)


# right inverses by linear algebra

def _right_inverse_space(a: GroupRingMatrix, support: Subset):
    """All B with entries supported in ``support`` and AB = 1, as an affine space.

    Unknowns are B's coefficients ordered by (row, col, support position);
    equations match each coefficient (i, j, g), g ranging over all of G.
    Returns ``(particular, kernel)`` as flat vectors, particular None if infeasible.
    """
    g, f, d = a.group, a.field, a.d
    check_same_group(g, support.group)
    n, sup = g.order, support.elements
    m = len(sup)
    inv, mt = g.inv_table, g.mul_table
    nunk = d * d * m
    rows, rhs = [], []
    for i in range(d):
        for j in range(d):
            for h in range(n):
                row = [0] * nunk
                for k in range(d):
                    aik = a.entries[i][k]
                    if not aik:
                        continue
                    for si, s in enumerate(sup):
                        # (a_ik * delta_s)(h) = a_ik(h s^-1)
                        c = aik[mt[h][inv[s]]]
                        if c:
                            row[(k * d + j) * m + si] = c
                rows.append(row)
                rhs.append(int(i == j and h == 0))
    return linalg.solve(f, rows, rhs, nunk)


def solve_right_inverse(a: GroupRingMatrix, support: Subset) -> GroupRingMatrix | None:
    """The canonical B (free coefficients 0) with supports in ``support`` and AB = 1."""
    sol, _ = _right_inverse_space(a, support)
    if sol is None:
        return None
    return GroupRingMatrix.from_coefficients(a.group, a.field, a.d, support.elements, sol)


def _witness_for(a: GroupRingMatrix, support: Subset) -> tuple[bool, GroupRingMatrix | None]:
    """Return (right invertible, B with AB = 1 and BA != 1 if one exists).

    BA is affine in B, so BA = 1 on the whole solution space iff it holds at
    the particular solution and NA = 0 for every kernel basis vector N.
    """
    sol, kernel = _right_inverse_space(a, support)
    if sol is None:
        return False, None
    g, f, d, sup = a.group, a.field, a.d, support.elements
    b0 = GroupRingMatrix.from_coefficients(g, f, d, sup, sol)
    if not mat_mul(b0, a).is_identity():
        return True, b0
    zero = mat_zero(g, f, d)
    for vec in kernel:
        nmat = GroupRingMatrix.from_coefficients(g, f, d, sup, vec)
        if mat_mul(nmat, a) != zero:
            return True, b0 + nmat
    return True, None


def verify_witness(a: GroupRingMatrix, b: GroupRingMatrix) -> bool:
    """AB = 1 and BA != 1, by direct multiplication."""
    return mat_mul(a, b).is_identity() and not mat_mul(b, a).is_identity()


@dataclass(frozen=True)
class ProbeVerdict:
    outcome: str
    witness: tuple[GroupRingMatrix, GroupRingMatrix] | None
    search_space: int
    examined: int
    right_invertible: int
    elapsed: float
    scope: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.outcome not in (WITNESS_FOUND, NONE_IN_SCOPE):
            raise InvalidParameter(f"unknown outcome {self.outcome!r}")
        if (self.witness is not None) != (self.outcome == WITNESS_FOUND):
            raise AssertionError("witness must be present exactly when one was found")
        if self.witness is not None and not verify_witness(*self.witness):
            raise AssertionError("reported witness fails re-verification")

    @property
    def found(self) -> bool:
        return self.outcome == WITNESS_FOUND

    def to_dict(self) -> dict:
        out = {
            "outcome": self.outcome,
            "search_space": self.search_space,
            "examined": self.examined,
            "right_invertible": self.right_invertible,
            "elapsed_s": round(self.elapsed, 6),
            "scope": self.scope,
        }
        if self.witness is not None:
            a, b = self.witness
            out["witness"] = {"d": a.d, "A": a.to_quadruples(), "B": b.to_quadruples()}
        return out


def _scan_chunk(args):
    """Scan all A whose leading coefficients equal ``prefix``; first hit wins."""
    group, fld, d, support, prefix, nvals = args
    q = fld.order
    examined = right_inv = 0
    sup = support.elements
    for tail in itertools.product(range(q), repeat=nvals - len(prefix)):
        values = prefix + tail
        examined += 1
        a = GroupRingMatrix.from_coefficients(group, fld, d, sup, values)
        inv, b = _witness_for(a, support)
        right_inv += inv
        if b is not None:
            return examined, right_inv, (values, b.to_quadruples())
    return examined, right_inv, None


def _prefixes(q: int, n: int, jobs: int) -> list[tuple[int, ...]]:
    t = 0
    while t < n and q ** t < 4 * jobs:
        t += 1
    if jobs <= 1:
        t = 0
    return list(itertools.product(range(q), repeat=t))


def probe_stable_finiteness(group: FiniteGroup, fld: FiniteField, d: int, support: Subset,
                            budget: int = DEFAULT_BUDGET, jobs: int = 1) -> ProbeVerdict:
    """Search d x d matrices A, B with entry supports in S, AB = 1 and BA != 1."""
    if d < 1:
        raise InvalidParameter("d must be >= 1")
    check_same_group(group, support.group)
    nvals = d * d * len(support)
    space = fld.order ** nvals
    if space > budget:
        raise BudgetExceeded(space, budget, "stable-finiteness probe")
    start = time.perf_counter()
    chunks = [(group, fld, d, support, pre, nvals) for pre in _prefixes(fld.order, nvals, jobs)]
    examined = right_inv = 0
    hit = None
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map preserves chunk order, so the first hit is the global minimum
            for ex, ri, res in pool.map(_scan_chunk, chunks):
                examined += ex
                right_inv += ri
                if res is not None and hit is None:
                    hit = res
    else:
        for chunk in chunks:
            ex, ri, res = _scan_chunk(chunk)
            examined += ex
            right_inv += ri
            if res is not None:
                hit = res
                break
    witness = None
    if hit is not None:
        values, bquads = hit
        a = GroupRingMatrix.from_coefficients(group, fld, d, support.elements, values)
        witness = (a, GroupRingMatrix.from_quadruples(group, fld, d, bquads))
    return ProbeVerdict(
        outcome=WITNESS_FOUND if witness else NONE_IN_SCOPE,
        witness=witness,
        search_space=space,
        examined=examined,
        right_invertible=right_inv,
        elapsed=time.perf_counter() - start,
        scope={"group": group.name, "field": fld.name, "d": d, "support": support.labels()},
    )


def probe_direct_finiteness(group: FiniteGroup, fld: FiniteField, support: Subset,
                            budget: int = DEFAULT_BUDGET, jobs: int = 1) -> ProbeVerdict:
    return probe_stable_finiteness(group, fld, 1, support, budget, jobs)


@dataclass(frozen=True)
class CrossCheckReport:
    """Direct finiteness of K[G x H] next to stable finiteness of K[G] for d <= |H|.

    Both sides are bounded searches, so a disagreement only says the two
    scopes differ; it does not contradict the equivalence theorem, which
    quantifies over every finite H and every d.
    """

    direct: ProbeVerdict
    stable: dict[int, ProbeVerdict]
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "direct_finiteness": self.direct.to_dict(),
            "stable_finiteness": {str(d): v.to_dict() for d, v in self.stable.items()},
            "consistent": self.consistent,
            "note": ("scopes: K[GxH] with S = GxH at d = 1, versus K[G] with S = G at "
                     "d = 1..|H|; bounded searches, a mismatch is not a contradiction"),
        }


def dykema_juschenko_crosscheck(group: FiniteGroup, other: FiniteGroup, fld: FiniteField,
                                budget: int = DEFAULT_BUDGET, jobs: int = 1) -> CrossCheckReport:
    prod = direct_product(group, other)
    direct = probe_direct_finiteness(prod, fld, Subset.all(prod), budget, jobs)
    stable = {
        d: probe_stable_finiteness(group, fld, d, Subset.all(group), budget, jobs)
        for d in range(1, other.order + 1)
    }
    consistent = direct.found == any(v.found for v in stable.values())
    return CrossCheckReport(direct, stable, consistent)


# Kaplansky-property searches over elements supported in S

@dataclass(frozen=True)
class UnitWitness:
    element: GroupRingElement
    inverse: GroupRingElement
    trivial: bool


@dataclass(frozen=True)
class ZeroDivisorWitness:
    left: GroupRingElement
    right: GroupRingElement


@dataclass(frozen=True)
class IdempotentWitness:
    element: GroupRingElement
    trivial: bool


def elements_supported_in(group: FiniteGroup, fld: FiniteField, support: Subset) -> Iterator[GroupRingElement]:
    """All elements with support inside S, in lexicographic coefficient order."""
    for values in itertools.product(range(fld.order), repeat=len(support)):
        yield GroupRingElement.from_vector(group, fld, support.elements, values)


def _check_search(group: FiniteGroup, fld: FiniteField, support: Subset, budget: int) -> None:
    check_same_group(group, support.group)
    need = fld.order ** len(support)
    if need > budget:
        raise BudgetExceeded(need, budget, "element enumeration")


def search_units(group: FiniteGroup, fld: FiniteField, support: Subset,
                 budget: int = DEFAULT_BUDGET) -> list[UnitWitness]:
    _check_search(group, fld, support, budget)
    everything = Subset.all(group)
    one = GroupRingElement.one(group, fld)
    out = []
    for x in elements_supported_in(group, fld, support):
        if not x:
            continue
        binv = solve_right_inverse(GroupRingMatrix(group, fld, [[x]]), everything)
        if binv is None:
            continue
        y = binv.entries[0][0]
        if convolve(y, x) == one:
            out.append(UnitWitness(x, y, len(x.support) == 1))
    return out


def search_zero_divisors(group: FiniteGroup, fld: FiniteField, support: Subset,
                         budget: int = DEFAULT_BUDGET) -> list[ZeroDivisorWitness]:
    """All ordered pairs (a, b), both nonzero and supported in S, with ab = 0.

    For each a the admissible b form the kernel of b -> ab on span(delta_s, s in S),
    which is enumerated directly.
    """
    _check_search(group, fld, support, budget)
    sup = support.elements
    mt, inv = group.mul_table, group.inv_table
    q = fld.order
    out = []
    for x in elements_supported_in(group, fld, support):
        if not x:
            continue
        # column s of the map b -> x*b: coefficient at h is x(h s^-1)
        rows = [[x[mt[h][inv[s]]] for s in sup] for h in group.elements]
        kernel = linalg.nullspace(fld, rows, len(sup))
        if not kernel:
            continue
        if q ** len(kernel) > budget:
            raise BudgetExceeded(q ** len(kernel), budget, "zero-divisor kernel enumeration")
        found = set()
        for cs in itertools.product(range(q), repeat=len(kernel)):
            vec = [0] * len(sup)
            for c, kv in zip(cs, kernel):
                if c:
                    vec = [fld.add(v, fld.mul(c, w)) for v, w in zip(vec, kv)]
            if any(vec):
                found.add(tuple(vec))
        for vec in sorted(found):
            out.append(ZeroDivisorWitness(x, GroupRingElement.from_vector(group, fld, sup, vec)))
    return out


def search_idempotents(group: FiniteGroup, fld: FiniteField, support: Subset,
                       budget: int = DEFAULT_BUDGET) -> list[IdempotentWitness]:
    _check_search(group, fld, support, budget)
    zero, one = GroupRingElement.zero(group, fld), GroupRingElement.one(group, fld)
    return [
        IdempotentWitness(x, x in (zero, one))
        for x in elements_supported_in(group, fld, support)
        if convolve(x, x) == x
    ]


# matrix source format, one line per nonzero entry (1-based indices):
#   entry(i,j) = c1*label1 + c2*label2 + ...
# a bare label means coefficient 1, "0" an explicit zero entry; the
# optional line "dim: d" fixes d, otherwise d is the largest index used.
# Coefficients are field-element codes. '#' starts a comment.

_ENTRY_RE = re.compile(r"entry\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*=(.*)\Z")
_TERM_RE = re.compile(r"(?:(\d+)\s*\*\s*)?([A-Za-z\[][A-Za-z0-9.\[\]]*)\Z")


def parse_matrix(text: str, group: FiniteGroup, fld: FiniteField) -> GroupRingMatrix:
    quads = []
    dim = None
    seen_max = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim:"):
            try:
                dim = int(line[4:])
            except ValueError:
                raise SpecSyntaxError("bad 'dim:' line", 0, lineno, 1) from None
            continue
        m = _ENTRY_RE.match(line)
        if not m:
            raise SpecSyntaxError(f"cannot parse matrix line {raw!r}", 0, lineno, 1)
        i, j = int(m.group(1)), int(m.group(2))
        if i < 1 or j < 1:
            raise SpecSyntaxError("entry indices are 1-based", 0, lineno, 1)
        seen_max = max(seen_max, i, j)
        rhs = m.group(3).strip()
        if rhs == "0":
            continue
        for term in rhs.split("+"):
            tm = _TERM_RE.match(term.strip())
            if not tm:
                raise SpecSyntaxError(f"bad term {term.strip()!r}", 0, lineno, 1)
            c = int(tm.group(1)) if tm.group(1) else 1
            quads.append((i, j, tm.group(2), fld.check(c)))
    d = dim if dim is not None else seen_max
    if d < 1:
        raise SpecSyntaxError("empty matrix", 0)
    return GroupRingMatrix.from_quadruples(group, fld, d, quads)


def format_matrix(m: GroupRingMatrix) -> str:
    lines = [f"dim: {m.d}"]
    for i, row in enumerate(m.entries, 1):
        for j, x in enumerate(row, 1):
            if x:
                rhs = " + ".join(f"{c}*{m.group.label(g)}" for g, c in x.coeffs.items())
                lines.append(f"entry({i},{j}) = {rhs}")
    return "\n".join(lines) + "\n"
