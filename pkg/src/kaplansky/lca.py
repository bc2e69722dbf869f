"""Cellular automata over a finite group G.

A configuration is a map G -> alphabet, stored as a tuple indexed by
element. The group acts by ``(g.x)(h) = x(g h)``, and an automaton with
memory set S and local rule mu sends x to ``h -> mu((x(h s))_{s in S})``.

Linear automata on (K^d)^G come from matrices M over K[G]: with M(s) the
d x d matrix of delta_s-coefficients of M's entries and column-vector
values, ``tau_M(x)(h) = sum_s M(s) x(h s)``. With this convention
``tau_{M M'} = tau_M o tau_M'`` for every finite G.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg
from .errors import BudgetExceeded, InvalidParameter, SpecSyntaxError
from .field import FiniteField
from .group import FiniteGroup, Subset, check_same_group
from .groupring import GroupRingMatrix

GENERAL_CA_BUDGET = 1 << 20


@dataclass(frozen=True)
class Configuration:
    group: FiniteGroup
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.group.order:
            raise InvalidParameter(f"configuration has {len(self.values)} values for a group of order {self.group.order}")

    def __getitem__(self, g: int):
        return self.values[g]

    def translate(self, g: int) -> "Configuration":
        """x o L_g, i.e. h -> x(g h)."""
        row = self.group.mul_table[g]
        return Configuration(self.group, tuple(self.values[row[h]] for h in self.group.elements))

    def format(self) -> str:
        def one(v):
            return "(" + ",".join(map(str, v)) + ")" if isinstance(v, tuple) else str(v)
        return "(" + ", ".join(one(v) for v in self.values) + ")"


@dataclass(frozen=True, eq=False)
class LinearCA:
    group: FiniteGroup
    field: FiniteField
    d: int
    memory: Subset
    coeffs: Mapping[int, tuple[tuple[int, ...], ...]]

    def __post_init__(self):
        check_same_group(self.group, self.memory.group)
        if len(self.memory) == 0:
            raise InvalidParameter("memory set must be nonempty")
        for s in self.memory:
            m = self.coeffs.get(s)
            if m is None or len(m) != self.d or any(len(r) != self.d for r in m):
                raise InvalidParameter(f"missing or malformed {self.d}x{self.d} coefficient at {s}")
            for r in m:
                for c in r:
                    self.field.check(c)

    def apply(self, x: Configuration) -> Configuration:
        return apply(self, x)

    def local_rule(self, pattern: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """mu on a pattern indexed like the memory set."""
        f, d = self.field, self.d
        out = [0] * d
        for s, v in zip(self.memory, pattern):
            m = self.coeffs[s]
            for i in range(d):
                for j in range(d):
                    if m[i][j] and v[j]:
                        out[i] = f.add(out[i], f.mul(m[i][j], v[j]))
        return tuple(out)


@dataclass(frozen=True, eq=False)
class GeneralCA:
    group: FiniteGroup
    alphabet: tuple[str, ...]
    memory: Subset
    rule: Mapping[tuple[str, ...], str]

    def __post_init__(self):
        check_same_group(self.group, self.memory.group)
        if len(self.memory) == 0:
            raise InvalidParameter("memory set must be nonempty")
        alpha = set(self.alphabet)
        for pattern in itertools.product(self.alphabet, repeat=len(self.memory)):
            out = self.rule.get(pattern)
            if out is None:
                raise InvalidParameter(f"local rule undefined on pattern {pattern}")
            if out not in alpha:
                raise InvalidParameter(f"rule output {out!r} is not in the alphabet")

    def apply(self, x: Configuration) -> Configuration:
        return apply(self, x)

    def local_rule(self, pattern: Sequence[str]) -> str:
        return self.rule[tuple(pattern)]


def lca_from_matrix(m: GroupRingMatrix) -> LinearCA:
    g, f, d = m.group, m.field, m.d
    memory = m.supports()
    if len(memory) == 0:
        memory = Subset(g, (0,))
    coeffs = {
        s: tuple(tuple(m.coefficient(i, j, s) for j in range(d)) for i in range(d))
        for s in memory
    }
    return LinearCA(g, f, d, memory, coeffs)


def apply(tau: LinearCA | GeneralCA, x: Configuration) -> Configuration:
    check_same_group(tau.group, x.group)
    mt = tau.group.mul_table
    mem = tau.memory.elements
    vals = x.values
    return Configuration(tau.group, tuple(
        tau.local_rule([vals[mt[h][s]] for s in mem]) for h in tau.group.elements
    ))


def global_matrix(tau: LinearCA) -> list[list[int]]:
    """Matrix of tau on K^(d|G|), basis index ``h*d + i`` for coordinate i at h."""
    g, f, d = tau.group, tau.field, tau.d
    n = g.order * d
    t = [[0] * n for _ in range(n)]
    for h in g.elements:
        for s in tau.memory:
            col0 = g.mul(h, s) * d
            m = tau.coeffs[s]
            for i in range(d):
                for j in range(d):
                    if m[i][j]:
                        t[h * d + i][col0 + j] = f.add(t[h * d + i][col0 + j], m[i][j])
    return t


def flatten(x: Configuration) -> list[int]:
    return [c for v in x.values for c in v]


def unflatten(group: FiniteGroup, d: int, vec: Sequence[int]) -> Configuration:
    return Configuration(group, tuple(tuple(vec[h * d:(h + 1) * d]) for h in group.elements))


def all_configurations(tau: LinearCA | GeneralCA) -> Iterable[Configuration]:
    if isinstance(tau, LinearCA):
        cells = list(itertools.product(tau.field.elements, repeat=tau.d))
    else:
        cells = list(tau.alphabet)
    for vals in itertools.product(cells, repeat=tau.group.order):
        yield Configuration(tau.group, vals)


def _config_count(tau: LinearCA | GeneralCA) -> int:
    if isinstance(tau, LinearCA):
        return tau.field.order ** (tau.d * tau.group.order)
    return len(tau.alphabet) ** tau.group.order


def _image_size(tau: GeneralCA, budget: int) -> tuple[int, int]:
    total = _config_count(tau)
    if total > budget:
        raise BudgetExceeded(total, budget, "configuration scan")
    image = {apply(tau, x).values for x in all_configurations(tau)}
    return len(image), total


def is_injective(tau: LinearCA | GeneralCA, budget: int = GENERAL_CA_BUDGET) -> bool:
    if isinstance(tau, LinearCA):
        return len(linalg.nullspace(tau.field, global_matrix(tau))) == 0
    size, total = _image_size(tau, budget)
    return size == total


def is_surjective(tau: LinearCA | GeneralCA, budget: int = GENERAL_CA_BUDGET) -> bool:
    if isinstance(tau, LinearCA):
        return linalg.rank(tau.field, global_matrix(tau)) == tau.d * tau.group.order
    size, total = _image_size(tau, budget)
    return size == total


def random_configuration(tau: LinearCA | GeneralCA, rng: random.Random) -> Configuration:
    if isinstance(tau, LinearCA):
        q = tau.field.order
        vals = [tuple(rng.randrange(q) for _ in range(tau.d)) for _ in tau.group.elements]
    else:
        vals = [rng.choice(tau.alphabet) for _ in tau.group.elements]
    return Configuration(tau.group, vals)


def check_equivariance(tau, samples: Iterable[Configuration] | int = 50, group: FiniteGroup | None = None,
                       seed: int = 0) -> bool:
    """tau(x o L_g) == tau(x) o L_g for every g and every sampled x.

    ``tau`` may be a CA or any callable on configurations (then ``group``
    is required); an int ``samples`` draws that many random configurations.
    """
    fn: Callable[[Configuration], Configuration] = tau.apply if hasattr(tau, "apply") else tau
    group = group or tau.group
    if isinstance(samples, int):
        rng = random.Random(seed)
        samples = [random_configuration(tau, rng) for _ in range(samples)]
    for x in samples:
        image = fn(x)
        for g in group.elements:
            if fn(x.translate(g)) != image.translate(g):
                return False
    return True


@dataclass(frozen=True)
class ConsistencyVerdict:
    injective: bool
    surjective: bool

    @property
    def status(self) -> str:
        return "FAIL" if self.injective and not self.surjective else "PASS"


def check_injective_implies_surjective(tau: LinearCA | GeneralCA,
                                       budget: int = GENERAL_CA_BUDGET) -> ConsistencyVerdict:
    verdict = ConsistencyVerdict(is_injective(tau, budget), is_surjective(tau, budget))
    if verdict.status == "FAIL":
        raise AssertionError("injective but not surjective over a finite group: internal error")
    return verdict


# local rule tables:
#   alphabet: <label> <label> ...
#   memory: <group label> <group label> ...
#   <label> ... <label> -> <label>        one line per pattern, in memory order
# '#' starts a comment.

def parse_rule(text: str, group: FiniteGroup) -> GeneralCA:
    alphabet: list[str] | None = None
    memory: list[str] | None = None
    rule: dict[tuple[str, ...], str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = line[len("alphabet:"):].split()
        elif line.startswith("memory:"):
            memory = line[len("memory:"):].split()
        elif "->" in line:
            if memory is None:
                raise SpecSyntaxError("rule line before 'memory:' header", 0, lineno, 1)
            lhs, rhs = line.split("->", 1)
            pattern, out = tuple(lhs.split()), rhs.split()
            if len(pattern) != len(memory) or len(out) != 1:
                raise SpecSyntaxError(f"expected {len(memory)} input labels and one output", 0, lineno, 1)
            if pattern in rule:
                raise SpecSyntaxError(f"duplicate pattern {pattern}", 0, lineno, 1)
            rule[pattern] = out[0]
        else:
            raise SpecSyntaxError(f"cannot parse rule line {raw!r}", 0, lineno, 1)
    if alphabet is None or memory is None:
        raise SpecSyntaxError("rule table needs 'alphabet:' and 'memory:' headers", 0)
    mem_idx = [group.index(lab) for lab in memory]
    if len(set(mem_idx)) != len(mem_idx):
        raise InvalidParameter("memory set lists an element twice")
    # store patterns in ascending memory-index order
    order = sorted(range(len(mem_idx)), key=mem_idx.__getitem__)
    table = {tuple(p[k] for k in order): out for p, out in rule.items()}
    return GeneralCA(group, tuple(alphabet), Subset(group, tuple(sorted(mem_idx))), table)


def format_rule(tau: GeneralCA) -> str:
    lines = ["alphabet: " + " ".join(tau.alphabet), "memory: " + " ".join(tau.memory.labels())]
    for pattern in itertools.product(tau.alphabet, repeat=len(tau.memory)):
        lines.append(" ".join(pattern) + " -> " + tau.rule[pattern])
    return "\n".join(lines) + "\n"
