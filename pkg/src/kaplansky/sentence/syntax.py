"""First-order syntax in the language of rings (0, 1, -, +, *, =)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from ..errors import InvalidParameter


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Var:
    """A variable such as ``x_1_2_g`` stored as role ``x`` with indices ``(1, 2, 'g')``."""

    role: str
    indices: tuple = ()

    def __post_init__(self):
        if not self.role or "_" in self.role or not self.role[0].isalpha():
            raise InvalidParameter(f"bad variable role {self.role!r}")

    @property
    def name(self) -> str:
        return "_".join([self.role, *map(str, self.indices)])

    @classmethod
    def from_name(cls, name: str) -> "Var":
        role, *rest = name.split("_")
        return cls(role, tuple(int(p) if p.isdigit() else p for p in rest))


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Zero, One, Var, Neg, Add, Mul]


@dataclass(frozen=True)
class Equal:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class And:
    args: tuple = ()


@dataclass(frozen=True)
class Or:
    args: tuple = ()


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class Exists:
    vars: tuple
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    vars: tuple
    body: "Formula"


Formula = Union[Equal, And, Or, Not, Exists, Forall]
Sentence = Formula

ZERO = Zero()
ONE = One()


def term_sum(terms) -> Term:
    """Left-nested sum; the empty sum is 0."""
    terms = list(terms)
    if not terms:
        return ZERO
    acc = terms[0]
    for t in terms[1:]:
        acc = Add(acc, t)
    return acc


def ne(t: Term, u: Term) -> Formula:
    return Not(Equal(t, u))


def term_vars(t: Term) -> Iterator[Var]:
    stack = [t]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            yield t
        elif isinstance(t, Neg):
            stack.append(t.arg)
        elif isinstance(t, (Add, Mul)):
            stack.append(t.right)
            stack.append(t.left)


def free_vars(f: Formula) -> set[Var]:
    if isinstance(f, Equal):
        return set(term_vars(f.lhs)) | set(term_vars(f.rhs))
    if isinstance(f, (And, Or)):
        out: set[Var] = set()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - set(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def bound_vars(f: Formula) -> list[Var]:
    """Every quantified variable, in binding order (repeats kept)."""
    if isinstance(f, (Exists, Forall)):
        return list(f.vars) + bound_vars(f.body)
    if isinstance(f, (And, Or)):
        return [v for a in f.args for v in bound_vars(a)]
    if isinstance(f, Not):
        return bound_vars(f.arg)
    return []


def check_sentence(f: Formula) -> None:
    """Raise unless f is closed and binds each variable exactly once."""
    free = free_vars(f)
    if free:
        names = ", ".join(sorted(v.name for v in free))
        raise InvalidParameter(f"sentence has free variables: {names}")
    bound = bound_vars(f)
    if len(bound) != len(set(bound)):
        raise InvalidParameter("a variable is bound more than once")


def atoms(f: Formula) -> int:
    """Number of atomic equalities."""
    if isinstance(f, Equal):
        return 1
    if isinstance(f, (And, Or)):
        return sum(atoms(a) for a in f.args)
    if isinstance(f, Not):
        return atoms(f.arg)
    if isinstance(f, (Exists, Forall)):
        return atoms(f.body)
    raise TypeError(f"not a formula: {f!r}")


def matrix_of(f: Formula) -> Formula:
    """Strip the leading quantifier prefix."""
    while isinstance(f, (Exists, Forall)):
        f = f.body
    return f


@dataclass(frozen=True)
class SentenceStats:
    """Size of a sentence.

    ``p_equalities``/``q_equalities`` count the atoms of the first and second
    top-level conjuncts of the quantifier-free core (for the stable-finiteness
    sentence these are the AB = 1 and BA = 1 parts); 0 when absent.
    """

    variables: int
    equalities: int
    p_equalities: int
    q_equalities: int

    @classmethod
    def of(cls, f: Formula) -> "SentenceStats":
        core = matrix_of(f)
        parts = core.args if isinstance(core, And) else (core,)
        p = atoms(parts[0]) if len(parts) > 0 else 0
        q = atoms(parts[1]) if len(parts) > 1 else 0
        return cls(len(bound_vars(f)), atoms(f), p, q)

    def to_text(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.__dict__.items()) + "\n"
