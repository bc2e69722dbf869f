"""Truth of a sentence in a finite field by exhaustive assignment.

The sentence is compiled to a Python expression once: quantifier blocks
become ``any``/``all`` over ``itertools.product``, so ``and``/``or`` and the
quantifiers short-circuit. Over GF(p) terms are plain integer arithmetic
reduced at each equality; over GF(p^k) they go through Cayley tables.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

from ..errors import BudgetExceeded
from ..field import FiniteField
from .syntax import (Add, And, Equal, Exists, Forall, Formula, Mul, Neg, Not, One, Or, Term, Var, Zero,
                     bound_vars, check_sentence)

DEFAULT_BUDGET = 1 << 22


class _Compiler:
    def __init__(self, field: FiniteField):
        self.field = field
        self.prime = field.k == 1
        self.counter = 0

    def fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"

    def term(self, t: Term, env: dict[Var, str]) -> str:
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, One):
            return "1"
        if isinstance(t, Var):
            return env[t]
        if isinstance(t, Neg):
            a = self.term(t.arg, env)
            return f"(-{a})" if self.prime else f"N[{a}]"
        a, b = self.term(t.left, env), self.term(t.right, env)
        if isinstance(t, Add):
            return f"({a} + {b})" if self.prime else f"A[{a}][{b}]"
        if isinstance(t, Mul):
            return f"({a} * {b})" if self.prime else f"M[{a}][{b}]"
        raise TypeError(f"not a term: {t!r}")

    def formula(self, f: Formula, env: dict[Var, str]) -> str:
        if isinstance(f, Equal):
            lhs, rhs = self.term(f.lhs, env), self.term(f.rhs, env)
            if self.prime:
                return f"(({lhs}) - ({rhs})) % P == 0"
            return f"({lhs}) == ({rhs})"
        if isinstance(f, Not):
            return f"(not ({self.formula(f.arg, env)}))"
        if isinstance(f, (And, Or)):
            if not f.args:
                return "True" if isinstance(f, And) else "False"
            op = " and " if isinstance(f, And) else " or "
            return "(" + op.join(f"({self.formula(a, env)})" for a in f.args) + ")"
        if isinstance(f, (Exists, Forall)):
            if not f.vars:
                return self.formula(f.body, env)
            inner = dict(env)
            names = []
            for v in f.vars:
                inner[v] = self.fresh()
                names.append(inner[v])
            body = self.formula(f.body, inner)
            agg = "any" if isinstance(f, Exists) else "all"
            return f"{agg}(({body}) for ({', '.join(names)},) in product(R, repeat={len(names)}))"
        raise TypeError(f"not a formula: {f!r}")


def _compile(f: Formula, field: FiniteField, env: dict[Var, str]):
    code = _Compiler(field).formula(f, env)
    namespace = {"product": itertools.product, "R": range(field.order), "P": field.p}
    if field.k > 1:
        namespace.update(A=field.add_table(), M=field.mul_table(), N=field.neg_table())
    return eval(compile(code, "<sentence>", "eval"), namespace)


def required_budget(f: Formula, field: FiniteField) -> int:
    return field.order ** len(bound_vars(f))


def _evaluate_with_first(args) -> bool:
    f, field, value = args
    first, rest = f.vars[0], f.vars[1:]
    sub = type(f)(rest, f.body)
    return _compile(sub, field, {first: str(value)})


def evaluate(f: Formula, field: FiniteField, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> bool:
    """Whether f holds in the field.

    With ``jobs > 1`` the values of the first quantified variable are spread
    over worker processes and the results OR-/AND-reduced.
    """
    check_sentence(f)
    need = required_budget(f, field)
    if need > budget:
        raise BudgetExceeded(need, budget, "sentence evaluation")
    if jobs > 1 and isinstance(f, (Exists, Forall)) and f.vars:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_evaluate_with_first, [(f, field, c) for c in field.elements])
            return any(results) if isinstance(f, Exists) else all(results)
    return bool(_compile(f, field, {}))
