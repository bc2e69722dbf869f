"""SMT-LIB 2.6 emission for sentences evaluated in a prime field GF(p).

Each variable becomes an Int ranging over 0..p-1; ring operations stay in
integer arithmetic and both sides of every equality are reduced mod p.
"""

from __future__ import annotations

import re

from ..errors import Unsupported
from ..field import is_prime
from .syntax import (Add, And, Equal, Exists, Forall, Formula, Mul, Neg, Not, One, Or, SentenceStats,
                     Term, Var, Zero, check_sentence)

_SIMPLE_SYMBOL = re.compile(r"[A-Za-z~!@$%^&*_+=<>.?/-][A-Za-z0-9~!@$%^&*_+=<>.?/-]*\Z")


def smt_symbol(v: Var) -> str:
    name = v.name
    return name if _SIMPLE_SYMBOL.match(name) else f"|{name}|"


def _term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return smt_symbol(t)
    if isinstance(t, Neg):
        return f"(- {_term(t.arg)})"
    if isinstance(t, Add):
        return f"(+ {_term(t.left)} {_term(t.right)})"
    if isinstance(t, Mul):
        return f"(* {_term(t.left)} {_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")


def _range(v: Var, p: int) -> str:
    s = smt_symbol(v)
    return f"(<= 0 {s}) (< {s} {p})"


def _formula(f: Formula, p: int, indent: str = "") -> str:
    if isinstance(f, Equal):
        return f"(= (mod {_term(f.lhs)} {p}) (mod {_term(f.rhs)} {p}))"
    if isinstance(f, Not):
        return f"(not {_formula(f.arg, p, indent)})"
    if isinstance(f, (And, Or)):
        if not f.args:
            return "true" if isinstance(f, And) else "false"
        op = "and" if isinstance(f, And) else "or"
        sub = indent + "  "
        return f"({op}\n" + "\n".join(sub + _formula(a, p, sub) for a in f.args) + ")"
    if isinstance(f, (Exists, Forall)):
        if not f.vars:
            return _formula(f.body, p, indent)
        binders = " ".join(f"({smt_symbol(v)} Int)" for v in f.vars)
        ranges = " ".join(_range(v, p) for v in f.vars)
        body = _formula(f.body, p, indent + "  ")
        if isinstance(f, Exists):
            return f"(exists ({binders}) (and {ranges}\n{indent}  {body}))"
        return f"(forall ({binders}) (=> (and {ranges})\n{indent}  {body}))"
    raise TypeError(f"not a formula: {f!r}")


def _has_quantifier(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return True
    if isinstance(f, (And, Or)):
        return any(_has_quantifier(a) for a in f.args)
    if isinstance(f, Not):
        return _has_quantifier(f.arg)
    return False


def emit_smtlib(f: Formula, p: int) -> str:
    """A script whose satisfiability equals the truth of f in GF(p).

    The leading existential block is declared as constants; any deeper
    quantifier is emitted as an SMT quantifier with range guards.
    """
    if not is_prime(p):
        raise Unsupported(f"SMT-LIB backend needs a prime field, got p={p}; use the native evaluator")
    check_sentence(f)
    consts: list[Var] = []
    core = f
    while isinstance(core, Exists):
        consts.extend(core.vars)
        core = core.body
    stats = SentenceStats.of(f)
    logic = "NIA" if _has_quantifier(core) else "QF_NIA"
    lines = [
        f"; variables={stats.variables} equalities={stats.equalities} field=GF({p})",
        "(set-info :smt-lib-version 2.6)",
        f"(set-logic {logic})",
    ]
    for v in consts:
        lines.append(f"(declare-const {smt_symbol(v)} Int)")
    for v in consts:
        lines.append(f"(assert (and {_range(v, p)}))")
    lines.append(f"(assert {_formula(core, p)})")
    lines.append("(check-sat)")
    lines.append("(exit)")
    return "\n".join(lines) + "\n"
