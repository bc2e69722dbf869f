"""Printed form of sentences and its parser.

Grammar (whitespace and newlines are insignificant)::

    formula := ("∃" | "∀") [var ("," var)*] ":" formula
             | "¬" formula
             | "(" term "=" term ")"
             | "(" formula ("∧" formula)+ ")" | "(" formula ("∨" formula)+ ")"
             | "∧" "(" formula ")" | "∨" "(" formula ")"      one-element conjunction/disjunction
             | "⊤" | "⊥"                                       empty conjunction/disjunction
             | "(" formula ")"                                 grouping, no node of its own
    term    := "0" | "1" | var | "(" "-" term ")" | "(" term ("+" | "*") term ")"
    var     := [A-Za-z][A-Za-z0-9_.\\[\\]]*

Every binary operator carries its own parentheses, so a parenthesis is
classified by the first operator at its own nesting depth: ``=`` makes an
atom, ``∧``/``∨`` a connective, none a plain grouping.
"""

from __future__ import annotations

import re

from ..errors import SpecSyntaxError
from .syntax import (ONE, ZERO, Add, And, Equal, Exists, Forall, Formula, Mul, Neg, Not, One, Or,
                     Term, Var, Zero)

_WRAP_WIDTH = 88


def print_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Neg):
        return f"(-{print_term(t.arg)})"
    if isinstance(t, Add):
        return f"({print_term(t.left)} + {print_term(t.right)})"
    if isinstance(t, Mul):
        return f"({print_term(t.left)} * {print_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")


def _inner(f: Formula, indent: int) -> str:
    # quantifiers nested under another node get their own parentheses
    s = _print(f, indent)
    return f"({s})" if isinstance(f, (Exists, Forall)) else s


def _print(f: Formula, indent: int) -> str:
    if isinstance(f, Equal):
        return f"({print_term(f.lhs)} = {print_term(f.rhs)})"
    if isinstance(f, Not):
        return "¬" + _inner(f.arg, indent)
    if isinstance(f, (And, Or)):
        op = "∧" if isinstance(f, And) else "∨"
        if not f.args:
            return "⊤" if isinstance(f, And) else "⊥"
        if len(f.args) == 1:
            return f"{op}({_print(f.args[0], indent)})"
        parts = [_inner(a, indent + 2) for a in f.args]
        flat = f"({f' {op} '.join(parts)})"
        if len(flat) + indent <= _WRAP_WIDTH and "\n" not in flat:
            return flat
        pad = " " * (indent + 2)
        return "(" + f"\n{pad}{op} ".join(parts) + ")"
    if isinstance(f, (Exists, Forall)):
        q = "∃" if isinstance(f, Exists) else "∀"
        names = ", ".join(v.name for v in f.vars)
        head = f"{q} {names} :" if names else f"{q} :"
        return f"{head}\n{' ' * (indent + 2)}{_print(f.body, indent + 2)}"
    raise TypeError(f"not a formula: {f!r}")


def pretty_print(f: Formula) -> str:
    return _print(f, 0)


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_.\[\]]*)
  | (?P<num>[0-9]+)
  | (?P<sym>[∃∀¬∧∨⊤⊥():,=+*-])
""", re.VERBOSE)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []  # (kind, value, offset)
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                self._error(f"unexpected character {text[pos]!r}", pos)
            if m.lastgroup != "ws":
                self.toks.append((m.lastgroup, m.group(), pos))
            pos = m.end()
        self.i = 0
        self._classify()

    def _error(self, msg: str, offset: int | None = None):
        if offset is None:
            offset = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        raise SpecSyntaxError(msg, offset, line, col)

    def _classify(self):
        """For each '(' token: index of its ')' and first operator at depth 1."""
        self.close: dict[int, int] = {}
        self.kind: dict[int, str] = {}
        stack: list[int] = []
        for idx, (_, val, off) in enumerate(self.toks):
            if val == "(":
                stack.append(idx)
            elif val == ")":
                if not stack:
                    self._error("unbalanced ')'", off)
                self.close[stack.pop()] = idx
            elif val in ("=", "∧", "∨", "+", "*") and stack and stack[-1] not in self.kind:
                # an infix connective follows a complete formula; "∧(" after ":" is prefix
                if val in ("∧", "∨") and (idx == 0 or self.toks[idx - 1][1] not in (")", "⊤", "⊥")):
                    continue
                self.kind[stack[-1]] = val
        if stack:
            self._error("unclosed '('", self.toks[stack[-1]][2])

    def peek(self) -> str | None:
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> tuple[str, str, int]:
        if self.i >= len(self.toks):
            self._error("unexpected end of input" + (f", expected {expected!r}" if expected else ""))
        tok = self.toks[self.i]
        if expected is not None and tok[1] != expected:
            self._error(f"expected {expected!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def var(self) -> Var:
        kind, val, _ = self.take()
        if kind != "ident":
            self.i -= 1
            self._error(f"expected a variable, found {val!r}")
        try:
            return Var.from_name(val)
        except ValueError:
            self.i -= 1
            self._error(f"bad variable name {val!r}")

    def term(self) -> Term:
        tok = self.peek()
        if tok is None:
            self._error("unexpected end of input, expected a term")
        kind, val, _ = self.toks[self.i]
        if kind == "num":
            if val not in ("0", "1"):
                self._error(f"only the constants 0 and 1 are allowed, found {val!r}")
            self.i += 1
            return ZERO if val == "0" else ONE
        if kind == "ident":
            return self.var()
        if val == "(":
            self.i += 1
            if self.peek() == "-":
                self.i += 1
                arg = self.term()
                self.take(")")
                return Neg(arg)
            left = self.term()
            op = self.peek()
            if op not in ("+", "*"):
                self._error(f"expected '+' or '*', found {op!r}")
            self.i += 1
            right = self.term()
            self.take(")")
            return Add(left, right) if op == "+" else Mul(left, right)
        self._error(f"expected a term, found {val!r}")

    def formula(self) -> Formula:
        tok = self.peek()
        if tok is None:
            self._error("unexpected end of input, expected a formula")
        if tok in ("∃", "∀"):
            self.i += 1
            names = []
            if self.peek() != ":":
                names.append(self.var())
                while self.peek() == ",":
                    self.i += 1
                    names.append(self.var())
            self.take(":")
            body = self.formula()
            return (Exists if tok == "∃" else Forall)(tuple(names), body)
        if tok == "¬":
            self.i += 1
            return Not(self.formula())
        if tok == "⊤":
            self.i += 1
            return And(())
        if tok == "⊥":
            self.i += 1
            return Or(())
        if tok in ("∧", "∨"):
            self.i += 1
            self.take("(")
            inner = self.formula()
            self.take(")")
            return And((inner,)) if tok == "∧" else Or((inner,))
        if tok == "(":
            kind = self.kind.get(self.i)
            if kind == "=":
                self.i += 1
                lhs = self.term()
                self.take("=")
                rhs = self.term()
                self.take(")")
                return Equal(lhs, rhs)
            self.i += 1
            first = self.formula()
            if kind not in ("∧", "∨"):
                self.take(")")
                return first
            args = [first]
            while self.peek() == kind:
                self.i += 1
                args.append(self.formula())
            self.take(")")
            return And(tuple(args)) if kind == "∧" else Or(tuple(args))
        self._error(f"expected a formula, found {tok!r}")


def parse_sentence(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.i != len(p.toks):
        p._error(f"trailing input {p.peek()!r}")
    return f
