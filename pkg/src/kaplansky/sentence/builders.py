"""Sentences asserting that K[G] has a witness of a Kaplansky-type property
with every coefficient supported in a fixed finite set S.

Variables are named after the coefficients they stand for: ``x_i_j_s`` is
the coefficient of s in entry (i, j) of A, ``y_i_j_s`` the same for B; the
single-element variants use ``x_s`` and ``y_s``. Indices i, j are 1-based
and s is the group label.

Equations are taken literally. The diagonal equations "coefficient of 1_G
in (AB)_ii = 1" are always emitted, so when 1_G is not in S*S the sum is
empty and the equation reads ``0 = 1``; such a sentence is false in every
field.
"""

from __future__ import annotations

from ..errors import InvalidParameter
from ..group import FiniteGroup, Subset, check_same_group, product_set
from .syntax import ONE, ZERO, And, Equal, Exists, Formula, Mul, Not, Or, Var, ne, term_sum


def _check(group: FiniteGroup, support: Subset) -> None:
    check_same_group(group, support.group)
    if len(support) == 0:
        raise InvalidParameter("support set S must be nonempty")


def _pairs(group: FiniteGroup, support: Subset, g: int) -> list[tuple[int, int]]:
    """(s, t) in S x S with st = g, ascending."""
    return [(s, t) for s in support for t in support if group.mul(s, t) == g]


def build_psi_stable(group: FiniteGroup, d: int, support: Subset) -> Formula:
    """Exists A, B in Mat_d(K[G]) supported in S with AB = 1 and BA != 1."""
    _check(group, support)
    if d < 1:
        raise InvalidParameter("d must be >= 1")
    lab = group.label
    rng = range(1, d + 1)

    def x(i, j, s):
        return Var("x", (i, j, lab(s)))

    def y(i, j, s):
        return Var("y", (i, j, lab(s)))

    def coeff(u, v, i, j, g):
        # sum over k, then (s, t) with st = g
        return term_sum(Mul(u(i, k, s), v(k, j, t)) for k in rng for s, t in _pairs(group, support, g))

    square = product_set(support, support)

    def block(u, v):
        diag = [Equal(coeff(u, v, i, i, 0), ONE) for i in rng]
        off = [
            Equal(coeff(u, v, i, j, g), ZERO)
            for i in rng for j in rng for g in square
            if not (i == j and g == 0)
        ]
        return And(tuple(diag + off))

    p_part = block(x, y)
    q_part = block(y, x)
    variables = tuple(u(i, j, s) for u in (x, y) for i in rng for j in rng for s in support)
    return Exists(variables, And((p_part, Not(q_part))))


def _product_equations(group: FiniteGroup, support: Subset, u: str, v: str,
                       indices: list[int], rhs) -> list[Formula]:
    lab = group.label
    return [
        Equal(term_sum(Mul(Var(u, (lab(s),)), Var(v, (lab(t),))) for s, t in _pairs(group, support, g)),
              rhs(g))
        for g in indices
    ]


def _nonzero(group: FiniteGroup, support: Subset, u: str) -> Formula:
    return Or(tuple(ne(Var(u, (group.label(s),)), ZERO) for s in support))


def build_psi_unit(group: FiniteGroup, support: Subset) -> Formula:
    """Exists x, y supported in S with xy = yx = 1 and at least two nonzero x-coefficients.

    The non-triviality disjunction runs over unordered pairs s < t.
    """
    _check(group, support)
    lab = group.label
    idx = sorted(set(product_set(support, support)) | {0})

    def unit(g):
        return ONE if g == 0 else ZERO

    nontrivial = Or(tuple(
        And((ne(Var("x", (lab(s),)), ZERO), ne(Var("x", (lab(t),)), ZERO)))
        for s in support for t in support if s < t
    ))
    body = And((
        And(tuple(_product_equations(group, support, "x", "y", idx, unit))),
        And(tuple(_product_equations(group, support, "y", "x", idx, unit))),
        nontrivial,
    ))
    variables = tuple(Var(r, (lab(s),)) for r in ("x", "y") for s in support)
    return Exists(variables, body)


def build_psi_zero_divisor(group: FiniteGroup, support: Subset) -> Formula:
    """Exists nonzero x, y supported in S with xy = 0."""
    _check(group, support)
    lab = group.label
    idx = list(product_set(support, support))
    body = And((
        And(tuple(_product_equations(group, support, "x", "y", idx, lambda g: ZERO))),
        _nonzero(group, support, "x"),
        _nonzero(group, support, "y"),
    ))
    variables = tuple(Var(r, (lab(s),)) for r in ("x", "y") for s in support)
    return Exists(variables, body)


def build_psi_idempotent(group: FiniteGroup, support: Subset) -> Formula:
    """Exists x supported in S with x^2 = x, x != 0 and x != 1."""
    _check(group, support)
    lab = group.label

    def coeff(g):
        return Var("x", (lab(g),)) if g in support else ZERO

    idx = sorted(set(support) | set(product_set(support, support)))
    is_zero = And(tuple(Equal(Var("x", (lab(s),)), ZERO) for s in support))
    is_one = And(tuple(
        Equal(coeff(g), ONE if g == 0 else ZERO) for g in sorted(set(support) | {0})
    ))
    body = And((
        And(tuple(_product_equations(group, support, "x", "x", idx, coeff))),
        Not(is_zero),
        Not(is_one),
    ))
    return Exists(tuple(Var("x", (lab(s),)) for s in support), body)


PROPERTIES = ("stable", "unit", "zero-divisor", "idempotent")


def build_property(group: FiniteGroup, prop: str, support: Subset, d: int = 1) -> Formula:
    if prop == "stable":
        return build_psi_stable(group, d, support)
    builders = {"unit": build_psi_unit, "zero-divisor": build_psi_zero_divisor,
                "idempotent": build_psi_idempotent}
    if prop not in builders:
        raise InvalidParameter(f"unknown property {prop!r}")
    return builders[prop](group, support)
