"""Exact arithmetic in GF(p^k).

An element is stored as an ``int`` in ``range(q)`` that encodes its
coefficient vector over GF(p) in base p, constant term first: the vector
``(c0, c1, ..., c_{k-1})`` is the code ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``.
So 0 and 1 are the field's zero and one, and for k = 1 codes are residues.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import BudgetExceeded, InvalidParameter, NoEmbedding, SpecSyntaxError

DEFAULT_FIELD_BUDGET = 1 << 16
# Cayley tables are built for fields up to this size.
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


# Dense polynomials over GF(p) are lists of coefficients, constant term first.

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = _poly_trim(list(a))
    k = len(m) - 1
    while len(a) > k:
        lead = a[-1]
        shift = len(a) - 1 - k
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    """Monic degree-``deg`` polynomials, lexicographic with constant term first."""
    for coeffs in itertools.product(range(p), repeat=deg):
        yield list(coeffs) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (constant term first)."""
    for f in _monic_polys(p, k):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    k: int
    modulus: tuple[int, ...]
    _tables: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def order(self) -> int:
        return self.p ** self.k

    q = order

    zero = 0
    one = 1

    @property
    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FiniteField({self.name})"

    def __getstate__(self):
        return (self.p, self.k, self.modulus)

    def __setstate__(self, state):
        p, k, modulus = state
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_tables", {})

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    # conversions

    def vector(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            x, c = divmod(x, self.p)
            out.append(c)
        return tuple(out)

    def from_vector(self, v: Sequence[int]) -> int:
        if len(v) > self.k:
            v = _poly_mod(v, self.modulus, self.p)
        code = 0
        for c in reversed(list(v)):
            code = code * self.p + c % self.p
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p^k)."""
        return n % self.p

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.order:
            raise InvalidParameter(f"{x!r} is not an element of {self.name}")
        return x

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        va, vb = self.vector(a), self.vector(b)
        return self.from_vector([(x + y) % self.p for x, y in zip(va, vb)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_vector([-x % self.p for x in self.vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        va, vb = self.vector(a), self.vector(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        return self.from_vector(_poly_mod([c % self.p for c in prod], self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if self.order <= _TABLE_LIMIT:
            return self.mul_table()[a][b]
        return self._mul_poly(a, b)

    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        t = self._tables.get("mul")
        if t is None:
            if self.k == 1:
                t = tuple(tuple(a * b % self.p for b in self.elements) for a in self.elements)
            else:
                t = tuple(tuple(self._mul_poly(a, b) for b in self.elements) for a in self.elements)
            self._tables["mul"] = t
        return t

    def add_table(self) -> tuple[tuple[int, ...], ...]:
        t = self._tables.get("add")
        if t is None:
            t = tuple(tuple(self.add(a, b) for b in self.elements) for a in self.elements)
            self._tables["add"] = t
        return t

    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.neg(a) for a in self.elements)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, x: int, m: int = 1) -> int:
        """x^(p^m); the m-th power of the Frobenius automorphism."""
        if m < 0:
            raise InvalidParameter("Frobenius exponent must be >= 0")
        for _ in range(m):
            x = self.pow(x, self.p)
        return x

    def format(self, x: int) -> str:
        if self.k == 1:
            return str(x)
        terms = []
        for i, c in enumerate(self.vector(x)):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(terms) or "0"


def make_field(p: int, k: int = 1, budget: int = DEFAULT_FIELD_BUDGET) -> FiniteField:
    if not is_prime(p):
        raise InvalidParameter(f"characteristic {p} is not prime")
    if k < 1:
        raise InvalidParameter(f"degree must be >= 1, got {k}")
    if p ** k > budget:
        raise BudgetExceeded(p ** k, budget, f"GF({p}^{k})")
    return FiniteField(p, k, canonical_modulus(p, k))


def frobenius(f: FiniteField, x: int, m: int = 1) -> int:
    return f.frobenius(x, m)


def fixed_subfield(f: FiniteField, m: int) -> list[int]:
    """All x with x^(p^m) = x, in code order."""
    if m < 1:
        raise InvalidParameter("m must be >= 1")
    return [x for x in f.elements if f.frobenius(x, m) == x]


def eval_poly(f: FiniteField, coeffs: Sequence[int], x: int) -> int:
    """Horner evaluation of a polynomial whose coefficients are codes in f."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = f.add(f.mul(acc, x), c)
    return acc


@dataclass(frozen=True)
class Embedding:
    """Ring homomorphism GF(p^m) -> GF(p^k) fixed by the image of ``t``."""

    source: FiniteField
    target: FiniteField
    generator_image: int
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.table))


def embed(small: FiniteField, big: FiniteField) -> Embedding:
    if small.p != big.p:
        raise NoEmbedding(f"characteristic mismatch: {small.name} vs {big.name}")
    if big.k % small.k:
        raise NoEmbedding(f"{small.name} does not embed in {big.name}: {small.k} does not divide {big.k}")
    # prime-field coefficients embed as themselves
    mod = [big.from_int(c) for c in small.modulus]
    roots = [r for r in big.elements if eval_poly(big, mod, r) == 0]
    if not roots:
        raise AssertionError("an irreducible of degree m | k always splits in GF(p^k)")
    root = min(roots, key=big.vector)
    table = tuple(
        eval_poly(big, [big.from_int(c) for c in small.vector(x)], root)
        for x in small.elements
    )
    return Embedding(small, big, root, table)


_FIELD_RE = re.compile(r"\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*\Z")


def parse_field_spec(text: str, budget: int = DEFAULT_FIELD_BUDGET) -> FiniteField:
    """``GF(p)`` or ``GF(p^k)``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise SpecSyntaxError(f"bad field spec {text!r}; expected GF(p) or GF(p^k)", 0)
    return make_field(int(m.group(1)), int(m.group(2) or 1), budget)
