import itertools
import math
import random

import pytest
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from kaplansky.errors import BudgetExceeded, InvalidParameter, NoEmbedding, SpecSyntaxError
from kaplansky.field import (canonical_modulus, embed, fixed_subfield, frobenius, make_field,
                             parse_field_spec)

SMALL = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1)]


def sympy_mul(f, a, b):
    """Oracle: multiply through sympy's dense GF(p)[t] arithmetic (highest degree first)."""
    pa = list(reversed(f.vector(a)))
    pb = list(reversed(f.vector(b)))
    mod = list(reversed(f.modulus))
    r = gf_rem(gf_mul(pa, pb, f.p, ZZ), mod, f.p, ZZ)
    return f.from_vector(list(reversed([int(c) for c in r])))


def test_small_examples():
    f2 = make_field(2, 1)
    assert f2.add(1, 1) == 0
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 1).inv(2) == 2


def test_gf4_modulus_is_unique_irreducible_quadratic():
    irreducible = [c for c in itertools.product(range(2), repeat=2)
                   if gf_irreducible_p([1, c[1], c[0]], 2, ZZ)]
    assert irreducible == [(1, 1)]


@pytest.mark.parametrize("p,k", SMALL)
def test_canonical_modulus_is_lexicographically_first_irreducible(p, k):
    mod = canonical_modulus(p, k)
    assert mod[-1] == 1 and len(mod) == k + 1
    assert gf_irreducible_p(list(reversed(mod)), p, ZZ)
    for coeffs in itertools.product(range(p), repeat=k):
        cand = tuple(coeffs) + (1,)
        if cand == mod:
            break
        assert not gf_irreducible_p(list(reversed(cand)), p, ZZ)


def test_k1_uses_t_modulus():
    assert make_field(5, 1).modulus == (0, 1)


@pytest.mark.parametrize("p,k", [pk for pk in SMALL if pk[0] ** pk[1] <= 81])
def test_field_axioms_exhaustive(p, k):
    f = make_field(p, k)
    els = list(f.elements)
    assert len(els) == p ** k
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(a, b) == sympy_mul(f, a, b)
    for a, b, c in itertools.product(els, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in els:
        assert f.add(a, 0) == a and f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("p,k", [(2, 5), (2, 6), (3, 5), (5, 3), (7, 2)])
def test_field_axioms_sampled(p, k):
    f = make_field(p, k)
    rng = random.Random(p * 100 + k)
    for _ in range(300):
        a, b, c = (rng.randrange(f.order) for _ in range(3))
        assert f.mul(a, b) == sympy_mul(f, a, b)
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_make_field_errors():
    with pytest.raises(InvalidParameter):
        make_field(4, 1)
    with pytest.raises(InvalidParameter):
        make_field(2, 0)
    with pytest.raises(BudgetExceeded):
        make_field(2, 20, budget=1000)


def test_frobenius_examples():
    f = make_field(2, 2)
    t = f.from_vector([0, 1])
    assert frobenius(f, t, 0) == t
    # t^2 = t + 1 mod t^2 + t + 1
    assert frobenius(f, t, 1) == f.from_vector([1, 1])
    for p, k in SMALL:
        g = make_field(p, k)
        assert all(g.frobenius(x, k) == x for x in g.elements)


@pytest.mark.parametrize("p,k", SMALL)
def test_frobenius_is_ring_automorphism(p, k):
    f = make_field(p, k)
    rng = random.Random(7)
    pairs = (itertools.product(f.elements, repeat=2) if f.order <= 27
             else [(rng.randrange(f.order), rng.randrange(f.order)) for _ in range(200)])
    for a, b in pairs:
        assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
        assert f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b))
    images = {f.frobenius(x) for x in f.elements}
    assert len(images) == f.order
    assert fixed_subfield(f, 1) == list(range(p))


def test_fixed_subfield_examples():
    assert len(fixed_subfield(make_field(2, 4), 2)) == 4
    f9 = make_field(3, 2)
    assert fixed_subfield(f9, 1) == [0, 1, 2]
    assert len(fixed_subfield(f9, 2)) == 9


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_fixed_subfield_cardinality(p, k, m):
    f = make_field(p, k)
    fixed = fixed_subfield(f, m)
    assert len(fixed) == p ** math.gcd(m, k)
    # closed under the ring operations
    s = set(fixed)
    for a, b in itertools.product(fixed, repeat=2):
        assert f.add(a, b) in s and f.mul(a, b) in s


def _assert_homomorphism(emb):
    src, dst = emb.source, emb.target
    assert emb(0) == 0 and emb(1) == 1
    assert len(set(emb.table)) == src.order
    for a, b in itertools.product(src.elements, repeat=2):
        assert emb(src.add(a, b)) == dst.add(emb(a), emb(b))
        assert emb(src.mul(a, b)) == dst.mul(emb(a), emb(b))


def test_embed_examples():
    e = embed(make_field(2, 1), make_field(2, 2))
    assert e.as_dict() == {0: 0, 1: 1}
    f4, f16 = make_field(2, 2), make_field(2, 4)
    e = embed(f4, f16)
    r = e.generator_image
    assert f16.add(f16.add(f16.mul(r, r), r), 1) == 0
    _assert_homomorphism(e)
    with pytest.raises(NoEmbedding):
        embed(f4, make_field(2, 3))
    with pytest.raises(NoEmbedding):
        embed(make_field(3, 1), f4)


def test_embed_picks_smallest_root():
    f4, f16 = make_field(2, 2), make_field(2, 4)
    e = embed(f4, f16)
    roots = [x for x in f16.elements if f16.add(f16.add(f16.mul(x, x), x), 1) == 0]
    assert e.generator_image == min(roots, key=f16.vector)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m,k", [(1, 2), (1, 4), (2, 4), (1, 3), (3, 3), (2, 2)])
def test_all_small_embeddings_are_homomorphisms(p, m, k):
    _assert_homomorphism(embed(make_field(p, m), make_field(p, k)))


@pytest.mark.parametrize("p,m,k", [(2, 2, 2), (3, 1, 2), (2, 1, 3), (3, 2, 2)])
def test_embed_round_trip_on_prime_field(p, m, k):
    base, mid, top = make_field(p, 1), make_field(p, m), make_field(p, m * k)
    direct = embed(base, top)
    two_step = embed(mid, top)
    first = embed(base, mid)
    for x in base.elements:
        assert two_step(first(x)) == direct(x)


def test_embedded_image_is_fixed_subfield():
    f4, f16 = make_field(2, 2), make_field(2, 4)
    assert sorted(embed(f4, f16).table) == fixed_subfield(f16, 2)


def test_parse_field_spec():
    assert parse_field_spec("GF(2)") == make_field(2)
    assert parse_field_spec("GF(3^2)") == make_field(3, 2)
    with pytest.raises(SpecSyntaxError):
        parse_field_spec("F_4")
    with pytest.raises(InvalidParameter):
        parse_field_spec("GF(4)")
