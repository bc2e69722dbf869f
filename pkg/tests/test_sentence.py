import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaplansky.errors import BudgetExceeded, InvalidParameter, SpecSyntaxError
from kaplansky.field import make_field
from kaplansky.group import Subset, direct_product, make_cyclic, make_symmetric, product_set
from kaplansky.groupring import (probe_stable_finiteness, search_idempotents, search_units,
                                 search_zero_divisors)
from kaplansky.sentence import (ONE, ZERO, Add, And, Equal, Exists, Forall, Mul, Neg, Not, Or,
                                SentenceStats, Var, build_property, build_psi_idempotent,
                                build_psi_stable, build_psi_unit, build_psi_zero_divisor,
                                check_sentence, evaluate, parse_sentence, pretty_print)
from kaplansky.sentence.syntax import atoms, matrix_of
from oracles import interpret

F2, F3, F4, F5 = make_field(2), make_field(3), make_field(2, 2), make_field(5)
C1, C2, C3, C4 = (make_cyclic(n) for n in (1, 2, 3, 4))
KLEIN = direct_product(C2, C2)
S3 = make_symmetric(3)
SMALL_GROUPS = [C1, C2, C3, C4, KLEIN]


def x(*idx):
    return Var("x", idx)


def y(*idx):
    return Var("y", idx)


def test_single_element_support_collapses():
    f = build_psi_stable(C3, 1, Subset.of(C3, [0]))
    a, b = x(1, 1, "e"), y(1, 1, "e")
    expected = Exists((a, b), And((And((Equal(Mul(a, b), ONE),)), Not(And((Equal(Mul(b, a), ONE),))))))
    assert f == expected


def test_c2_p_part_equations():
    f = build_psi_stable(C2, 1, Subset.all(C2))
    p_part = matrix_of(f).args[0]
    assert [e.rhs for e in p_part.args] == [ONE, ZERO]


def test_variable_count_example():
    assert SentenceStats.of(build_psi_stable(C3, 2, Subset.all(C3))).variables == 24


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("size", [1, 2, 3])
def test_stats_over_c4(d, size):
    for chosen in itertools.combinations(range(1, 4), size - 1):
        sup = Subset.of(C4, (0,) + chosen)
        f = build_psi_stable(C4, d, sup)
        st_ = SentenceStats.of(f)
        sq = len(product_set(sup, sup))
        assert st_.variables == 2 * d * d * size
        assert st_.p_equalities == st_.q_equalities == d * d * sq
        assert parse_sentence(pretty_print(f)) == f


def test_identity_outside_square_gives_literal_zero_equals_one():
    sup = Subset.of(C4, [1])  # S*S = {g2}
    f = build_psi_stable(C4, 1, sup)
    p_part = matrix_of(f).args[0]
    assert p_part.args[0] == Equal(ZERO, ONE)
    assert SentenceStats.of(f).p_equalities == 1 + 1
    for fld in (F2, F3, F4):
        assert evaluate(f, fld) is False


def test_var_naming():
    assert pretty_print(Exists((x(1, 1, "e"),), Equal(x(1, 1, "e"), ZERO))) == "∃ x_1_1_e :\n  (x_1_1_e = 0)"
    assert Var.from_name("x_1_1_e") == x(1, 1, "e")


def test_empty_support_rejected():
    for build in (build_psi_unit, build_psi_zero_divisor, build_psi_idempotent):
        with pytest.raises(InvalidParameter):
            build(C2, Subset.of(C2, []))
    with pytest.raises(InvalidParameter):
        build_psi_stable(C2, 1, Subset.of(C2, []))


def test_parse_errors():
    with pytest.raises(SpecSyntaxError):
        parse_sentence("∃")
    with pytest.raises(SpecSyntaxError) as exc:
        parse_sentence("∃ x :\n  (x = )")
    assert exc.value.line == 2


def test_check_sentence():
    with pytest.raises(InvalidParameter):
        check_sentence(Equal(x(1), ZERO))
    with pytest.raises(InvalidParameter):
        check_sentence(Exists((x(1),), Exists((x(1),), Equal(x(1), ZERO))))


# evaluation

def test_evaluate_examples():
    assert evaluate(build_psi_stable(C2, 1, Subset.all(C2)), F2) is False
    assert evaluate(build_psi_idempotent(C3, Subset.all(C3)), F2) is True
    assert evaluate(build_psi_stable(C1, 1, Subset.all(C1)), F5) is False
    assert evaluate(build_psi_idempotent(C3, Subset.of(C3, [0])), F5) is False
    assert evaluate(build_psi_zero_divisor(C3, Subset.of(C3, [0])), F3) is False


def test_idempotent_c3_depends_on_field():
    # over GF(3) the only idempotents of K[C3] are 0 and 1 (brute force)
    psi = build_psi_idempotent(C3, Subset.all(C3))
    assert evaluate(psi, F3) is False
    assert not any(not w.trivial for w in search_idempotents(C3, F3, Subset.all(C3)))
    assert evaluate(psi, F4) is True


def test_evaluate_budget_and_jobs():
    psi = build_psi_stable(S3, 1, Subset.all(S3))
    with pytest.raises(BudgetExceeded):
        evaluate(psi, F3, budget=1000)
    f = build_psi_idempotent(C3, Subset.all(C3))
    assert evaluate(f, F2, jobs=2) == evaluate(f, F2) is True
    g = Forall((x(1),), Exists((y(1),), Equal(Add(x(1), y(1)), ZERO)))
    assert evaluate(g, F3, jobs=2) is True


def _interpretable_sentences():
    yield build_psi_stable(C2, 1, Subset.all(C2)), F3
    yield build_psi_stable(C3, 1, Subset.of(C3, [0, 1])), F2
    yield build_psi_unit(C2, Subset.all(C2)), F3
    yield build_psi_zero_divisor(C2, Subset.all(C2)), F2
    yield build_psi_idempotent(C3, Subset.all(C3)), F4
    yield build_psi_idempotent(KLEIN, Subset.of(KLEIN, [0, 3])), F3
    yield Forall((x(1),), Or((Equal(x(1), ZERO), Exists((y(1),), Equal(Mul(x(1), y(1)), ONE))))), F4
    yield Forall((x(1),), Exists((y(1),), Equal(Mul(y(1), y(1)), x(1)))), F3
    yield Exists((x(1),), Equal(Neg(x(1)), Add(x(1), ONE))), F5


@pytest.mark.parametrize("f,fld", list(_interpretable_sentences()))
def test_evaluate_matches_tree_walk(f, fld):
    assert evaluate(f, fld) == interpret(f, fld)


EQUIVALENCE_GRID = [
    (g, fld, 1, Subset.all(g)) for g in (C1, C2, C3, C4, KLEIN) for fld in (F2, F3)
] + [
    (C2, F2, 2, Subset.all(C2)),
    (C4, F2, 2, Subset.of(C4, [0, 2])),
    (S3, F2, 1, Subset.all(S3)),
    (S3, F3, 1, Subset.of(S3, [0, 1, 3])),
    (C3, F4, 1, Subset.all(C3)),
]


@pytest.mark.parametrize("group,fld,d,sup", EQUIVALENCE_GRID)
def test_sentence_truth_equals_probe(group, fld, d, sup):
    psi = build_psi_stable(group, d, sup)
    assert evaluate(psi, fld) == probe_stable_finiteness(group, fld, d, sup).found


VARIANT_GRID = [(g, fld) for g in SMALL_GROUPS for fld in (F2, F3)]


@pytest.mark.parametrize("group,fld", VARIANT_GRID)
def test_variants_agree_with_searches(group, fld):
    full = Subset.all(group)
    assert evaluate(build_psi_unit(group, full), fld) == any(not w.trivial for w in search_units(group, fld, full))
    assert evaluate(build_psi_idempotent(group, full), fld) == any(
        not w.trivial for w in search_idempotents(group, fld, full))
    assert evaluate(build_psi_zero_divisor(group, full), fld) == bool(search_zero_divisors(group, fld, full))


@pytest.mark.parametrize("group,fld", [(C4, F2), (KLEIN, F3), (C3, F3)])
def test_variants_on_proper_supports(group, fld):
    for size in (1, 2):
        for chosen in itertools.combinations(group.elements, size):
            sup = Subset.of(group, chosen)
            assert evaluate(build_psi_zero_divisor(group, sup), fld) == bool(
                search_zero_divisors(group, fld, sup))
            assert evaluate(build_psi_idempotent(group, sup), fld) == any(
                not w.trivial for w in search_idempotents(group, fld, sup))


# printing and parsing

ALL_BUILT = [build_property(g, prop, sup, d)
             for g in (C2, C3, KLEIN, S3)
             for sup in (Subset.all(g), Subset.of(g, [0]), Subset.of(g, [1 % g.order]))
             for prop, d in (("stable", 1), ("stable", 2), ("unit", 1), ("zero-divisor", 1),
                             ("idempotent", 1))]


def test_round_trip_on_built_sentences():
    for f in ALL_BUILT:
        text = pretty_print(f)
        assert parse_sentence(text) == f
        assert pretty_print(parse_sentence(text)) == text


NAMES = [x(1), x(2), y(1), Var("z", (1, "g"))]


def terms(depth):
    leaf = st.sampled_from([ZERO, ONE] + NAMES)
    if depth == 0:
        return leaf
    sub = terms(depth - 1)
    return st.one_of(leaf, st.builds(Neg, sub), st.builds(Add, sub, sub), st.builds(Mul, sub, sub))


def formulas(depth):
    atom = st.builds(Equal, terms(2), terms(2))
    if depth == 0:
        return atom
    sub = formulas(depth - 1)
    args = st.lists(sub, min_size=0, max_size=3).map(tuple)
    return st.one_of(atom, st.builds(Not, sub), st.builds(And, args), st.builds(Or, args))


@st.composite
def sentences(draw):
    body = draw(formulas(3))
    inner = [v for v in NAMES if draw(st.booleans())]
    outer = [v for v in NAMES if v not in inner]
    if inner:
        q = draw(st.sampled_from([Exists, Forall]))
        body = q(tuple(inner), body)
    wrapped = And((body, Equal(ZERO, ZERO))) if draw(st.booleans()) else body
    return Exists(tuple(outer), wrapped) if outer else wrapped


@settings(max_examples=300, deadline=None)
@given(sentences())
def test_round_trip_random(f):
    check_sentence(f)
    assert parse_sentence(pretty_print(f)) == f


@settings(max_examples=60, deadline=None)
@given(sentences(), st.sampled_from([F2, F3, F4]))
def test_evaluate_random_against_tree_walk(f, fld):
    assert evaluate(f, fld) == interpret(f, fld)


def test_stats_text():
    text = SentenceStats.of(build_psi_stable(C2, 1, Subset.all(C2))).to_text()
    assert "variables=4" in text.splitlines()
    assert atoms(Equal(ZERO, ONE)) == 1
