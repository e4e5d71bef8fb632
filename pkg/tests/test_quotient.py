import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locat.category import (
    FiniteCategory,
    Functor,
    check_functor,
    fcompose,
    make_category,
    monoid_category,
    terminal_category,
    validate_category,
    walking_isomorphism,
)
from locat.fractions import LeftFractions, equivalence_pairs, raw_precategory
from locat.quotient import (
    NotCongruence,
    NotConstantOnClasses,
    NotParallel,
    QuotientNotCategory,
    associating_quotient,
    cer,
    coarse,
    equality,
    is_cat_equiv_rel,
    qdotted,
    quotient_category,
    relation,
)
from locat.verify import enumerate_functors


def test_relation_requires_parallel(fixp):
    with pytest.raises(NotParallel):
        relation(fixp, [("f", "t")])


def test_coarse(arrow, fixp):
    assert coarse(arrow).pairs == equality(arrow).pairs
    extra = coarse(fixp).pairs - equality(fixp).pairs
    assert extra == {("f", "g"), ("g", "f")}
    empty = FiniteCategory((), {}, {}, {})
    assert coarse(empty).pairs == frozenset()


def test_is_cat_equiv_rel(fixp):
    assert is_cat_equiv_rel(equality(fixp))
    assert is_cat_equiv_rel(coarse(fixp))
    r = is_cat_equiv_rel(relation(fixp, [("f", "g")]))
    assert not r and r.kind == "NotReflexive"


def test_not_compatible():
    # two parallel loops a, b on one object, a∘a = a, b∘b = b, a∘b = a, b∘a = b
    c = monoid_category(
        ["a", "b"], {("a", "a"): "a", ("b", "b"): "b", ("a", "b"): "a", ("b", "a"): "b"}
    )
    assert validate_category(c)
    r = relation(c, [(f, f) for f in c.morphisms] + [("a", "1_0"), ("1_0", "a")])
    assert is_cat_equiv_rel(r).kind == "NotCompatible"
    closed = cer(c, r)
    assert is_cat_equiv_rel(closed)
    # b = b∘1 ~ b∘a = b, and a = a∘b ~ 1∘b = b, so everything collapses
    assert ("b", "1_0") in closed


def test_cer(fixp):
    eq = equality(fixp)
    assert cer(fixp, relation(fixp, [])).pairs == eq.pairs
    assert cer(fixp, coarse(fixp)).pairs == coarse(fixp).pairs
    assert cer(fixp, relation(fixp, [("f", "g")])).pairs == eq.pairs | {("f", "g"), ("g", "f")}


def test_quotient_category(fixp, arrow):
    q, proj = quotient_category(fixp, equality(fixp))
    assert q == fixp
    q, proj = quotient_category(fixp, cer(fixp, relation(fixp, [("f", "g")])))
    assert validate_category(q) and check_functor(proj)
    assert q.hom("X", "Y") == ("f",)
    assert proj("g") == "f"
    q, _ = quotient_category(arrow, coarse(arrow))
    assert q == arrow
    with pytest.raises(NotCongruence):
        quotient_category(fixp, relation(fixp, [("f", "g")]))


def test_qdotted(fixp):
    r = cer(fixp, relation(fixp, [("f", "g")]))
    q, proj = quotient_category(fixp, r)
    t = terminal_category()
    const = Functor(fixp, t, {x: "0" for x in fixp.objects}, {f: "1_0" for f in fixp.morphisms})
    assert check_functor(qdotted(r, const))
    # every functor out of the quotient is recovered from its restriction
    for G in enumerate_functors(q, walking_isomorphism()):
        assert qdotted(r, fcompose(G, proj)).same_maps(G)


def test_qdotted_requires_constant(fixp):
    r = cer(fixp, relation(fixp, [("f", "g")]))
    ident = Functor(fixp, fixp, {x: x for x in fixp.objects}, {f: f for f in fixp.morphisms})
    with pytest.raises(NotConstantOnClasses):
        qdotted(r, ident)


def test_associating_quotient_on_category(fixp):
    q, name_of = associating_quotient(fixp, equality(fixp))
    assert q == fixp
    assert all(name_of[f] == f for f in fixp.morphisms)


def test_associating_quotient_of_fraction_symbols(arrow):
    lf = LeftFractions(arrow, arrow.morphisms)
    pre = raw_precategory(lf)
    q, _ = associating_quotient(pre, relation(pre, equivalence_pairs(lf)), key=lf.key)
    assert len(q.objects) == 2 and len(q) == 4
    assert validate_category(q)


def test_associating_quotient_rejects_non_associative():
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}
    magma = monoid_category(["a", "b"], table)
    with pytest.raises(QuotientNotCategory) as err:
        associating_quotient(magma, equality(magma))
    assert err.value.law == "associativity"


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_cer_is_smallest_congruence(data):
    c = make_category(
        ["X", "Y", "Z"],
        {"f": ("X", "Y"), "g": ("X", "Y"), "t": ("Y", "Z"), "h": ("X", "Z"), "k": ("X", "Z")},
        {("t", "f"): "h", ("t", "g"): "k"},
    )
    parallel = [(u, v) for u in c.order for v in c.hom(*c.morphisms[u])]
    pairs = data.draw(st.lists(st.sampled_from(parallel), max_size=4))
    closed = cer(c, relation(c, pairs))
    assert is_cat_equiv_rel(closed)
    assert set(pairs) <= closed.pairs
    if ("f", "g") in closed:
        assert ("h", "k") in closed
