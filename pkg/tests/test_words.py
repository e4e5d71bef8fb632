import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locat.category import (
    Functor,
    cyclic_group,
    fix_p,
    identity_functor,
    loc_compatible,
    make_category,
    terminal_category,
    walking_isomorphism,
)
from locat.fractions import NotLocCompatible
from locat.words import (
    LocalizedPresentation,
    RequiresFractions,
    WordSyntaxError,
    bwd,
    check_certificate,
    format_word,
    fwd,
    groupoid_completion,
    gz_dotted,
    gz_graph,
    gz_proj,
    gz_relation_instances,
    parse_word,
    reduce_word,
    saturation,
    word,
    words_equal,
    words_up_to,
)


def inclusion_into_iso(arrow):
    return Functor(arrow, walking_isomorphism(), {"0": "0", "1": "1"}, {"1_0": "1_0", "1_1": "1_1", "f": "f"})


def test_graph(arrow):
    g = gz_graph(arrow, arrow.morphisms)
    assert len(g.vertices) == 2 and len(g.edges) == 6
    assert g.edges[bwd("f")] == ("1", "0")
    assert len(gz_graph(arrow, ()).edges) == 3


def test_relation_instances():
    one = terminal_category()
    insts = gz_relation_instances(one, {"1_0"})
    assert sorted(i.family for i in insts) == [1, 2, 3, 4]


def test_relation_instance_counts(arrow):
    counts = {}
    for inst in gz_relation_instances(arrow, arrow.morphisms):
        counts[inst.family] = counts.get(inst.family, 0) + 1
    assert counts == {1: 2, 2: 3, 3: 3, 4: 4}


def test_parse_and_format(fixp, fixp_sigma):
    w = parse_word(fixp, fixp_sigma, "f.t.~t")
    assert w == word("X", fwd("f"), fwd("t"), bwd("t"))
    assert format_word(w) == "f.t.~t"
    assert parse_word(fixp, fixp_sigma, "@Y") == word("Y")
    for bad in ("f.f", "~f", "q", "f..t", "@W"):
        with pytest.raises(WordSyntaxError):
            parse_word(fixp, fixp_sigma, bad)


def test_reduce(arrow):
    s = arrow.morphisms
    assert reduce_word(arrow, s, word("0", fwd("1_0"))) == word("0")
    assert reduce_word(arrow, s, word("0", fwd("f"), bwd("f"))) == word("0")
    assert reduce_word(arrow, s, word("1", bwd("f"), fwd("f"))) == word("1")


def test_reduce_composes(fixp, fixp_sigma):
    assert reduce_word(fixp, fixp_sigma, word("X", fwd("f"), fwd("t"))) == word("X", fwd("h"))


def test_reduction_not_confluent(fixp, fixp_sigma):
    w = word("X", fwd("f"), fwd("t"), bwd("t"))
    left = reduce_word(fixp, fixp_sigma, w)
    right = reduce_word(fixp, fixp_sigma, w, rightmost=True)
    assert left == word("X", fwd("h"), bwd("t"))
    assert right == word("X", fwd("f"))


def test_equal_reflexive(fixp, fixp_sigma):
    w = word("X", fwd("g"), fwd("t"))
    v = words_equal(fixp, fixp_sigma, w, w)
    assert v and v.certificate == []


def test_equal_cancellation(arrow):
    w1, w2 = word("0", fwd("f"), bwd("f")), word("0")
    v = words_equal(arrow, {"f"}, w1, w2)
    assert v.verdict == "Equal" and len(v.certificate) == 1
    assert v.certificate[0].instance.family == 3
    assert check_certificate(arrow, {"f"}, w1, w2, v.certificate)


def test_equal_needs_expansion(fixp, fixp_sigma):
    w1, w2 = word("X", fwd("h"), bwd("t")), word("X", fwd("f"))
    v = words_equal(fixp, fixp_sigma, w1, w2)
    assert v.verdict == "Equal" and v.method == "bfs"
    assert check_certificate(fixp, fixp_sigma, w1, w2, v.certificate)
    # f and g become equal too
    v = words_equal(fixp, fixp_sigma, word("X", fwd("f")), word("X", fwd("g")))
    assert v and check_certificate(fixp, fixp_sigma, word("X", fwd("f")), word("X", fwd("g")), v.certificate)


def test_distinct_and_mismatch(arrow, fixp):
    v = words_equal(fixp, fixp.identities, word("X", fwd("f")), word("X", fwd("g")))
    assert v.verdict == "Distinct"
    v = words_equal(arrow, arrow.morphisms, word("0", fwd("f")), word("0"))
    assert v.verdict == "NotProvenEqual" and v.method == "mismatch"


def test_distinct_with_unclosed_sigma():
    z2 = cyclic_group(2)
    v = words_equal(z2, (), word("0", fwd("z1")), word("0"))
    assert v.verdict == "Distinct"
    assert words_equal(z2, (), word("0", fwd("z1"), fwd("z1")), word("0"))


def test_budget_exhaustion_without_bridge(arrow):
    pres = LocalizedPresentation(arrow, {"f"}, use_fractions=False)
    v = pres.equal(word("0", fwd("f")), word("0", fwd("f"), bwd("f"), fwd("f")), budget=10)
    assert v  # one cancellation suffices
    z2 = cyclic_group(2)
    pres = LocalizedPresentation(z2, (), use_fractions=False)
    v = pres.equal(word("0", fwd("z1")), word("0"), budget=200)
    assert v.verdict == "NotProvenEqual" and v.budget_exhausted


def test_certificate_checker_rejects_forgery(fixp, fixp_sigma):
    w1, w2 = word("X", fwd("h"), bwd("t")), word("X", fwd("f"))
    cert = words_equal(fixp, fixp_sigma, w1, w2).certificate
    assert not check_certificate(fixp, fixp_sigma, w1, word("X", fwd("g")), cert)
    assert not check_certificate(fixp, fixp_sigma, w1, w2, cert[:-1])


def test_gz_proj(arrow):
    proj = gz_proj(arrow, arrow.morphisms)
    assert proj("1_0") == word("0")
    assert proj("f") == word("0", fwd("f"))
    s = arrow.morphisms
    assert words_equal(arrow, s, word("0", fwd("f"), bwd("f")), word("0"))
    assert words_equal(arrow, s, word("1", bwd("f"), fwd("f")), word("1"))


def test_loc_compatible(arrow):
    assert loc_compatible(identity_functor(arrow), arrow.identities)
    assert loc_compatible(inclusion_into_iso(arrow), arrow.morphisms)
    r = loc_compatible(identity_functor(arrow), {"f"})
    assert not r and r.witness == ("f",)


def test_gz_dotted(arrow):
    ev = gz_dotted(arrow, arrow.identities, identity_functor(arrow))
    assert ev(word("0", fwd("f"))) == "f"
    ev = gz_dotted(arrow, arrow.morphisms, inclusion_into_iso(arrow))
    assert ev(word("1", bwd("f"))) == "g"
    assert ev(word("1", bwd("f"), fwd("f"))) == "1_1"
    with pytest.raises(NotLocCompatible):
        gz_dotted(arrow, {"f"}, identity_functor(arrow))


def test_gz_dotted_respects_relations(corpus):
    # the evaluator for the projection is constant on every relation instance
    for name, c, sigma in corpus[:20]:
        pres = LocalizedPresentation(c, sigma)
        ev = pres.bridge
        for inst in gz_relation_instances(c, sigma):
            lhs, rhs = word(inst.at, *inst.lhs), word(inst.at, *inst.rhs)
            assert ev(lhs) == ev(rhs), (name, inst)


def test_saturation(arrow):
    assert saturation(arrow, arrow.identities) == arrow.identities
    assert saturation(arrow, arrow.morphisms) == set(arrow.morphisms)
    with pytest.raises(RequiresFractions):
        saturation(arrow, {"f"})


def test_saturation_contains_sigma(corpus):
    for name, c, sigma in corpus:
        assert sigma <= saturation(c, sigma), name


def test_groupoid_completion(arrow):
    g, proj = groupoid_completion(terminal_category())
    assert len(g) == 1
    g, proj = groupoid_completion(arrow)
    assert len(g.objects) == 2 and len(g) == 4
    discrete = make_category(["a", "b"], {})
    g, _ = groupoid_completion(discrete)
    assert g == discrete


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_reduction_preserves_class(data):
    c = fix_p()
    sigma = c.identities | {"t"}
    words = words_up_to(c, sigma, 4)
    w = data.draw(st.sampled_from(words))
    pres = LocalizedPresentation(c, sigma)
    reduced, steps = pres.reduce(w)
    assert pres.bridge(reduced) == pres.bridge(w)
    assert len(reduced.edges) <= len(w.edges)
    assert check_certificate(c, sigma, w, reduced, steps)
