import random

import pytest
from hypothesis import given, strategies as st

from operadkit.coproduct import (Coproduct, FreeFactor, chain, check_confluence,
                                 check_coproduct_operad, check_embeddings, check_uniqueness,
                                 check_universal, parse_word, word_string)
from operadkit.errors import SchemaError, TruncationExceeded
from operadkit.free import TRIVIAL, LabeledTree, corolla
from operadkit.graded import GradedSet
from operadkit.table import (associative_operad, cyclic2_monoid, endomorphism_set_operad,
                             idempotent_monoid)

from oracles import alternating_words


@pytest.fixture(scope="module")
def idem():
    M = idempotent_monoid()
    return Coproduct([M, M], ["P", "Q"])


def test_normalize_examples(idem):
    w = chain([("P", "a"), ("P", "a"), ("Q", "1"), ("Q", "a")])
    assert word_string(idem.normalize(w)) == "a_P·a_Q"
    alt = chain([("P", "a"), ("Q", "a"), ("P", "a")])
    assert idem.normalize(alt) == alt
    assert idem.normalize(corolla(("P", "1"), 1)) == TRIVIAL


def test_compose_examples(idem):
    u = chain([("P", "a"), ("Q", "a")])
    v = chain([("Q", "a")])
    assert idem.compose(u, [v]) == u
    assert idem.compose(TRIVIAL, [u]) == u
    pa, qa = idem.embed("P", "a"), idem.embed("Q", "a")
    assert idem.compose_at(pa, 1, qa) == chain([("P", "a"), ("Q", "a")])


def test_census_examples(idem):
    c = idem.census(1, 2)
    assert (c["T"][2], c["C"][2], c["F"][1], c["F"][2]) == (16, 14, 3, 5)
    assert c["F"][0] == 1 and c["recursion_holds"]
    A = associative_operad(1)
    assert Coproduct([A, A], ["P", "Q"]).census(1, 2)["F"] == [1, 1, 1]


@pytest.mark.parametrize("make", [idempotent_monoid, cyclic2_monoid,
                                  lambda: endomorphism_set_operad([0, 1], 1).level_one_part()])
def test_normal_forms_are_reduced_alternating_words(make):
    M = make()
    cp = Coproduct([M, M], ["P", "Q"])
    c = cp.census(1, 3)
    u = len(M[1]) - 1
    for k in range(4):
        assert c["normal_forms_by_beta"][k] == alternating_words(u, u, k)
    assert c["recursion_holds"] and c["F_matches_normal_forms"]


def test_uniqueness_and_laws(idem):
    assert check_uniqueness(idem, 1, 3).ok
    E1 = endomorphism_set_operad([0, 1], 1).level_one_part()
    assert check_uniqueness(Coproduct([E1, E1], ["P", "Q"]), 1, 3).ok
    assert check_coproduct_operad(idem, 1, 3).ok
    assert check_embeddings(idem).ok


def test_mixed_levels():
    A = associative_operad(2)
    E = endomorphism_set_operad([0, 1], 2)
    cp = Coproduct([A, E], ["P", "Q"])
    assert check_uniqueness(cp, 1, 2).ok
    assert check_coproduct_operad(cp, 2, 2).ok
    assert check_embeddings(cp).ok


def test_free_factor_empty_and_pointed():
    A = associative_operad(2)
    empty = FreeFactor(GradedSet(((), (), ())))
    c1 = Coproduct([A, empty, A], ["L", "Z", "R"]).census(1, 2)
    c2 = Coproduct([A, A], ["L", "R"]).census(1, 2)
    assert c1["F"] == c2["F"]
    pointed = FreeFactor(GradedSet(((), ("*",))), basepoint="*")
    c3 = Coproduct([A, pointed, A], ["L", "Z", "R"]).census(0, 2)
    assert c3["F"] == Coproduct([A, A], ["L", "R"]).census(0, 2)["F"]


def test_universal_evaluation():
    # the NOT function is a homomorphism out of Z/2, so it evaluates a_P·a_Q to the identity
    Z2 = cyclic2_monoid()
    cp = Coproduct([Z2, Z2], ["P", "Q"])
    R = endomorphism_set_operad([0, 1], 1).level_one_part()
    f = {"1": R.identity, "a": R.resolve("not")}
    maps = {"P": f, "Q": f}
    assert cp.eval_universal(maps, R, corolla(("P", "a"), 1)) == R.resolve("not")
    assert cp.eval_universal(maps, R, chain([("P", "a"), ("Q", "a")])) == R.identity
    assert check_universal(cp, maps, R, cp.words(1, 3)).ok


def test_parse_word(idem):
    assert parse_word(idem, "a_P·a_P·1_Q·a_Q") == chain([("P", "a"), ("P", "a"), ("Q", "1"), ("Q", "a")])
    with pytest.raises(SchemaError):
        parse_word(idem, "a_X")
    E = endomorphism_set_operad([0, 1], 2)
    cp = Coproduct([E, E], ["P", "Q"])
    w = parse_word(cp, "max_P(e, not_Q(not_Q))")
    assert cp.normalize(w) == corolla(("P", E.resolve("max")), 2)


def test_truncated_intermediate_label_raises():
    # the merged label would sit at level 3 although the word has level 2
    E = endomorphism_set_operad([0, 1], 2)
    A = associative_operad(2)
    cp = Coproduct([E, A], ["P", "Q"])
    mx = E.resolve("max")
    w = LabeledTree(("P", mx), (TRIVIAL, LabeledTree(("P", mx), (corolla(("Q", "a0"), 0), TRIVIAL))))
    assert w.level == 2
    with pytest.raises(TruncationExceeded):
        cp.normalize(w)


@given(st.integers(0, 10_000))
def test_rewrite_order_does_not_matter(seed):
    E = endomorphism_set_operad([0, 1], 2)
    A = associative_operad(2)
    cp = Coproduct([E, A], ["P", "Q"])
    rng = random.Random(seed)
    words = []
    for _ in range(5):
        w = rng.choice(cp.words(rng.randint(0, 2), 3))
        try:
            cp.normalize(w)
        except TruncationExceeded:
            continue
        words.append(w)
    assert check_confluence(cp, words, seed).ok
    for w in words:
        nf = cp.normalize(w)
        assert cp.is_normal(nf) and cp.normalize(nf) == nf
        assert nf.branches <= w.branches and nf.level == w.level
