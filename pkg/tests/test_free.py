import pytest
from hypothesis import given, strategies as st

from operadkit.errors import OperadError
from operadkit.free import (TRIVIAL, LabeledTree, check_labeling, corolla, enumerate_labeled,
                            free_operad_graded, graft, graft_at, labeled_to_dot,
                            operad_law_failures, pointed_normalize)
from operadkit.graded import GradedSet

from oracles import labeled_tree_count

MAGMA = GradedSet(((), (), ("m",)))


def test_corollas():
    X = GradedSet((("c",), (), ("x", "y", "z")))
    t = corolla("x", 2)
    assert repr(t.shape()) == "(2;e,e)"
    assert (t.height, t.level, t.branches) == (1, 2, 1)
    n0 = corolla("c", 0)
    assert (n0.level, n0.branches) == (0, 1)
    assert len({corolla(x, 2) for x in X[2]}) == 3
    check_labeling(t, X)


def test_graft_examples():
    b = corolla("y", 2)
    assert graft(TRIVIAL, [b]) == b
    x = corolla("x", 2)
    assert graft(x, [TRIVIAL, TRIVIAL]) == x
    g = graft(x, [b, TRIVIAL])
    assert repr(g.shape()) == "(2;(2;e,e),e)"
    assert g.labels() == {"x", "y"} and g.level == 3
    with pytest.raises(OperadError):
        graft(x, [b])


def test_free_levels():
    assert [len(enumerate_labeled(MAGMA, n)) for n in range(1, 5)] == [1, 1, 2, 5]
    empty = GradedSet(((), (), ()))
    assert enumerate_labeled(empty, 1) == [TRIVIAL]
    assert enumerate_labeled(empty, 2) == []
    unary = GradedSet(((), ("u",)))
    assert len(enumerate_labeled(unary, 1, max_branch=3)) == 4
    with pytest.raises(OperadError):
        enumerate_labeled(unary, 1)


@pytest.mark.parametrize("arity_counts", [(0, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 2), (1, 1, 0, 1)])
def test_counts_match_recursive_oracle(arity_counts):
    levels = [[f"x{a}.{k}" for k in range(c)] for a, c in enumerate(arity_counts)]
    X = GradedSet.from_levels(levels)
    for level in range(5):
        trees = enumerate_labeled(X, level, 3)
        for b in range(4):
            assert sum(1 for t in trees if t.branches == b) == labeled_tree_count(arity_counts, level, b)


def test_pointed_normalize_examples():
    assert pointed_normalize(corolla("p", 1), "p") == TRIVIAL
    t = corolla("x", 2)
    assert pointed_normalize(t, "p") == t
    assert pointed_normalize(LabeledTree("p", [t]), "p") == t


def test_laws_exhaustive_small():
    X = GradedSet((("c",), ("u",), ("m",)))
    trees = [t for n in range(5) for t in enumerate_labeled(X, n, 3)]
    assert operad_law_failures(trees, 3) == []


def labeled_trees(X):
    leaf = st.just(TRIVIAL)
    gens = [(x, n) for n in range(X.level_bound + 1) for x in X[n]]

    def extend(kids):
        return st.sampled_from(gens).flatmap(
            lambda g: st.lists(kids, min_size=g[1], max_size=g[1]).map(lambda cs: LabeledTree(g[0], cs)))
    return st.recursive(leaf, extend, max_leaves=6)


SMALL = GradedSet((("c",), ("u",), ("m",)))


@given(labeled_trees(SMALL), labeled_trees(SMALL), st.data())
def test_graft_additive_and_associative(a, b, data):
    if a.level == 0:
        return
    i = data.draw(st.integers(1, a.level))
    ab = graft_at(a, i, b)
    assert ab.branches == a.branches + b.branches
    assert ab.level == a.level + b.level - 1
    c = data.draw(labeled_trees(SMALL))
    if b.level:
        j = data.draw(st.integers(1, b.level))
        assert graft_at(ab, i + j - 1, c) == graft_at(a, i, graft_at(b, j, c))


@given(labeled_trees(GradedSet((("c",), ("p", "u"), ("m",)))), st.data())
def test_pointed_normalize_commutes_with_grafting(a, data):
    bs = [data.draw(labeled_trees(GradedSet((("c",), ("p", "u"), ("m",))))) for _ in range(a.level)]
    lhs = pointed_normalize(graft(a, bs), "p")
    rhs = pointed_normalize(graft(pointed_normalize(a, "p"), [pointed_normalize(b, "p") for b in bs]), "p")
    assert lhs == rhs
    assert "p" not in lhs.labels()


def test_graded_and_dot():
    G = free_operad_graded(MAGMA, 4)
    assert G.counts() == (0, 1, 1, 2, 5)
    assert "digraph" in labeled_to_dot(enumerate_labeled(MAGMA, 3)[0])
