import random

from hypothesis import given, strategies as st

from operadkit.graded import (CIRC_UNIT, DOT_UNIT, CircElement, DotElement, GradedSet,
                              circ_compose, circ_power, distribute, dot_compose, dot_power,
                              element_from_json, element_to_json, graded_from_json,
                              graded_to_json, random_graded_set, reassociate_circ,
                              unassociate_circ)

from oracles import circ_counts, dot_counts

A2 = GradedSet((("a0",), ("a1",), ("a2",)))


def sizes(draw_counts):
    return GradedSet.from_levels([[f"g{n}.{k}" for k in range(c)] for n, c in enumerate(draw_counts)])


small_counts = st.lists(st.integers(0, 2), min_size=1, max_size=4)


def test_levels_above_bound_are_empty():
    assert A2[5] == ()
    assert "a3" not in A2
    assert A2.level_of("a2") == 2


def test_circ_unit_left_is_bijection():
    Y = GradedSet((("y0",), ("y1", "y1b"), (), ("y3",)))
    Z = circ_compose(CIRC_UNIT, Y, 3)
    assert Z.counts() == Y.counts()
    assert all(z.outer == "1o" and len(z.inners) == 1 for z in Z)


def test_circ_example_counts():
    X = GradedSet(((), (), ("x",)))
    Y = GradedSet((("p",), ("q",)))
    assert circ_compose(X, Y, 2).counts() == (1, 2, 1)


def test_assoc_circ_level_zero():
    assert len(circ_compose(A2, A2, 2)[0]) == 3
    assert circ_compose(A2, A2, 2).counts() == (3, 3, 4)


def test_dot_examples():
    assert dot_compose(A2, A2, 2).counts() == (1, 2, 3)
    assert dot_compose(DOT_UNIT, A2, 2).counts() == A2.counts()
    assert dot_compose(A2, GradedSet.empty(2), 2).counts() == (0, 0, 0)


def test_distribute_with_empty_factor():
    Z = GradedSet((("z0",), ("z1",)))
    fwd, bwd = distribute(A2, GradedSet.empty(2), Z, 2)
    assert fwd.source.counts() == (0, 0, 0)
    assert fwd.then(bwd).is_identity()


def test_distribute_assoc_counts():
    fwd, bwd = distribute(A2, A2, A2, 2)
    assert fwd.source.counts() == fwd.target.counts()
    assert fwd.then(bwd).is_identity() and bwd.then(fwd).is_identity()


@given(small_counts, small_counts, st.integers(0, 3))
def test_circ_counts_match_formula(xc, yc, L):
    assert list(circ_compose(sizes(xc), sizes(yc), L).counts()) == circ_counts(xc, yc, L)


@given(small_counts, small_counts, st.integers(0, 3))
def test_dot_counts_match_formula(xc, yc, L):
    assert list(dot_compose(sizes(xc), sizes(yc), L).counts()) == dot_counts(xc, yc, L)


@given(st.integers(0, 10_000))
def test_distribute_round_trip(seed):
    rng = random.Random(seed)
    X, Y, Z = (random_graded_set(rng, 3, 2, p) for p in "xyz")
    fwd, bwd = distribute(X, Y, Z, 3)
    assert fwd.then(bwd).is_identity() and bwd.then(fwd).is_identity()


@given(st.integers(0, 10_000))
def test_circ_reassociation_is_bijective(seed):
    rng = random.Random(seed)
    X, Y, Z = (random_graded_set(rng, 2, 2, p) for p in "xyz")
    left = circ_compose(circ_compose(X, Y, 4), Z, 2)
    right = circ_compose(X, circ_compose(Y, Z, 2), 2)
    image = {reassociate_circ(e, X, Y) for e in left}
    assert image == set(right)
    assert all(unassociate_circ(reassociate_circ(e, X, Y)) == e for e in left)


@given(st.integers(0, 10_000))
def test_dot_associative_and_unital(seed):
    rng = random.Random(seed)
    X, Y, Z = (random_graded_set(rng, 2, 2, p) for p in "xyz")
    left = dot_compose(dot_compose(X, Y, 2), Z, 2)
    right = dot_compose(X, dot_compose(Y, Z, 2), 2)
    flat_l = {(e.left.left, e.left.right, e.right) for e in left}
    flat_r = {(e.left, e.right.left, e.right.right) for e in right}
    assert flat_l == flat_r
    assert dot_compose(X, DOT_UNIT, 2).counts() == X.truncate(2).counts()


def test_powers():
    assert circ_power(A2, 0, 2).counts() == (0, 1, 0)
    assert circ_power(A2, 1, 2) == A2
    assert dot_power(A2, 0, 2).counts() == (1, 0, 0)
    assert dot_power(A2, 3, 2).counts() == (1, 3, 6)


def test_json_round_trip():
    X = circ_compose(A2, dot_compose(A2, A2, 2), 2)
    assert graded_from_json(graded_to_json(X)) == X
    e = CircElement("a", (DotElement("b", ("c", "d")),))
    assert element_from_json(element_to_json(e)) == e
