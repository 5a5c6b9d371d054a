import pytest
from hypothesis import given, strategies as st

from operadkit.cosimplicial import (DotHochschildA, build_cosimplicial, check_cosimplicial,
                                    check_naturality, compare_hochschild, cosimplicial_to_json,
                                    discrete_limit, represented_map)
from operadkit.acceptance import left_zero_monoid_multiplication
from operadkit.bimodules import check_simplicial
from operadkit.errors import TruncationExceeded
from operadkit.table import (Multiplication, OperadMap, associative_operad,
                             endomorphism_set_operad)

from oracles import center, codegeneracy_formula, coface_formula, function_id

# (unit, product) pairs on {0, 1} that make a monoid
MONOIDS = {
    "max": (0, max),
    "min": (1, min),
    "xor": (0, lambda a, b: a ^ b),
    "and": (1, lambda a, b: a & b),
}


def host(L=3):
    return endomorphism_set_operad([0, 1], L)


def multiplication(O, name):
    eps, mu = MONOIDS[name]
    return Multiplication(O, function_id(lambda: eps, 0), function_id(mu, 2)), eps, mu


def test_operators_match_formulas_for_max():
    O = host()
    m, eps, mu = multiplication(O, "max")
    c = build_cosimplicial(m, 3)
    for n in range(3):
        for f in O[n]:
            fn = lambda *xs, f=f: O.codec.S[O.codec.evaluate(f, xs)]
            for i in range(n + 2):
                assert c.cofaces[(n, i)][f] == function_id(coface_formula(mu, fn, n, i), n + 1)
    for n in range(1, 4):
        for f in O[n]:
            fn = lambda *xs, f=f: O.codec.S[O.codec.evaluate(f, xs)]
            for j in range(n):
                assert c.codegeneracies[(n, j)][f] == function_id(codegeneracy_formula(eps, fn, j), n - 1)


def test_first_codegeneracy_of_product_is_identity():
    O = host()
    m, _, _ = multiplication(O, "max")
    c = build_cosimplicial(m, 2)
    assert c.codegeneracies[(2, 0)][m.mu] == O.identity
    assert c.codegeneracies[(2, 1)][m.mu] == O.identity


def test_assoc_operad_is_terminal():
    A = associative_operad(3)
    m = Multiplication.named(A, "eps", "mu")
    c = build_cosimplicial(m, 3)
    assert all(len(lv) == 1 for lv in c.levels)
    assert check_cosimplicial(c).ok
    assert discrete_limit(c) == ["a0"]


def test_degree_above_truncation_raises():
    with pytest.raises(TruncationExceeded):
        build_cosimplicial(Multiplication.named(associative_operad(2), "eps", "mu"), 3)


@pytest.mark.parametrize("name", sorted(MONOIDS))
def test_limit_is_the_center(name):
    O = host(2)
    m, _, mu = multiplication(O, name)
    c = build_cosimplicial(m, 1)
    lim = discrete_limit(c)
    expected = [function_id(lambda x=x: x, 0) for x in center([0, 1], mu)]
    assert sorted(lim) == sorted(expected)


def test_left_zero_limit_is_the_unit():
    m = left_zero_monoid_multiplication()
    lim = discrete_limit(build_cosimplicial(m, 1))
    assert lim == [m.eps]
    assert center(["e", "a", "b"], lambda x, y: y if x == "e" else x) == ["e"]


def test_swapped_cofaces_fail():
    O = host()
    m, _, _ = multiplication(O, "max")
    c = build_cosimplicial(m, 3)
    # d^0 and d^2 on O(1) differ for a non-symmetric f; swapping them breaks an identity
    c.cofaces[(1, 0)], c.cofaces[(1, 2)] = c.cofaces[(1, 2)], c.cofaces[(1, 0)]
    assert not check_cosimplicial(c).ok


def test_naturality():
    A = associative_operad(3)
    O = host()
    m, _, _ = multiplication(O, "max")
    mA = Multiplication.named(A, "eps", "mu")
    images = {A[0][0]: m.eps, A[1][0]: O.identity, A[2][0]: m.mu,
              A[3][0]: function_id(lambda a, b, c: max(a, b, c), 3)}
    F = OperadMap(A, O, images)
    assert check_naturality(F, mA, m, 3).ok
    wrong = OperadMap(A, O, dict(images, **{A[2][0]: function_id(min, 2)}))
    assert not check_naturality(wrong, mA, m, 3).ok


def test_dot_hochschild_of_assoc():
    H = DotHochschildA(2, 3)
    assert check_simplicial(H).ok
    assert H.generator(2) == (0, 1, 1, 0)
    assert H.face(1, 1, (0, 1, 0)) == (0, 1)


@pytest.mark.parametrize("name", ["max", "xor"])
def test_hochschild_comparison(name):
    m, _, _ = multiplication(host(2), name)
    rep = compare_hochschild(m, 2)
    assert rep.ok
    assert rep.data["bimodule_maps"] == rep.data["O_sizes"] == [2, 4, 16]


def test_represented_map_on_generator():
    m, _, _ = multiplication(host(2), "max")
    for f in m.host[2]:
        assert represented_map(m, f, DotHochschildA.generator(2)) == f


def test_json_is_stable():
    m, _, _ = multiplication(host(2), "max")
    a = cosimplicial_to_json(build_cosimplicial(m, 2))
    b = cosimplicial_to_json(build_cosimplicial(m, 2))
    assert a == b and a["schema"] == "operadkit.cosimplicial/1"


@given(st.sampled_from(sorted(MONOIDS)), st.integers(1, 3))
def test_identities_for_every_monoid(name, N):
    m, _, _ = multiplication(host(3), name)
    assert check_cosimplicial(build_cosimplicial(m, N)).ok
