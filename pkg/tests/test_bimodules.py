import random

import pytest
from hypothesis import given, strategies as st

from operadkit.bimodules import (Hochschild, check_augmented_faces, check_bimodule,
                                 check_end_self, check_simplicial, combine, compare_envelope,
                                 component_census, end_module_operad, envelope_free,
                                 hochschild, hochschild_envelope, hochschild_pi0, insert_unit, j_object,
                                 module_from_json, module_from_operad, module_to_json,
                                 multiply_all, nested_identity, pi0_j, split_last, verify_module)
from operadkit.coproduct import Coproduct
from operadkit.errors import SchemaError
from operadkit.graded import CircElement, GradedSet
from operadkit.table import associative_operad, endomorphism_set_operad

MAGMA = GradedSet(((), (), ("m",)))


def test_h0_of_assoc_at_level_one():
    A = associative_operad(1)
    H = hochschild(A, 0)
    assert len(H.degrees[0][1]) == 1
    assert {H.augmentation(x) for x in H.degrees[0][1]} == {"a1"}
    assert hochschild_pi0(H).ok


def test_simplicial_identities_small():
    for P in (associative_operad(1), associative_operad(2), endomorphism_set_operad([0, 1], 1)):
        H = hochschild(P, 1)
        rep = check_simplicial(H)
        assert rep.ok and rep.checked > 0


def test_augmented_faces_end_level_two():
    rep = check_augmented_faces(endomorphism_set_operad([0, 1], 2))
    assert rep.ok and rep.checked > 0 and rep.skipped > 0


def test_extra_degeneracy_then_first_face_is_identity():
    P = endomorphism_set_operad([0, 1], 1)
    H = hochschild(P, 2)
    for n in range(2):
        for x in H.degrees[n]:
            assert H.face(n + 1, 0, H.extra_degeneracy(n, x)) == x
    assert H.extra_degeneracy(0, nested_identity(P, 2)) == nested_identity(P, 3)


class SwappedFaces(Hochschild):
    def face(self, n, i, x):
        return super().face(n, n - i, x)


def test_swapped_faces_are_detected():
    P = endomorphism_set_operad([0, 1], 1)
    assert not check_simplicial(SwappedFaces(P, 2)).ok


def test_bimodule_laws():
    H = hochschild(endomorphism_set_operad([0, 1], 1), 1)
    assert check_bimodule(H, 0).ok and check_bimodule(H, 1).ok
    H2 = hochschild(associative_operad(2), 1)
    assert check_bimodule(H2, 0).ok


def test_split_last():
    A = associative_operad(2)
    x = nested_identity(A, 3)
    top, bottoms = split_last(A, x, 3)
    assert top == nested_identity(A, 2) and bottoms == ("a1",)


def test_envelope_degenerate_cases():
    A = associative_operad(2)
    plain = Coproduct([A, A], ["L", "R"])
    zero = hochschild_envelope(A, 0)
    for level in range(3):
        assert len(zero.normal_forms(level, 2)) == len(plain.normal_forms(level, 2))
    empty = envelope_free(A, GradedSet(((), (), ())), A)
    assert empty.census(1, 2)["F"] == plain.census(1, 2)["F"]


@pytest.mark.parametrize("n,level", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_envelope_matches_oracle(n, level):
    rep = compare_envelope(associative_operad(1), n, level, 2)
    assert rep.ok and rep.data["match"]


def test_pi0_j_magma():
    J = j_object(MAGMA, 1, 3, 3)
    rep = pi0_j(J)
    assert rep.ok
    assert rep.data["classes_by_level"] == [0, 1, 1, 2]
    comp = component_census(J)
    assert comp.ok
    # the component over the bare leaf is a single point in each degree
    assert sum(1 for z in J.degrees[0] if J.multiply(z).label is None) == 1


def test_pi0_j_without_generators():
    J = j_object(GradedSet(((), (), ())), 1, 2, 2)
    rep = pi0_j(J)
    assert rep.ok and rep.data["classes_by_level"] == [0, 1, 0]


def test_endomorphism_operads():
    A = associative_operad(2)
    E = end_module_operad(A, module_from_operad(A), 2)
    assert [len(E.maps[n]) for n in range(3)] == [1, 1, 1]
    End = endomorphism_set_operad([0, 1], 2)
    E2 = end_module_operad(End, module_from_operad(End), 1)
    assert len(E2.maps[1]) == 4
    assert check_end_self(A, 2).ok


def test_module_round_trip_and_faults(end2_L2):
    M = module_from_operad(end2_L2)
    assert verify_module(M).ok
    back = module_from_json(module_to_json(M), end2_L2)
    assert back.action == M.action
    with pytest.raises(SchemaError):
        module_from_json({"carrier": {}}, end2_L2)
    key = (end2_L2.resolve("max"), 1, end2_L2.identity)
    M.action = dict(M.action)
    M.action[key] = end2_L2.resolve("min")
    assert not verify_module(M).ok


def random_nested(P, m, n, rng):
    """A random element of level ``n`` in ``P^{∘m}``."""
    if m == 1:
        return rng.choice(P[n])
    i = rng.randint(0, P.bound)
    if i == 0 and n > 0:
        i = 1
    parts = [0] * i
    for _ in range(n):
        parts[rng.randrange(i)] += 1
    if any(p > P.bound for p in parts):
        return random_nested(P, m, n, rng)
    return CircElement(rng.choice(P[i]), tuple(random_nested(P, m - 1, p, rng) for p in parts))


@given(st.integers(0, 10_000), st.integers(0, 2), st.integers(0, 2))
def test_faces_undo_degeneracies(seed, n, level):
    rng = random.Random(seed)
    P = endomorphism_set_operad([0, 1], 2)
    m = n + 2
    x = random_nested(P, m, level, rng)
    for j in range(1, m):
        s = insert_unit(P, x, j)
        assert combine(P, s, j, m + 1) == x and combine(P, s, j + 1, m + 1) == x
    y = insert_unit(P, x, 0)
    assert combine(P, y, 1, m + 1) == x
    assert multiply_all(P, x, m) == multiply_all(P, y, m + 1)
