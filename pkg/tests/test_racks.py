from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yangbaxter import algebras as A
from yangbaxter import racks as R
from yangbaxter.errors import InputError, NotNilpotent
from yangbaxter.linalg import vec_add, vector

RACKS = [R.trivial_rack(3), R.dihedral_rack(3), R.dihedral_rack(5), R.conjugation_rack()]
THREE_RACKS = [R.trivial_3rack(2), R.z4_module_3rack(), R.conjugation_3rack(), R.rack_to_3rack(R.dihedral_rack(3))]


def test_rack_axioms_and_set_solutions():
    for r in RACKS:
        assert R.verify_finite_rack(r).passed
        assert R.verify_set_solution(R.set_ybe_solution(r)).passed
    for t in THREE_RACKS:
        assert R.verify_finite_3rack(t).passed
        assert R.verify_finite_rack(R.threerack_to_rack(t)).passed


def test_set_solution_shape():
    s = R.set_ybe_solution(R.dihedral_rack(3))
    assert s(0, 1) == (1, 2)


def test_mutations_break_braid_relation():
    muts = R.rack_mutations(R.conjugation_rack(), count=20, seed=0)
    assert len(muts) == 20
    for (x, y, v), bad in muts:
        assert not R.verify_finite_rack(bad).passed
        rep = R.verify_set_solution(R.set_ybe_solution(bad))
        assert not rep.passed, (x, y, v)
        assert rep.first.witness is not None


def test_table_validation():
    with pytest.raises(InputError):
        R.FiniteRack(2, ((0, 5), (1, 1)))


def test_exp3_nilpotent_branches():
    e = R.ExpRack(A.nilpotent3())
    b = A.nilpotent3().basis
    h = Fraction(1, 2)
    assert R.exp3_apply(e, b(2), b(2), b(2)) == (h, 1, 1)
    assert R.exp3_apply(e, b(1), b(2), b(2)) == (1, 1, 0)
    assert R.exp3_apply(e, b(0), b(2), b(2)) == b(0)
    assert R.exp3_apply(e, b(2), b(1), b(2)) == b(2)


def test_not_nilpotent_is_typed():
    e = R.ExpRack(A.two_dim_leibniz(4))
    with pytest.raises(NotNilpotent) as info:
        R.kinyon_apply(e, (1, 0), (0, 1))
    assert "e2" in str(info.value)


vec3 = st.tuples(*[st.integers(-2, 2)] * 3).map(vector)
vec2 = st.tuples(*[st.integers(-2, 2)] * 2).map(vector)


@settings(max_examples=100, deadline=None)
@given(vec2, vec2, vec2)
def test_kinyon_rack_self_distributive_on_e3(x, y, z):
    e = R.ExpRack(A.two_dim_leibniz(3))
    k = lambda a, b: R.kinyon_apply(e, a, b)
    assert k(k(x, y), z) == k(k(x, z), k(y, z))


@settings(max_examples=100, deadline=None)
@given(vec2, vec2, vec2)
def test_kinyon_rack_self_distributive_on_e1(x, y, z):
    e = R.ExpRack(A.two_dim_leibniz(1))
    k = lambda a, b: R.kinyon_apply(e, a, b)
    assert k(k(x, y), z) == k(k(x, z), k(y, z))


@settings(max_examples=100, deadline=None)
@given(vec3, vec3, vec3, vec3, vec3)
def test_exp3_ternary_self_distributive(x, y, z, u, v):
    e = R.ExpRack(A.nilpotent3())
    t = lambda a, b, c: R.exp3_apply(e, a, b, c)
    assert t(t(x, y, z), u, v) == t(t(x, u, v), t(y, u, v), t(z, u, v))


@settings(max_examples=50, deadline=None)
@given(vec3, vec3, vec3)
def test_exp3_action_is_invertible(x, y, z):
    e = R.ExpRack(A.nilpotent3())
    assert e.inverse_operator(y, z).apply(R.exp3_apply(e, x, y, z)) == x


def test_phi_intertwines_on_seeded_samples():
    vecs = R.seeded_vectors(3, 400)
    samples = [tuple(vecs[4 * i:4 * i + 4]) for i in range(100)]
    rep = R.phi_intertwine_check(A.nilpotent3(), samples)
    assert rep.passed and rep.checked == 100


def test_diagonal_phi_fails_on_nilpotent_example():
    vecs = R.seeded_vectors(3, 400)
    samples = [tuple(vecs[4 * i:4 * i + 4]) for i in range(100)]
    rep = R.phi_intertwine_check(A.nilpotent3(), samples, phi=R.phi_diagonal)
    assert not rep.passed and rep.first.witness is not None


def test_swapped_phi_fails():
    vecs = R.seeded_vectors(2, 400)
    samples = [tuple(vecs[4 * i:4 * i + 4]) for i in range(100)]
    rep = R.phi_intertwine_check(A.final_3leibniz_2d(), samples, phi=R.phi_swapped)
    assert not rep.passed


def test_seeded_vectors_deterministic():
    assert R.seeded_vectors(3, 5, seed=1) == R.seeded_vectors(3, 5, seed=1)
    assert vec_add((1, 2), (3, 4)) == (4, 6)
