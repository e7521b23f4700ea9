import pytest
from hypothesis import given, strategies as st

from wittcalc.models.burnside import cyclic_burnside_norm
from wittcalc.models.polymap import (
    PolyMap,
    check_decomposition,
    compose,
    congruence_check,
    cross_effect,
    degree_test,
    diagonal_cross_effect,
    homogeneous_decompose,
    integer_homomorphism,
    power_map,
    product,
    ring_homomorphism,
    witt_congruence,
)
from wittcalc.models.rings import IntegerRing, LocalizedIntegers, burnside_z2_ring
from wittcalc.services import fixtures
from wittcalc.utils.errors import DegreeViolation, NonInvertibleFactorial, OwnerMismatch

from conftest import SAMPLES, SEED


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_second_cross_effect_of_squaring(a, b):
    square = power_map(IntegerRing(), 2)
    assert cross_effect(square, [a, b]) == 2 * a * b


@given(st.integers(-20, 20))
def test_diagonal_cross_effect_of_cube(a):
    cube = power_map(IntegerRing(), 3)
    assert diagonal_cross_effect(cube, 3, a) == 6 * a ** 3
    assert diagonal_cross_effect(cube, 4, a) == 0


def test_degree_test_reports_witness():
    square = power_map(IntegerRing(), 2)
    assert degree_test(square, 2, SAMPLES, SEED)
    low = degree_test(square, 1, SAMPLES, SEED)
    assert not low
    assert len(low.witness) == 2


def test_decomposition_of_the_z2_norm():
    f = cyclic_burnside_norm(2, local_prime=fixtures.HOMDECOMP_PRIME)
    pieces = homogeneous_decompose(f, SAMPLES, SEED)
    assert [phi.degree_bound for phi in pieces] == [0, 1, 2]
    assert pieces[0](1).is_zero()
    for degree, expected in fixtures.HOMDECOMP_PIECES.items():
        assert pieces[degree](1).to_json() == expected
    assert all(check_decomposition(f, pieces, SAMPLES, SEED))


def test_decomposition_needs_invertible_factorials():
    with pytest.raises(NonInvertibleFactorial):
        homogeneous_decompose(power_map(IntegerRing(), 2), SAMPLES, SEED)


def test_decomposition_rejects_a_wrong_degree_bound():
    ring = LocalizedIntegers(3)
    understated = PolyMap(ring, ring, lambda a: a * a, 1, name="sq")
    with pytest.raises(DegreeViolation):
        homogeneous_decompose(understated, SAMPLES, SEED)


def test_composition_and_product_degrees():
    ring = IntegerRing()
    square, cube = power_map(ring, 2), power_map(ring, 3)
    assert compose(square, cube).degree_bound == 6
    assert compose(square, cube)(2) == 64
    assert product(square, cube).degree_bound == 5
    assert product(square, cube)(2) == 32
    with pytest.raises(OwnerMismatch):
        compose(square, integer_homomorphism(burnside_z2_ring()))


@pytest.mark.parametrize("p", (3, 5))
def test_congruence_holds_below_the_prime(p):
    assert congruence_check(power_map(IntegerRing(), 2), p, 1, SAMPLES, SEED)
    assert congruence_check(power_map(IntegerRing(), 2), p, 2, 5, SEED)


def test_congruence_fails_for_the_degree_p_norm():
    result = congruence_check(cyclic_burnside_norm(3), 3, 1, points=[(0, 1)])
    assert not result
    assert result.samples == 1


def test_congruence_needs_an_odd_prime():
    with pytest.raises(ValueError):
        congruence_check(power_map(IntegerRing(), 2), 2)


def test_witt_congruence_residue():
    norm = cyclic_burnside_norm(3)
    result = witt_congruence(norm, 3, 0, 1)
    assert not result
    assert result.details["residue"].to_json() == {"x": "8"}
    assert witt_congruence(power_map(IntegerRing(), 2), 3, 4, 5)


def test_ring_homomorphism_evaluates_monomials(poly_uv):
    z = IntegerRing()
    h = ring_homomorphism(poly_uv, z, {"u": z(2), "ubar": z(3)})
    assert h(poly_uv.parse("u*ubar + u**2 + 1")) == 11
    assert integer_homomorphism(burnside_z2_ring())(4) == burnside_z2_ring().from_int(4)
