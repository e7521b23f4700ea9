from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wittcalc.models.rings import (
    Involution,
    IntegerModRing,
    IntegerRing,
    LocalizedIntegers,
    PolynomialRing,
    ProductRing,
    check_involution,
    check_ring_axioms,
    construct_ring,
    cyclic_burnside_ring,
    divide_exact,
    is_p_torsion_free,
    ring_eval,
)
from wittcalc.utils.errors import (
    BadInvolution,
    BadModulus,
    DescriptorError,
    NoUnit,
    NonAssociative,
    NotDivisible,
    OwnerMismatch,
    ZeroDivisorDenominator,
)

from conftest import SAMPLES, SEED


@given(st.integers(), st.integers())
def test_integer_arithmetic_matches_python(a, b):
    z = IntegerRing()
    assert (z(a) + z(b)).payload == a + b
    assert (z(a) * z(b)).payload == a * b
    assert (-z(a)).payload == -a


@given(st.integers(), st.integers(min_value=2, max_value=50))
def test_residues_are_canonical(a, n):
    ring = IntegerModRing(n)
    assert ring(a).payload == a % n


def test_modulus_below_two_is_rejected():
    with pytest.raises(BadModulus):
        IntegerModRing(1)


def test_mixing_rings_raises():
    with pytest.raises(OwnerMismatch):
        IntegerRing()(1) + IntegerModRing(5)(1)


def test_a_z2_multiplication(a_z2):
    x = a_z2.generator("x")
    assert x * x == 2 * x
    assert a_z2.one() * x == x
    assert (x - 1) * (x - 1) == 1


def test_free_ring_from_descriptor_matches_builtin(a_z2):
    ring = construct_ring({"type": "free", "basis": ["1", "x"], "mul": {"x*x": [["x", 2]]}})
    assert ring == a_z2
    x = ring.generator("x")
    assert x * x == ring.element({"x": 2})


def test_non_associative_structure_constants_are_rejected():
    # x*x = 1 + x, x*y = y, y*y = x is not associative on (x, y, y)
    with pytest.raises((NonAssociative, NoUnit)):
        construct_ring({"type": "free", "basis": ["1", "x", "y"],
                        "mul": {"x*x": [["1", 1], ["x", 1]], "x*y": [["y", 1]], "y*y": [["x", 1]]}})


def test_missing_unit_is_rejected():
    with pytest.raises(NoUnit):
        construct_ring({"type": "free", "basis": ["a", "b"], "mul": {"a*a": [["a", 1]]}})


@pytest.mark.parametrize(
    "descriptor",
    (
        {"type": "mod"},
        {"type": "polynomial"},
        {"type": "free", "basis": ["1", "1"]},
    ),
)
def test_incomplete_descriptors_fail_validation(descriptor):
    with pytest.raises(ValueError):
        construct_ring(descriptor)


def test_divide_exact_reports_residue(a_z2):
    x = a_z2.generator("x")
    e = 3 + 8 * x
    with pytest.raises(NotDivisible) as info:
        divide_exact(e, 3)
    assert info.value.residue == 8 * x
    assert divide_exact(6 + 9 * x, 3) == 2 + 3 * x


def test_divide_by_zero_divisor(a_z2):
    x = a_z2.generator("x")
    with pytest.raises(ZeroDivisorDenominator):
        divide_exact(x, x - 2)


def test_localization_inverts_primes_other_than_p():
    ring = LocalizedIntegers(3)
    assert divide_exact(ring(1), 2).payload == Fraction(1, 2)
    with pytest.raises(NotDivisible):
        divide_exact(ring(1), 3)


def test_localized_free_ring_divides_by_two():
    ring = cyclic_burnside_ring(2, local_prime=3)
    x = ring.generator("x")
    half = divide_exact(ring.one(), 2)
    assert 2 * half == 1
    assert ring.to_json((x * half).payload) == {"x": "1/2"}


def test_polynomial_division(poly_uv):
    u, ubar = poly_uv.variable("u"), poly_uv.variable("ubar")
    assert divide_exact(u * u * ubar, u) == u * ubar
    with pytest.raises(NotDivisible):
        divide_exact(u + 1, 2)


def test_product_ring_componentwise(integers):
    ring = ProductRing(integers, IntegerModRing(4))
    a = ring.parse([3, 3])
    assert ring.components(a * a) == (integers(9), IntegerModRing(4)(1))


def test_torsion_is_decided_structurally(a_z2):
    assert is_p_torsion_free(a_z2, 3)
    assert not is_p_torsion_free(IntegerModRing(9), 3)
    assert is_p_torsion_free(IntegerModRing(10), 3)


def test_ring_eval_dispatch(integers):
    assert ring_eval(integers(3), "sub", integers(5)) == -2
    assert ring_eval(integers(3), "neg") == -3
    with pytest.raises(DescriptorError):
        ring_eval(integers(3), "pow", integers(2))


def test_sampled_axioms_hold(a_z2, poly_uv):
    assert check_ring_axioms(a_z2, SAMPLES, SEED)
    assert check_ring_axioms(poly_uv, SAMPLES, SEED)
    assert check_ring_axioms(LocalizedIntegers(5), SAMPLES, SEED)


def test_variable_swap_is_an_involution(poly_uv):
    tau = Involution.from_variable_swap(poly_uv, {"u": "ubar"})
    u = poly_uv.variable("u")
    assert tau(u) == poly_uv.variable("ubar")
    assert tau(tau(u * u + 3)) == u * u + 3
    check_involution(tau, SAMPLES, SEED)


def test_signed_permutation_must_be_multiplicative(a_z2):
    with pytest.raises(BadInvolution):
        # x -> -x is not multiplicative since x^2 = 2x
        Involution.from_signed_permutation(a_z2, [(0, 1), (1, -1)])


def test_product_swap_needs_equal_factors(integers):
    with pytest.raises(BadInvolution):
        Involution.product_swap(ProductRing(integers, IntegerModRing(3)))
    swap = Involution.product_swap(ProductRing(integers, integers))
    assert swap(swap.owner.parse([1, 2])) == swap.owner.parse([2, 1])


def test_descriptor_round_trip(a_z2):
    assert construct_ring(a_z2.descriptor()) == a_z2
    assert construct_ring(PolynomialRing(["t"]).descriptor()) == PolynomialRing(["t"])
