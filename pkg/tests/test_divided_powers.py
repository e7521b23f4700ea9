import pytest
from hypothesis import given, strategies as st

from wittcalc.models.burnside import cyclic_burnside_norm
from wittcalc.models.divided_powers import (
    cross_effect_expansion,
    divided_relations_check,
    extend_homogeneous,
    gamma_n,
    shuffle,
    sym_power,
)
from wittcalc.models.polymap import power_map
from wittcalc.models.rings import IntegerRing, PolynomialRing
from wittcalc.utils.errors import NotHomogeneous

from conftest import SAMPLES, SEED


@given(st.integers(-20, 20))
def test_gamma_over_the_integers(a):
    z = IntegerRing()
    assert gamma_n(z(a), 2).coords == ({(0, 0): a * a} if a else {})
    assert shuffle(gamma_n(z(a), 1), gamma_n(z(a), 1)) == 2 * gamma_n(z(a), 2)


def test_sym_power_shape(a_z2):
    power = sym_power(a_z2, 2)
    assert power.rank == 3
    assert power.multisets == [(0, 0), (0, 1), (1, 1)]
    assert sym_power(a_z2, 2) is power


def test_sym_power_limits(a_z2):
    with pytest.raises(ValueError):
        sym_power(a_z2, 7)
    with pytest.raises(TypeError):
        sym_power(PolynomialRing(["t"]), 2)


def test_divided_power_relations(a_z2):
    results = divided_relations_check(sym_power(a_z2, 2), SAMPLES, SEED, strict=True)
    assert all(results)
    assert {r.name for r in results} >= {"γ_0(a) = 1", "γ_n(a+b) = Σ γ_i(a)γ_{n-i}(b)"}


def test_cross_effect_expansion(a_z2):
    x = a_z2.generator("x")
    total = cross_effect_expansion(2, a_z2, [1, x])
    assert total == shuffle(gamma_n(a_z2.one(), 1), gamma_n(x, 1))
    with pytest.raises(ValueError):
        cross_effect_expansion(3, a_z2, [1, x])


def test_extension_of_squaring(a_z2):
    square = power_map(a_z2, 2)
    extension = extend_homogeneous(square, 3, SAMPLES, SEED)
    x = a_z2.generator("x")
    assert extension(gamma_n(x + 3, 2)) == (x + 3) * (x + 3)
    assert all(extension.check(SAMPLES, SEED))


def test_extension_needs_a_large_prime(a_z2):
    with pytest.raises(ValueError):
        extend_homogeneous(power_map(a_z2, 3), 3)


def test_extension_needs_a_homogeneous_map():
    with pytest.raises(NotHomogeneous):
        extend_homogeneous(cyclic_burnside_norm(2), 3, SAMPLES, SEED)
