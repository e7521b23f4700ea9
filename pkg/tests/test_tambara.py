import dataclasses

import pytest

from wittcalc.models.rings import Involution, IntegerRing
from wittcalc.models.tambara import (
    TambaraMorphism,
    TwistedWittRing,
    burnside_tambara,
    check_morphism,
    check_tambara,
    check_twisted_ghost_homomorphism,
    check_twisted_matches_ghost,
    from_involution_ring,
    is_cohomological,
    psi_check,
    twisted_coefficient,
    twisted_ghost,
    twisted_witt_ops,
    witt_tambara,
)
from wittcalc.services.check_service import witt_tambara_suite
from wittcalc.utils.errors import TambaraAxiomViolation, TorsionBase, UnknownTorsion, ZeroDivisorDenominator

from conftest import SEED

FEW = 5


@pytest.fixture
def swapped(poly_uv):
    return from_involution_ring(poly_uv, Involution.from_variable_swap(poly_uv, {"u": "ubar"}))


def test_fixed_points_tambara_axioms(swapped):
    results = check_tambara(swapped, 15, SEED)
    assert all(results), [r.name for r in results if not r]


def test_fixed_points_are_cohomological(swapped):
    assert swapped.transfer_of_one() == 2
    assert is_cohomological(swapped, 10, SEED)


def test_norm_of_a_variable(swapped, poly_uv):
    u = poly_uv.variable("u")
    assert swapped.res(swapped.norm(u)) == u * poly_uv.variable("ubar")
    assert swapped.res(swapped.tr(u)) == u + poly_uv.variable("ubar")


def test_burnside_level_zero():
    t = burnside_tambara(0)
    assert all(check_tambara(t, 15, SEED))
    x = t.bottom.transitive("e")
    assert t.transfer_of_one() == x
    assert t.norm(t.top.from_int(2)) == 2 + x
    assert not is_cohomological(t, FEW, SEED)


def test_burnside_level_one_over_d3():
    t = burnside_tambara(1, 3)
    assert t.name == "A(D3)"
    assert all(check_tambara(t, FEW, SEED))


def test_burnside_tower_needs_an_odd_prime():
    with pytest.raises(ValueError):
        burnside_tambara(1, 2)


def test_strict_check_raises_on_a_broken_transfer(swapped):
    broken = dataclasses.replace(swapped, tr=lambda a: swapped.bottom.zero(), name="broken")
    assert not all(check_tambara(broken, FEW, SEED))
    with pytest.raises(TambaraAxiomViolation) as info:
        check_tambara(broken, FEW, SEED, strict=True)
    assert info.value.name == "res tr = 1 + tau"


def test_identity_is_a_morphism(swapped):
    morphism = TambaraMorphism(swapped, swapped, lambda a: a, lambda b: b)
    assert all(check_morphism(morphism, FEW, SEED))


def test_witt_tambara_of_trivial_action():
    z = IntegerRing()
    t = from_involution_ring(z, Involution.identity(z))
    assert all(witt_tambara_suite(t, 3, 2, FEW, SEED))


def test_witt_tambara_of_burnside_level_zero():
    t = burnside_tambara(0)
    wt = witt_tambara(t, 3, 2)
    assert wt.name == "W_2(A(Z/2))"
    a = wt.top.vector([1, 1])
    assert wt.res(wt.norm(a)) == a * wt.involution(a)


def test_witt_tambara_needs_odd_torsion_free_bottom():
    with pytest.raises(ValueError):
        witt_tambara(burnside_tambara(0), 2, 2)


def test_witt_tambara_rejects_torsion():
    from wittcalc.models.rings import IntegerModRing

    ring = IntegerModRing(9)
    with pytest.raises(TorsionBase):
        witt_tambara(from_involution_ring(ring, Involution.identity(ring)), 3, 2)


def test_twisted_coefficients():
    t = burnside_tambara(0)
    x = t.bottom.transitive("e")
    assert twisted_coefficient(t, 3, 0) == 1
    assert twisted_coefficient(t, 3, 1) == 1 + x
    assert twisted_coefficient(t, 3, 2) == 1 + 4 * x


def test_twisted_ghost_of_a_unit_vector():
    t = burnside_tambara(0)
    one = t.bottom.one()
    zero = t.bottom.zero()
    # w~_1(0, 1) = c_1
    assert twisted_ghost(t, 3, 1, [zero, one]) == twisted_coefficient(t, 3, 1)
    assert twisted_ghost(t, 3, 0, [one, zero]) == 1


def test_twisted_witt_vectors_over_burnside():
    ring = TwistedWittRing(burnside_tambara(0), 3, 2)
    assert check_twisted_ghost_homomorphism(ring, FEW, SEED)
    u, v = ring.vector([1, 0]), ring.vector([2, 1])
    assert twisted_witt_ops(ring, "add", u, v).twisted_ghost() == [
        a + b for a, b in zip(u.twisted_ghost(), v.twisted_ghost())]
    with pytest.raises(ValueError):
        twisted_witt_ops(ring, "div", u, v)


def test_twisted_operations_do_not_depend_on_solve_order():
    ring = TwistedWittRing(burnside_tambara(0), 3, 2)
    u, v = ring.vector([1, 0]), ring.vector([2, 1])
    for op, combine in (("add", lambda a, b: a + b), ("mul", lambda a, b: a * b)):
        result = twisted_witt_ops(ring, op, u, v)
        fresh = TwistedWittRing(burnside_tambara(0), 3, 2)
        targets = [combine(a, b) for a, b in zip(fresh.wrap(u.payload).twisted_ghost(),
                                                 fresh.wrap(v.payload).twisted_ghost())]
        assert fresh.solve(targets) == result.payload
        assert twisted_witt_ops(ring, op, u, v) == result


def test_twisted_ring_has_no_division_or_torsion_decision():
    ring = TwistedWittRing(burnside_tambara(0), 3, 2)
    with pytest.raises(ZeroDivisorDenominator):
        ring.divide_exact(ring.one(), ring.one())
    with pytest.raises(UnknownTorsion):
        ring.is_p_torsion_free(3)


def test_twisted_ring_needs_odd_prime():
    with pytest.raises(ValueError):
        TwistedWittRing(burnside_tambara(0), 2, 2)


def test_twisted_ghost_is_ghost_when_cohomological(swapped):
    assert check_twisted_matches_ghost(swapped, 3, 2, FEW, SEED)


def test_dihedral_tower_identity():
    assert psi_check(3, 1, FEW, SEED)
