import pytest
import sympy
from hypothesis import given, strategies as st

from wittcalc.models.burnside import cyclic_burnside_norm
from wittcalc.models.polymap import PolyMap, identity_map, power_map
from wittcalc.models.rings import IntegerModRing, IntegerRing
from wittcalc.models.witt import (
    TruncationSet,
    WittRing,
    composition_defect,
    dwork_membership,
    frobenius,
    ghost,
    in_ghost_image,
    lift_polymap,
    lifted_map,
    power_map_lift_defect,
    restrict,
    sum_defect,
    teichmuller,
    universal_expressions,
    universal_lift_formula,
    unghost,
    verschiebung,
    witt_neg,
)
from wittcalc.services import fixtures
from wittcalc.services.check_service import ghost_homomorphism_suite, lift_functoriality_suite
from wittcalc.utils.errors import (
    BadTruncationSet,
    NotInGhostImage,
    NotMultiplicative,
    ObstructionWitness,
    TorsionBase,
    UnsupportedIndex,
    ZeroDivisorDenominator,
)

from conftest import SAMPLES, SEED

small = st.integers(-9, 9)


def w(p, m, ring=None):
    return WittRing(ring or IntegerRing(), TruncationSet.p_typical(p, m))


def test_ghost_of_verschiebung_one():
    example = fixtures.GHOST_EXAMPLE
    v = w(example["p"], example["m"]).vector(example["vector"])
    assert [g.payload for g in ghost(v)] == example["ghost"]


def test_unghost_inverts_ghost_and_reports_index():
    trunc = TruncationSet.p_typical(3, 2)
    assert unghost([0, 3], trunc, IntegerRing()).coords == [0, 1]
    with pytest.raises(NotInGhostImage) as info:
        unghost([0, 1], trunc, IntegerRing())
    assert info.value.index == 1
    assert not in_ghost_image([0, 1], trunc, IntegerRing())


def test_unghost_needs_a_torsion_free_ring():
    with pytest.raises(ZeroDivisorDenominator):
        unghost([0, 0], TruncationSet.p_typical(3, 2), IntegerModRing(9))


@given(st.lists(small, min_size=2, max_size=2), st.lists(small, min_size=2, max_size=2))
def test_ghost_is_a_ring_map_p3(a, b):
    ring = w(3, 2)
    u, v = ring.vector(a), ring.vector(b)
    assert ghost(u + v) == [x + y for x, y in zip(ghost(u), ghost(v))]
    assert ghost(u * v) == [x * y for x, y in zip(ghost(u), ghost(v))]
    assert ghost(-u) == [-x for x in ghost(u)]


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_ghost_is_a_ring_map_p2_length_3(a, b):
    ring = w(2, 3)
    u, v = ring.vector(a), ring.vector(b)
    assert ghost(u * v) == [x * y for x, y in zip(ghost(u), ghost(v))]


@given(st.lists(small, min_size=2, max_size=2), st.lists(small, min_size=2, max_size=2))
def test_ghost_strategy_agrees_with_universal_polynomials(a, b):
    trunc = TruncationSet.p_typical(3, 2)
    universal = WittRing(IntegerRing(), trunc)
    via_ghost = WittRing(IntegerRing(), trunc, strategy="ghost")
    assert (universal.vector(a) * universal.vector(b)).coords == (via_ghost.vector(a) * via_ghost.vector(b)).coords
    assert (universal.vector(a) + universal.vector(b)).coords == (via_ghost.vector(a) + via_ghost.vector(b)).coords


def test_universal_sum_polynomial_p2():
    a0, a1, b0, b1 = sympy.symbols("a0 a1 b0 b1")
    exprs = universal_expressions(TruncationSet.p_typical(2, 2), "sum")
    assert exprs[0] == a0 + b0
    assert (exprs[1] - (a1 + b1 - a0 * b0)).expand() == 0


def test_w2_of_f3_is_z_mod_9():
    ring = w(3, 2, IntegerModRing(3))
    assert ring.from_int(3) == ring.vector([0, 1])
    assert ring.from_int(9).is_zero()


@given(small, small)
def test_teichmuller_is_multiplicative(a, b):
    trunc = TruncationSet.p_typical(3, 3)
    z = IntegerRing()
    assert teichmuller(z(a), trunc) * teichmuller(z(b), trunc) == teichmuller(z(a * b), trunc)


@given(st.lists(small, min_size=3, max_size=3))
def test_frobenius_and_verschiebung_shift_ghosts(a):
    ring = w(3, 3)
    v = ring.vector(a)
    assert ghost(frobenius(v)) == ghost(v)[1:]
    assert ghost(verschiebung(v)) == [0] + [3 * g for g in ghost(v)]
    assert frobenius(verschiebung(v)) == 3 * v


def test_restrict_drops_the_last_coordinate():
    v = w(3, 3).vector([1, 2, 3])
    assert restrict(v) == w(3, 2).vector([1, 2])


def test_finite_truncation_sets():
    trunc = TruncationSet.finite([1, 2, 3, 6])
    ring = WittRing(IntegerRing(), trunc)
    u, v = ring.vector([1, 2, -1, 0]), ring.vector([0, 1, 1, 2])
    assert ghost(u * v) == [x * y for x, y in zip(ghost(u), ghost(v))]
    with pytest.raises(BadTruncationSet):
        TruncationSet.finite([1, 6])
    with pytest.raises(BadTruncationSet):
        TruncationSet.p_typical(4, 2)


@pytest.mark.parametrize(
    "g,expected",
    (
        ([1, 1], True),
        ([2, 8], True),
        ([0, 1], False),
        ([1, 4, 7], False),
    ),
)
def test_dwork_criterion_over_z(g, expected):
    z = IntegerRing()
    assert dwork_membership([z(x) for x in g], 3, samples=SAMPLES, seed=SEED) is expected


@given(st.integers(-40, 40))
def test_integers_have_constant_ghost_components(n):
    for ring in (w(3, 2), w(2, 3)):
        assert [g.payload for g in ghost(ring.from_int(n))] == [n] * ring.length
    assert w(3, 2).from_int(n) == w(3, 2).from_int(n)


def test_lift_of_identity_and_squaring():
    z = IntegerRing()
    ring = w(3, 2)
    a = ring.vector([2, -1])
    assert lift_polymap(identity_map(z), 3, 2, a) == a
    assert lift_polymap(power_map(z, 2), 3, 2, a) == a * a


@pytest.mark.parametrize("p", fixtures.CEX_PRIMES)
def test_burnside_norm_does_not_lift(p):
    with pytest.raises(ObstructionWitness) as info:
        lift_polymap(cyclic_burnside_norm(p), p, 2, [0, 1])
    assert info.value.index == 1
    assert info.value.residue.to_json() == {"x": str(fixtures.CEX_RESIDUES[p])}


def test_lift_needs_a_torsion_free_codomain():
    with pytest.raises(TorsionBase):
        lift_polymap(power_map(IntegerModRing(9), 2), 3, 2, [0, 1])


def test_lift_needs_a_multiplicative_map():
    z = IntegerRing()
    with pytest.raises(NotMultiplicative):
        lift_polymap(PolyMap(z, z, lambda a: 2 * a, 1, multiplicative=False), 3, 2, [1, 0])
    with pytest.raises(NotMultiplicative) as info:
        lift_polymap(PolyMap(z, z, lambda a: a + 1, 1, name="shift"), 3, 2, [1, 0], seed=SEED)
    a, b = info.value.witness
    assert (a * b) + 1 != (a + 1) * (b + 1)


def test_lift_formula_coefficients():
    formula = universal_lift_formula(2, 3, 1)
    assert formula.coefficients == ((-1, 1), (1, 2))
    assert universal_lift_formula(2, 3, 0).index == 0
    with pytest.raises(UnsupportedIndex):
        universal_lift_formula(2, 3, 2)
    with pytest.raises(ValueError):
        universal_lift_formula(3, 3, 1)


@given(small, small)
def test_lift_formula_matches_lift(a0, a1):
    f = power_map(IntegerRing(), 2)
    formula = universal_lift_formula(2, 5, 1)
    assert lift_polymap(f, 5, 2, [a0, a1]).coords[1] == formula.evaluate(f, IntegerRing()(a0), IntegerRing()(a1))


def test_degree_bound_defects():
    assert power_map_lift_defect(3)["differs"]
    assert sum_defect(3)["differs"]
    assert composition_defect(3, 2, 2)["vector"] is not None
    with pytest.raises(ValueError):
        composition_defect(3, 1, 2)


def test_negation_and_lifted_map():
    ring = w(3, 2)
    v = ring.vector([2, 5])
    assert witt_neg(v) + v == ring.zero()
    squared = lifted_map(power_map(IntegerRing(), 2), 3, 2)
    assert squared.degree_bound == 2
    assert squared(v) == v * v


def test_check_suites():
    assert all(ghost_homomorphism_suite(IntegerRing(), 3, 3, SAMPLES, SEED))
    square = power_map(IntegerRing(), 2)
    assert all(lift_functoriality_suite(square, square, 5, 2, 5, SEED))
