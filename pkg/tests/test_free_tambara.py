import pytest

from wittcalc.models.free_tambara import (
    PresheafPair,
    check_ring_structure,
    cohomological_resolution,
    free_mul,
    free_tambara,
    restrict_to_generators,
    adjunction_extend,
)
from wittcalc.models.rings import Involution, IntegerRing, divide_exact
from wittcalc.models.tambara import burnside_tambara, check_morphism, from_involution_ring
from wittcalc.services.check_service import adjunction_box_suite, adjunction_suite, free_tambara_suite
from wittcalc.utils.errors import (
    DescriptorError,
    NotCohomological,
    NotCompatible,
    NotDivisible,
    NotEquivariant,
    ZeroDivisorDenominator,
)

from conftest import SEED

FEW = 5


@pytest.fixture
def free_uv():
    return free_tambara(PresheafPair.from_orbits([["u", "ubar"]]))


@pytest.fixture
def free_xy():
    return free_tambara(PresheafPair.from_orbits([["x"]], ["y"], {"y": "x"}))


def test_pair_descriptor_validation():
    pair = PresheafPair.from_descriptor({"X": [["u", "ubar"], ["x"]], "Y": ["y"], "res": {"y": "x"}})
    assert pair.points == ("u", "ubar", "x")
    assert pair.swap == (1, 0, 2)
    assert pair.orbits == (0, 2)
    with pytest.raises(DescriptorError):
        PresheafPair.from_orbits([["a", "b", "c"]])
    with pytest.raises(DescriptorError):
        PresheafPair.from_orbits([["u", "ubar"]], ["y"], {"y": "u"})
    with pytest.raises(DescriptorError):
        PresheafPair.from_orbits([])


def test_transfer_products(free_uv):
    bottom = free_uv.bottom
    tr_u = free_uv.tr(free_uv.top.variable("u"))
    assert tr_u == bottom.make(s3={(1, 0): 1})
    assert free_mul(tr_u, tr_u) == bottom.make(s2={(1, 1): 1}, s3={(2, 0): 1})


def test_norm_of_an_orbit_sum(free_uv):
    top, bottom = free_uv.top, free_uv.bottom
    n = free_uv.norm(top.variable("u") + top.variable("ubar"))
    assert n == bottom.make(s1={(1,): 2}, s3={(2, 0): 1})


def test_norm_of_an_integer(free_uv):
    bottom = free_uv.bottom
    # N(3) = 3 + 3 tr(1)
    assert free_uv.norm(free_uv.top.from_int(3)) == bottom.make(s1={(0,): 3}, s2={(0, 0): 3})


def test_restriction(free_uv):
    top, bottom = free_uv.top, free_uv.bottom
    assert free_uv.res(free_uv.tr(top.one())) == 2
    u, ubar = top.variable("u"), top.variable("ubar")
    assert free_uv.res(bottom.make(s1={(1,): 1})) == u * ubar
    assert free_uv.res(bottom.make(s3={(2, 0): 1})) == u * u + ubar * ubar


def test_parse_and_json(free_uv):
    bottom = free_uv.bottom
    parsed = bottom.parse({"s1": [[[1], 2]], "s3": [[[0, 1], 1]]})
    assert parsed == bottom.make(s1={(1,): 2}, s3={(1, 0): 1})
    assert parsed.to_json() == {"s1": [[[1], "2"]], "s2": [], "s3": [[[1, 0], "1"]]}
    assert bottom.parse("5") == 5


def test_exact_division_by_integers(free_uv):
    bottom = free_uv.bottom
    x = bottom.make(s1={(1,): 4}, s2={(0, 0): -2}, s3={(1, 0): 6})
    assert divide_exact(x, 2) == bottom.make(s1={(1,): 2}, s2={(0, 0): -1}, s3={(1, 0): 3})
    with pytest.raises(NotDivisible) as info:
        divide_exact(x, 4)
    assert info.value.residue == bottom.make(s2={(0, 0): 2}, s3={(1, 0): 2})
    with pytest.raises(ZeroDivisorDenominator):
        divide_exact(x, free_uv.tr(free_uv.top.variable("u")))
    with pytest.raises(ZeroDivisorDenominator):
        divide_exact(x, 0)


def test_ring_structure_is_exact(free_uv, free_xy):
    assert all(check_ring_structure(free_uv.bottom, 3))
    assert all(check_ring_structure(free_xy.bottom, 2))


def test_free_tambara_axioms(free_uv):
    results = free_tambara_suite(free_uv.bottom.pair, FEW, SEED, degree=2)
    assert all(results), [r.name for r in results if not r]


def test_adjunction_into_burnside(free_uv):
    target = burnside_tambara(0)
    assert all(adjunction_suite(free_uv, target, {"u": 2, "ubar": 2}, {}, FEW, SEED))


def test_adjunction_with_a_y_generator(free_xy):
    target = burnside_tambara(0)
    beta = {"y": target.bottom.transitive("e")}
    morphism = adjunction_extend(free_xy, target, {"x": 2}, beta)
    alpha_back, beta_back = restrict_to_generators(morphism)
    assert alpha_back == {"x": target.top.from_int(2)}
    assert beta_back == beta
    assert all(check_morphism(morphism, FEW, SEED))


def test_adjunction_box(free_xy):
    target = burnside_tambara(0)
    results = adjunction_box_suite(free_xy, target, [0, 1, 2], [0, 1, {"[Z/2/e]": 1}], FEW, SEED)
    assert all(results)
    assert results[0].samples > 0


def test_adjunction_rejects_bad_generators(free_uv, free_xy):
    target = burnside_tambara(0)
    with pytest.raises(NotEquivariant):
        adjunction_extend(free_uv, target, {"u": 2, "ubar": 3}, {})
    with pytest.raises(NotCompatible):
        adjunction_extend(free_xy, target, {"x": 2}, {"y": 1})


def test_resolution_of_the_integers():
    z = IntegerRing()
    t = from_involution_ring(z, Involution.identity(z))
    resolution = cohomological_resolution(t, [1], [1], FEW, SEED)
    assert resolution.surjective
    assert resolution.ring.variables == ("u0", "ubar0", "b0")
    assert all(check_morphism(resolution.morphism, FEW, SEED))


def test_resolution_needs_a_cohomological_functor():
    with pytest.raises(NotCohomological):
        cohomological_resolution(burnside_tambara(0), [1], [], FEW, SEED)
