import pytest

from wittcalc.models.burnside import (
    a4_norm_formula,
    burnside_mul,
    burnside_ring,
    double_coset_check,
    embedding,
    norm,
    norm_map,
    res_transfer_conj,
    restrict,
    subgroup_ring,
    transfer,
    units,
)
from wittcalc.models.groups import builtin_group, subgroup_classes
from wittcalc.services import fixtures
from wittcalc.utils.errors import IndexTooLarge, NotASubgroup


def rep(group, name):
    lattice = subgroup_classes(group)
    return lattice.reps[lattice.index_of_name(name)]


def test_basis_names():
    assert burnside_ring("D3").basis == ("[D3/e]", "[D3/Z/2]", "[D3/C3]", "1")
    assert burnside_ring("Z2").basis == ("[Z/2/e]", "1")


def test_table_of_marks_frame():
    frame = burnside_ring("Z2").marks.frame()
    assert list(frame.columns) == ["e", "Z/2"]
    assert frame.loc["Z/2/e", "e"] == 2
    assert frame.loc["Z/2/e", "Z/2"] == 0
    assert frame.loc["Z/2/Z/2", "Z/2"] == 1


def test_products_in_a_d3():
    ring = burnside_ring("D3")
    product = ring.transitive("C3") * ring.transitive("Z/2")
    assert product == ring.transitive("e")
    assert burnside_mul(ring.transitive("C3"), ring.transitive("C3")) == 2 * ring.transitive("C3")


def test_marks_round_trip():
    ring = burnside_ring("A4")
    x = ring.transitive("V4") + 2 * ring.transitive("e")
    assert ring.from_marks(x.marks) == x


def test_restriction_of_a4_mod_c3():
    group = builtin_group("A4")
    c3 = rep(group, "C3")
    target = subgroup_ring(group, c3)
    restricted = restrict(burnside_ring(group).transitive("C3"), group, c3)
    assert restricted == target.one() + target.transitive("e")


def test_transfer_sends_orbits_up():
    group = builtin_group("D3")
    z2 = rep(group, "Z/2")
    source = subgroup_ring(group, z2)
    assert transfer(source.one(), group, z2) == burnside_ring(group).transitive("Z/2")
    assert transfer(source.transitive("e"), group, z2) == burnside_ring(group).transitive("e")


@pytest.mark.parametrize("name", ("D3", "A4"))
def test_double_coset_formula(name):
    group = builtin_group(name)
    lattice = subgroup_classes(group)
    for h in lattice.reps:
        for k in lattice.reps:
            assert double_coset_check(group, h, k)


def test_structure_maps_reject_non_subgroups():
    group = builtin_group("D3")
    with pytest.raises(NotASubgroup):
        res_transfer_conj("res", burnside_ring(group).one(), group, {0, group.named["r"]})


def test_a4_norm_of_trivial_sets():
    group = builtin_group("A4")
    n = norm_map(group, rep(group, "C3"))
    assert n.degree_bound == 4
    assert n(4).coords == fixtures.A4_NORM_OF_FOUR
    for m in fixtures.A4_FORMULA_RANGE:
        expected = {k: v for k, v in a4_norm_formula(m).items() if v}
        assert n(m).coords == expected


def test_norm_strategies_agree():
    group = builtin_group("A4")
    c3 = rep(group, "C3")
    source = subgroup_ring(group, c3)
    for x in (source.from_int(2), source.one() + source.transitive("e")):
        assert norm(x, group, c3, "brute") == norm(x, group, c3, "marks")
    virtual = source.transitive("e") - source.one()
    assert norm(virtual, group, c3, "interpolation") == norm(virtual, group, c3, "marks")


def test_embeddings_are_shared():
    group = builtin_group("A4")
    c3 = rep(group, "C3")
    assert embedding(group, c3) is embedding(group, list(c3))
    assert subgroup_ring(group, c3) is subgroup_ring(builtin_group("A4"), c3)


def test_norm_is_multiplicative():
    group = builtin_group("D3")
    c3 = rep(group, "C3")
    source = subgroup_ring(group, c3)
    a, b = source.from_int(2) - source.transitive("e"), source.transitive("e") + 3
    assert norm(a * b, group, c3) == norm(a, group, c3) * norm(b, group, c3)


def test_brute_force_norm_above_the_index_limit():
    group = builtin_group("S4")
    e = rep(group, "e")
    with pytest.raises(IndexTooLarge):
        norm(subgroup_ring(group, e).one(), group, e, "brute")


@pytest.mark.parametrize("name,count", fixtures.UNIT_COUNTS.items())
def test_unit_counts(name, count):
    found = units(burnside_ring(name))
    assert len(found) == count
    assert all(u * u == 1 for u in found)


def test_d3_nontrivial_unit():
    ring = burnside_ring("D3")
    assert ring.parse(fixtures.D3_NONTRIVIAL_UNIT) in units(ring)
