import pytest

from wittcalc.models.groups import (
    builtin_group,
    describe_subgroup,
    dihedral_tower_subgroup,
    rotation_subgroup,
    subgroup_classes,
)
from wittcalc.utils.errors import GroupTooLarge, NotASubgroup, UnknownGroup


@pytest.mark.parametrize(
    "name,order",
    (
        ("e", 1),
        ("Z2", 2),
        ("C6", 6),
        ("D3", 6),
        ("D9", 18),
        ("A4", 12),
        ("S4", 24),
    ),
)
def test_builtin_orders(name, order):
    assert builtin_group(name).order == order


@pytest.mark.parametrize("name", ("Q8", "D2", "A5"))
def test_unknown_groups(name):
    with pytest.raises(UnknownGroup):
        builtin_group(name)


def test_group_order_limit():
    with pytest.raises(GroupTooLarge):
        builtin_group("D30")


@pytest.mark.parametrize(
    "name,names",
    (
        ("Z2", ["e", "Z/2"]),
        ("D3", ["e", "Z/2", "C3", "D3"]),
        ("A4", ["e", "Z/2", "C3", "V4", "A4"]),
    ),
)
def test_subgroup_classes(name, names):
    assert subgroup_classes(builtin_group(name)).names == names


def test_s4_has_eleven_classes():
    assert len(subgroup_classes(builtin_group("S4"))) == 11


def test_weyl_groups_of_a4():
    lattice = subgroup_classes(builtin_group("A4"))
    assert lattice.weyl_order(lattice.index_of_name("C3")) == 1
    assert lattice.weyl_order(lattice.index_of_name("V4")) == 3
    assert lattice.weyl_order(lattice.index_of_name("e")) == 12


def test_subconjugacy_in_d3():
    lattice = subgroup_classes(builtin_group("D3"))
    e, z2, c3, d3 = range(4)
    assert lattice.subconjugate(e, c3)
    assert lattice.subconjugate(z2, d3)
    assert not lattice.subconjugate(z2, c3)


def test_class_lookup_rejects_non_subgroups():
    group = builtin_group("D3")
    lattice = subgroup_classes(group)
    r = group.named["r"]
    with pytest.raises(NotASubgroup):
        lattice.class_of({0, r})
    with pytest.raises(NotASubgroup):
        lattice.index_of_name("V4")


def test_dihedral_tower():
    group = builtin_group("D9")
    assert len(dihedral_tower_subgroup(group, 3, 2, 0)) == 2
    assert len(dihedral_tower_subgroup(group, 3, 2, 1)) == 6
    assert dihedral_tower_subgroup(group, 3, 2, 2) == group.whole()
    rotations = rotation_subgroup(group)
    assert describe_subgroup(group, rotations) == "C9"


def test_double_cosets_partition_the_group():
    group = builtin_group("A4")
    lattice = subgroup_classes(group)
    h = lattice.reps[lattice.index_of_name("C3")]
    k = lattice.reps[lattice.index_of_name("Z/2")]
    covered = set()
    for g in group.double_coset_reps(h, k):
        coset = {group.mul(group.mul(x, g), y) for x in h for y in k}
        assert not coset & covered
        covered |= coset
    assert covered == set(range(group.order))
