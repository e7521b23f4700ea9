"""
Small finite groups as Cayley tables over sympy permutation groups, with
subgroup enumeration and conjugacy classes of subgroups.
"""

import logging
import re
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from cachetools import cached
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import (
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from wittcalc.utils.constants import MAX_GROUP_ORDER
from wittcalc.utils.errors import GroupTooLarge, NotASubgroup, UnknownGroup

logger = logging.getLogger(__name__)

Subgroup = FrozenSet[int]


class FiniteGroup:
    """
    A finite group indexed 0..order-1 with the identity at 0.

    Args:
        elements: sympy permutations, all distinct, closed under products
        name: display name
        named: optional names of distinguished elements (e.g. "r", "s")
    """

    def __init__(self, elements: Sequence[Permutation], name: str, named: Optional[Dict[str, Permutation]] = None):
        if len(elements) > MAX_GROUP_ORDER:
            raise GroupTooLarge(f"|{name}| = {len(elements)} exceeds {MAX_GROUP_ORDER}")
        degree = max(p.size for p in elements)
        identity = Permutation(list(range(degree)))
        rest = sorted((Permutation(p.array_form, size=degree) for p in elements if not p.is_Identity),
                      key=lambda p: p.array_form)
        self.elements: List[Permutation] = [identity] + rest
        self.name = name
        self.order = len(self.elements)
        self._index = {tuple(p.array_form): i for i, p in enumerate(self.elements)}
        if len(self._index) != self.order:
            raise ValueError(f"{name}: repeated elements")
        # sympy applies p first in p*q; table[g][h] is the composite g∘h
        self.table = [[self._lookup(h * g) for h in self.elements] for g in self.elements]
        self.inverses = [self.table[g].index(0) for g in range(self.order)]
        self._key = (name, tuple(tuple(p.array_form) for p in self.elements))
        self.named = {key: self.index_of(p) for key, p in (named or {}).items()}
        self._check_axioms()

    def _lookup(self, perm: Permutation) -> int:
        try:
            return self._index[tuple(Permutation(perm.array_form, size=self.elements[0].size).array_form)]
        except KeyError:
            raise NotASubgroup(f"{self.name} is not closed under products")

    def index_of(self, perm: Permutation) -> int:
        return self._lookup(perm)

    def _check_axioms(self):
        n = self.order
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ValueError(f"{self.name}: index 0 is not the identity")
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                ab = row[b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError(f"{self.name}: not associative at {a},{b},{c}")

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def power(self, g: int, k: int) -> int:
        result = 0
        for _ in range(k % self.element_order(g)):
            result = self.table[result][g]
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def generate(self, generators: Iterable[int]) -> Subgroup:
        """Closure of a set of elements."""
        generators = list(set(generators))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in generators:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        elements = frozenset(elements)
        return 0 in elements and all(self.table[a][self.inverses[b]] in elements
                                     for a in elements for b in elements)

    def conjugate(self, subgroup: Subgroup, g: int) -> Subgroup:
        """g H g^-1."""
        gi = self.inverses[g]
        return frozenset(self.table[self.table[g][h]][gi] for h in subgroup)

    def whole(self) -> Subgroup:
        return frozenset(range(self.order))

    def left_coset_reps(self, subgroup: Subgroup) -> List[int]:
        """Smallest representative of each left coset gH, in increasing order."""
        covered, reps = set(), []
        for g in range(self.order):
            if g not in covered:
                reps.append(g)
                covered.update(self.table[g][h] for h in subgroup)
        return reps

    def right_coset_reps(self, subgroup: Subgroup) -> List[int]:
        """Smallest representative of each right coset Hg, in increasing order."""
        covered, reps = set(), []
        for g in range(self.order):
            if g not in covered:
                reps.append(g)
                covered.update(self.table[h][g] for h in subgroup)
        return reps

    def double_coset_reps(self, left: Subgroup, right: Subgroup) -> List[int]:
        """Representatives of the double cosets left·g·right."""
        covered, reps = set(), []
        for g in range(self.order):
            if g not in covered:
                reps.append(g)
                covered.update(self.table[self.table[h][g]][k] for h in left for k in right)
        return reps

    def normalizer(self, subgroup: Subgroup) -> Subgroup:
        return frozenset(g for g in range(self.order) if self.conjugate(subgroup, g) == subgroup)

    def subgroup(self, elements: Iterable[int], name: Optional[str] = None) -> "FiniteGroup":
        """The subgroup on ``elements`` as a group in its own right, keeping permutations."""
        elements = frozenset(elements)
        if not self.is_subgroup(elements):
            raise NotASubgroup(f"{sorted(elements)} is not a subgroup of {self.name}")
        named = {key: self.elements[g] for key, g in self.named.items() if g in elements}
        if name is None:
            name = self.name if len(elements) == self.order else describe_subgroup(self, elements)
        return FiniteGroup([self.elements[g] for g in elements], name, named)

    def embed(self, child: "FiniteGroup") -> List[int]:
        """Indices in this group of the elements of ``child``."""
        return [self.index_of(p) for p in child.elements]

    @property
    def key(self) -> Tuple:
        """Name plus permutations; groups with equal keys are the same group."""
        return self._key

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<group {self.name} of order {self.order}>"


def _is_cyclic(group: FiniteGroup, subgroup: Subgroup) -> bool:
    return any(group.element_order(g) == len(subgroup) for g in subgroup)


def describe_subgroup(group: FiniteGroup, subgroup: Subgroup) -> str:
    """e, Z/2, C<n>, V4, D<k> or H<order>, by isomorphism type where recognisable."""
    n = len(subgroup)
    if n == 1:
        return "e"
    if _is_cyclic(group, subgroup):
        return "Z/2" if n == 2 else f"C{n}"
    if n == 4:
        return "V4"
    if n % 2 == 0 and n >= 6:
        k = n // 2
        for r in subgroup:
            if group.element_order(r) == k:
                rotations = group.generate([r])
                if all(group.element_order(g) == 2 for g in subgroup - rotations):
                    return f"D{k}"
                break
    return f"H{n}"


class SubgroupLattice:
    """
    Conjugacy classes of subgroups of ``group``.

    Classes are ordered by subgroup order and then by the sorted element list
    of their smallest member, which is also the class representative.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        subgroups = self._all_subgroups()
        classes: List[List[Subgroup]] = []
        seen = set()
        for subgroup in sorted(subgroups, key=lambda s: (len(s), sorted(s))):
            if subgroup in seen:
                continue
            orbit = sorted({group.conjugate(subgroup, g) for g in range(group.order)},
                           key=lambda s: sorted(s))
            seen.update(orbit)
            classes.append(orbit)
        classes.sort(key=lambda orbit: (len(orbit[0]), sorted(orbit[0])))
        self.classes = classes
        self.reps: List[Subgroup] = [orbit[0] for orbit in classes]
        self._class_of = {s: i for i, orbit in enumerate(classes) for s in orbit}
        self.names = self._name_classes()
        logger.info("%s has %d subgroups in %d conjugacy classes", group.name, len(subgroups), len(classes))

    def _all_subgroups(self) -> List[Subgroup]:
        group = self.group
        found = {frozenset({0})}
        frontier = [frozenset({0})]
        while frontier:
            new = []
            for subgroup in frontier:
                for g in range(group.order):
                    if g not in subgroup:
                        joined = group.generate(set(subgroup) | {g})
                        if joined not in found:
                            found.add(joined)
                            new.append(joined)
            frontier = new
        return list(found)

    def _name_classes(self) -> List[str]:
        names = []
        counts: Dict[str, int] = {}
        for i, rep in enumerate(self.reps):
            if len(rep) == self.group.order:
                base = self.group.name
            else:
                base = describe_subgroup(self.group, rep)
            counts[base] = counts.get(base, 0) + 1
            names.append(base if counts[base] == 1 else f"{base}{chr(ord('a') + counts[base] - 1)}")
        return names

    def __len__(self):
        return len(self.classes)

    def class_of(self, subgroup: Iterable[int]) -> int:
        subgroup = frozenset(subgroup)
        try:
            return self._class_of[subgroup]
        except KeyError:
            raise NotASubgroup(f"{sorted(subgroup)} is not a subgroup of {self.group.name}")

    def index_of_name(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise NotASubgroup(f"{self.group.name} has no subgroup class named {name!r}; known: {self.names}")

    def subconjugate(self, i: int, j: int) -> bool:
        """Whether some conjugate of class i lies inside the representative of class j."""
        target = self.reps[j]
        return any(s <= target for s in self.classes[i])

    def weyl_order(self, i: int) -> int:
        """|N_G(H) / H| for the representative H of class i."""
        rep = self.reps[i]
        return len(self.group.normalizer(rep)) // len(rep)


# Built-in groups

_PATTERN = re.compile(r"^(?P<kind>C|D|S|A)(?P<n>\d+)$")


def _dihedral(n: int) -> FiniteGroup:
    group = DihedralGroup(n)
    rotation, reflection = group.generators[0], group.generators[1]
    return FiniteGroup(list(group.generate()), f"D{n}", {"r": rotation, "s": reflection})


@cached(cache={})
def builtin_group(name: str) -> FiniteGroup:
    """
    Build e, Z2, C<n>, D<n> (order 2n), A3, A4, S<n> (n <= 4) by name.

    Raises:
        UnknownGroup: the name is not one of the families
        GroupTooLarge: the order exceeds the search limit
    """
    if name in ("e", "trivial", "1"):
        return FiniteGroup([Permutation([0])], "e")
    if name in ("Z2", "Z/2", "C2"):
        group = CyclicGroup(2)
        return FiniteGroup(list(group.generate()), "Z/2", {"s": group.generators[0]})
    match = _PATTERN.match(name)
    if not match:
        raise UnknownGroup(f"unknown group {name!r}")
    kind, n = match.group("kind"), int(match.group("n"))
    if kind == "C" and n >= 1:
        if n > MAX_GROUP_ORDER:
            raise GroupTooLarge(f"|C{n}| exceeds {MAX_GROUP_ORDER}")
        group = CyclicGroup(n)
        return FiniteGroup(list(group.generate()), f"C{n}", {"r": group.generators[0]})
    if kind == "D" and n >= 3:
        if 2 * n > MAX_GROUP_ORDER:
            raise GroupTooLarge(f"|D{n}| = {2 * n} exceeds {MAX_GROUP_ORDER}")
        return _dihedral(n)
    if kind == "A" and n in (3, 4):
        return FiniteGroup(list(AlternatingGroup(n).generate()), f"A{n}")
    if kind == "S" and 2 <= n <= 4:
        return FiniteGroup(list(SymmetricGroup(n).generate()), f"S{n}")
    raise UnknownGroup(f"unknown group {name!r}")


@cached(cache={}, key=lambda group: group.key)
def subgroup_classes(group: FiniteGroup) -> SubgroupLattice:
    """All conjugacy classes of subgroups."""
    if group.order > MAX_GROUP_ORDER:
        raise GroupTooLarge(f"|{group.name}| = {group.order} exceeds {MAX_GROUP_ORDER}")
    return SubgroupLattice(group)


def dihedral_tower_subgroup(group: FiniteGroup, p: int, j: int, k: int) -> Subgroup:
    """
    Inside D_{p^j} = <r, s>: the subgroup D_{p^k} = <r^{p^(j-k)}, s> for k >= 0
    (D_1 = <s> = Z/2).
    """
    r, s = group.named["r"], group.named["s"]
    return group.generate([group.power(r, p ** (j - k)), s])


def rotation_subgroup(group: FiniteGroup) -> Subgroup:
    return group.generate([group.named["r"]])
