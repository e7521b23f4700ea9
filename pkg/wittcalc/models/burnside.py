"""
Burnside rings of small finite groups.

A(G) is a ``FreeRankRing`` on the transitive G-sets [G/H], one per conjugacy
class of subgroups, with structure constants read off the table of marks.
Subgroups are frozensets of indices into an ambient ``FiniteGroup``; the
Burnside ring of a subgroup H is the Burnside ring of H viewed as a group in
its own right (``subgroup_ring``), so restriction, transfer, conjugation and
norm move elements between those rings.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from cachetools import cached

from wittcalc.models.groups import (
    FiniteGroup,
    Subgroup,
    SubgroupLattice,
    builtin_group,
    subgroup_classes,
)
from wittcalc.models.polymap import PolyMap
from wittcalc.models.rings import (
    FreeRankRing,
    IntegerRing,
    RingElement,
    cyclic_burnside_ring,
)
from wittcalc.utils.constants import MAX_NORM_INDEX, MAX_NORM_SOURCE_CLASSES, MAX_UNIT_CLASSES
from wittcalc.utils.errors import (
    IndexTooLarge,
    InterpolationNonIntegral,
    NotASubgroup,
    OwnerMismatch,
    TooManyClasses,
)
from wittcalc.utils.sampling import CheckResult, binomial

logger = logging.getLogger(__name__)

# Largest function set enumerated by the brute-force norm
BRUTE_FORCE_FUNCTIONS = 200_000


class TableOfMarks:
    """
    ``matrix[h][k] = |(G/H_h)^{K_k}|`` over the classes of a subgroup lattice.

    Lower triangular with positive diagonal in the lattice ordering.
    """

    def __init__(self, lattice: SubgroupLattice):
        self.lattice = lattice
        group = lattice.group
        self.matrix: List[List[int]] = [[self._mark(group, h, k) for k in lattice.reps] for h in lattice.reps]

    @staticmethod
    def _mark(group: FiniteGroup, h: Subgroup, k: Subgroup) -> int:
        count = 0
        for g in group.left_coset_reps(h):
            gi = group.inv(g)
            if all(group.mul(group.mul(gi, x), g) in h for x in k):
                count += 1
        return count

    def __len__(self):
        return len(self.matrix)

    def marks_of(self, coords: Sequence) -> List:
        n = len(self.matrix)
        return [sum(coords[h] * self.matrix[h][k] for h in range(n)) for k in range(n)]

    def solve(self, marks: Sequence) -> List[Fraction]:
        """The rational coordinates with the given marks (back substitution from G/G down)."""
        n = len(self.matrix)
        coords = [Fraction(0)] * n
        for k in range(n - 1, -1, -1):
            rest = sum(coords[h] * self.matrix[h][k] for h in range(k + 1, n))
            coords[k] = (Fraction(marks[k]) - rest) / self.matrix[k][k]
        return coords

    def from_marks(self, marks: Sequence) -> Tuple[int, ...]:
        coords = self.solve(marks)
        if any(c.denominator != 1 for c in coords):
            raise InterpolationNonIntegral(f"marks {list(marks)} are not the marks of a virtual set")
        return tuple(int(c) for c in coords)

    def frame(self) -> pd.DataFrame:
        """Rows G/H, columns K, as a labelled pandas frame."""
        group = self.lattice.group.name
        names = self.lattice.names
        return pd.DataFrame(self.matrix, index=[f"{group}/{name}" for name in names], columns=names)


class BurnsideElement(RingElement):
    """An element of A(G); ``payload`` holds the coefficients of the [G/H] in lattice order."""

    @property
    def marks(self) -> List[int]:
        return self.owner.marks.marks_of(self.payload)

    @property
    def coords(self) -> Dict[str, int]:
        return {name: c for name, c in zip(self.owner.basis, self.payload) if c}

    def is_genuine(self) -> bool:
        return all(c >= 0 for c in self.payload)


class BurnsideRing(FreeRankRing):
    """
    A(G) with basis [G/H] over the subgroup classes; G/G is named "1".

    Args:
        group: the group
    """

    element_class = BurnsideElement

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.lattice = subgroup_classes(group)
        self.marks = TableOfMarks(self.lattice)
        n = len(self.lattice)
        names = [self._basis_name(i) for i in range(n)]
        table = {}
        for i in range(n):
            for j in range(i, n):
                table[(i, j)] = self.marks.from_marks(
                    [a * b for a, b in zip(self.marks.matrix[i], self.marks.matrix[j])])
        unit = [0] * (n - 1) + [1]
        super().__init__(names, table, unit, name=f"A({group.name})", check_axioms=False)
        logger.info("built A(%s) of rank %d", group.name, n)

    def _basis_name(self, i: int) -> str:
        if i == len(self.lattice) - 1:
            return "1"
        return f"[{self.group.name}/{self.lattice.names[i]}]"

    def transitive(self, subgroup: Union[str, Subgroup]) -> BurnsideElement:
        """[G/H] for a subgroup (or the name of its class)."""
        if isinstance(subgroup, str):
            i = self.lattice.index_of_name(subgroup)
        else:
            i = self.lattice.class_of(subgroup)
        return self.basis_elements()[i]

    def from_marks(self, marks: Sequence[int]) -> BurnsideElement:
        return self.wrap(self.marks.from_marks(marks))

    def as_ring(self) -> FreeRankRing:
        """A(G) as a plain free-rank handle (equal to this one as a ring)."""
        table = {(i, j): self._table[i][j] for i in range(self.rank) for j in range(i, self.rank)}
        return FreeRankRing(self.basis, table, self._unit, name=self.name, check_axioms=False)


@cached(cache={}, key=lambda group: group.key)
def _burnside_ring(group: FiniteGroup) -> BurnsideRing:
    return BurnsideRing(group)


def burnside_ring(group: Union[str, FiniteGroup]) -> BurnsideRing:
    """A(G) for a group or the name of a built-in group."""
    if isinstance(group, str):
        group = builtin_group(group)
    return _burnside_ring(group)


@dataclass(frozen=True)
class Embedding:
    """A subgroup H of ``parent`` as a group of its own with index translation."""
    parent: FiniteGroup
    subgroup: Subgroup
    child: FiniteGroup
    to_child: Dict[int, int]
    to_parent: Tuple[int, ...]

    def down(self, elements) -> Subgroup:
        return frozenset(self.to_child[g] for g in elements)

    def up(self, elements) -> Subgroup:
        return frozenset(self.to_parent[g] for g in elements)


@cached(cache={}, key=lambda group, subgroup: (group.key, subgroup))
def _embedding(group: FiniteGroup, subgroup: frozenset) -> Embedding:
    child = group.subgroup(subgroup)
    to_parent = tuple(group.embed(child))
    to_child = {g: i for i, g in enumerate(to_parent)}
    return Embedding(group, subgroup, child, to_child, to_parent)


def embedding(group: FiniteGroup, subgroup) -> Embedding:
    return _embedding(group, frozenset(subgroup))


def subgroup_ring(group: FiniteGroup, subgroup) -> BurnsideRing:
    """A(H) for a subgroup H of ``group``."""
    return burnside_ring(embedding(group, subgroup).child)


def _expect(x: RingElement, ring: BurnsideRing) -> BurnsideElement:
    if x.owner != ring:
        raise OwnerMismatch(f"expected an element of {ring.label}, got one of {x.owner.label}")
    return ring.wrap(x.payload)


def _class_rep(ring: BurnsideRing, emb: Embedding, i: int) -> Subgroup:
    """Representative of class i of A(H), as indices of the ambient group."""
    return emb.up(ring.lattice.reps[i])


# Products, restriction, transfer, conjugation

def burnside_mul(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Multiply markwise and solve back through the table of marks."""
    if a.owner != b.owner:
        raise OwnerMismatch(f"{a.owner.label} vs {b.owner.label}")
    ring = a.owner
    return ring.from_marks([x * y for x, y in zip(a.marks, b.marks)])


def restrict(x: RingElement, group: FiniteGroup, subgroup) -> BurnsideElement:
    """res^G_H: decompose each G/K into H-orbits with stabilizers H ∩ gKg^-1."""
    ring = burnside_ring(group)
    x = _expect(x, ring)
    emb = embedding(group, subgroup)
    target = burnside_ring(emb.child)
    out = [0] * target.rank
    for i, coefficient in enumerate(x.payload):
        if not coefficient:
            continue
        k = ring.lattice.reps[i]
        coset = {}
        for g in range(group.order):
            coset[g] = min(group.mul(g, y) for y in k)
        seen = set()
        for g in group.left_coset_reps(k):
            if coset[g] in seen:
                continue
            seen.update(coset[group.mul(h, g)] for h in emb.subgroup)
            stabilizer = emb.subgroup & group.conjugate(k, g)
            out[target.lattice.class_of(emb.down(stabilizer))] += coefficient
    return target.wrap(tuple(out))


def transfer(y: RingElement, group: FiniteGroup, subgroup) -> BurnsideElement:
    """tr_H^G: [H/L] -> [G/L]."""
    emb = embedding(group, subgroup)
    source = burnside_ring(emb.child)
    y = _expect(y, source)
    ring = burnside_ring(group)
    out = [0] * ring.rank
    for i, coefficient in enumerate(y.payload):
        if coefficient:
            out[ring.lattice.class_of(_class_rep(source, emb, i))] += coefficient
    return ring.wrap(tuple(out))


def conjugate(y: RingElement, group: FiniteGroup, subgroup, g: int) -> BurnsideElement:
    """c_g: A(H) -> A(gHg^-1), [H/L] -> [gHg^-1/gLg^-1]."""
    emb = embedding(group, subgroup)
    source = burnside_ring(emb.child)
    y = _expect(y, source)
    image = embedding(group, group.conjugate(emb.subgroup, g))
    target = burnside_ring(image.child)
    out = [0] * target.rank
    for i, coefficient in enumerate(y.payload):
        if coefficient:
            moved = group.conjugate(_class_rep(source, emb, i), g)
            out[target.lattice.class_of(image.down(moved))] += coefficient
    return target.wrap(tuple(out))


def res_transfer_conj(kind: str, x: RingElement, group: FiniteGroup, subgroup, g: Optional[int] = None):
    """Dispatch ``kind`` in {res, tr, conj} on the subgroup ``subgroup`` of ``group``."""
    subgroup = frozenset(subgroup)
    if not group.is_subgroup(subgroup):
        raise NotASubgroup(f"{sorted(subgroup)} is not a subgroup of {group.name}")
    if kind == "res":
        return restrict(x, group, subgroup)
    if kind == "tr":
        return transfer(x, group, subgroup)
    if kind == "conj":
        if g is None:
            raise ValueError("conjugation needs a group element")
        return conjugate(x, group, subgroup, g)
    raise ValueError(f"unknown structure map {kind!r}")


def double_coset_check(group: FiniteGroup, h, k) -> CheckResult:
    """
    res^G_H tr^G_K = sum over HgK of tr^H_{H∩gKg^-1} c_g res^K_{g^-1Hg∩K},
    on every basis element of A(K).
    """
    h, k = frozenset(h), frozenset(k)
    h_emb, k_emb = embedding(group, h), embedding(group, k)
    name = f"double coset formula for {h_emb.child.name}, {k_emb.child.name} in {group.name}"
    count = 0
    for basis in subgroup_ring(group, k).basis_elements():
        count += 1
        lhs = restrict(transfer(basis, group, k), group, h)
        rhs = subgroup_ring(group, h).zero()
        for g in group.double_coset_reps(h, k):
            meet = h & group.conjugate(k, g)
            pulled = group.conjugate(meet, group.inv(g))
            step = restrict(basis, k_emb.child, k_emb.down(pulled))
            step = conjugate(step, group, pulled, g)
            rhs = rhs + transfer(step, h_emb.child, h_emb.down(meet))
        if lhs != rhs:
            return CheckResult(name, False, count, witness=basis, details={"lhs": lhs, "rhs": rhs})
    return CheckResult(name, True, count)


# Norms

class _InducedAction:
    """G acting on Map_H(G, X) through right coset representatives of H."""

    def __init__(self, group: FiniteGroup, subgroup: Subgroup):
        self.group = group
        reps = group.right_coset_reps(subgroup)
        where = {}
        for i, t in enumerate(reps):
            for y in subgroup:
                where[group.mul(y, t)] = i
        self.index = len(reps)
        # moves[g][i] = (sigma(i), h_i) with t_i g = h_i t_sigma(i)
        self.moves = []
        for g in range(group.order):
            row = []
            for t in reps:
                tg = group.mul(t, g)
                j = where[tg]
                row.append((j, group.mul(tg, group.inv(reps[j]))))
            self.moves.append(row)

    def apply(self, g: int, f: Tuple[int, ...], act) -> Tuple[int, ...]:
        return tuple(act[h][f[j]] for j, h in self.moves[g])


def _h_set(emb: Embedding, source: BurnsideRing, x: BurnsideElement):
    """Points and the action table {h: [image of point]} of the genuine H-set x."""
    group = emb.parent
    points: List[Tuple[int, int, int]] = []
    for i, copies in enumerate(x.payload):
        rep = _class_rep(source, emb, i)
        cosets = sorted({min(group.mul(h, y) for y in rep) for h in emb.subgroup})
        for copy in range(copies):
            points.extend((i, copy, c) for c in cosets)
    index = {p: n for n, p in enumerate(points)}
    act = {}
    for h in emb.subgroup:
        row = []
        for i, copy, c in points:
            rep = _class_rep(source, emb, i)
            row.append(index[(i, copy, min(group.mul(group.mul(h, c), y) for y in rep))])
        act[h] = row
    return points, act


def _norm_brute(x: BurnsideElement, group: FiniteGroup, emb: Embedding) -> BurnsideElement:
    source = burnside_ring(emb.child)
    ring = burnside_ring(group)
    points, act = _h_set(emb, source, x)
    action = _InducedAction(group, emb.subgroup)
    if len(points) ** action.index > BRUTE_FORCE_FUNCTIONS:
        raise IndexTooLarge(f"{len(points)}^{action.index} functions exceed the brute-force limit")
    out = [0] * ring.rank
    seen = set()
    for f in itertools.product(range(len(points)), repeat=action.index):
        if f in seen:
            continue
        stabilizer = []
        for g in range(group.order):
            image = action.apply(g, f, act)
            seen.add(image)
            if image == f:
                stabilizer.append(g)
        out[ring.lattice.class_of(stabilizer)] += 1
    return ring.wrap(tuple(out))


def _norm_marks(x: BurnsideElement, group: FiniteGroup, emb: Embedding) -> BurnsideElement:
    """|N(X)^K| = product over H\\G/K of |X^{H ∩ gKg^-1}|."""
    source = burnside_ring(emb.child)
    ring = burnside_ring(group)
    x_marks = x.marks
    marks = []
    for k in ring.lattice.reps:
        factors = []
        for g in group.double_coset_reps(emb.subgroup, k):
            meet = emb.subgroup & group.conjugate(k, g)
            factors.append(x_marks[source.lattice.class_of(emb.down(meet))])
        marks.append(prod(factors))
    return ring.from_marks(marks)


@cached(cache={}, key=lambda group, emb: (group.key, emb.subgroup))
def _interpolation_coefficients(group: FiniteGroup, emb: Embedding) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """Binomial-basis coefficients of the norm from its values on {0..d}^classes."""
    source = burnside_ring(emb.child)
    degree = group.order // len(emb.subgroup)
    grid = list(itertools.product(range(degree + 1), repeat=source.rank))
    values = {n: _norm_brute(source.wrap(n), group, emb).payload for n in grid}
    coefficients = {}
    for alpha in grid:
        total = [0] * burnside_ring(group).rank
        for beta in itertools.product(*(range(a + 1) for a in alpha)):
            sign = (-1) ** (sum(alpha) - sum(beta))
            weight = sign * prod(binomial(a, b) for a, b in zip(alpha, beta))
            total = [t + weight * v for t, v in zip(total, values[beta])]
        if any(total):
            if sum(alpha) > degree:
                raise InterpolationNonIntegral(f"non-zero coefficient at {alpha} beyond degree {degree}")
            coefficients[alpha] = tuple(total)
    logger.info("interpolated N_%s^%s from %d grid values", emb.child.name, group.name, len(grid))
    return coefficients


def _norm_interpolated(x: BurnsideElement, group: FiniteGroup, emb: Embedding) -> BurnsideElement:
    ring = burnside_ring(group)
    out = [0] * ring.rank
    for alpha, coefficient in _interpolation_coefficients(group, emb).items():
        weight = prod(binomial(n, a) for n, a in zip(x.payload, alpha))
        if weight:
            out = [o + weight * c for o, c in zip(out, coefficient)]
    return ring.wrap(tuple(out))


def norm(x: RingElement, group: FiniteGroup, subgroup, strategy: str = "auto") -> BurnsideElement:
    """
    N_H^G: A(H) -> A(G), the set Map_H(G, X) on genuine X, extended to
    virtual elements as a polynomial of degree [G:H].

    Strategies: "brute" enumerates Map_H(G, X); "interpolation" evaluates the
    binomial-basis expansion fitted on the grid {0..[G:H]}^classes; "marks"
    multiplies fixed-point counts over double cosets. "auto" uses brute force
    on genuine sets, interpolation on virtual ones, and marks beyond the
    index limit.

    Raises:
        IndexTooLarge: brute force or interpolation requested above the index limit
        TooManyClasses: interpolation requested with too many source classes
    """
    emb = embedding(group, subgroup)
    x = _expect(x, burnside_ring(emb.child))
    index = group.order // len(emb.subgroup)
    if strategy == "auto":
        orbit_sizes = [len(emb.child.elements) // len(r) for r in burnside_ring(emb.child).lattice.reps]
        if index > MAX_NORM_INDEX:
            strategy = "marks"
        elif x.is_genuine():
            size = sum(c * s for c, s in zip(x.payload, orbit_sizes))
            strategy = "brute" if size ** index <= BRUTE_FORCE_FUNCTIONS else "marks"
        elif (burnside_ring(emb.child).rank <= MAX_NORM_SOURCE_CLASSES
              and (index * sum(orbit_sizes)) ** index <= BRUTE_FORCE_FUNCTIONS):
            strategy = "interpolation"
        else:
            strategy = "marks"
    if strategy == "marks":
        return _norm_marks(x, group, emb)
    if index > MAX_NORM_INDEX:
        raise IndexTooLarge(f"[{group.name}:{emb.child.name}] = {index} exceeds {MAX_NORM_INDEX}")
    if strategy == "brute":
        if not x.is_genuine():
            raise ValueError(f"brute-force norm needs a genuine set, got {x}")
        return _norm_brute(x, group, emb)
    if strategy == "interpolation":
        if burnside_ring(emb.child).rank > MAX_NORM_SOURCE_CLASSES:
            raise TooManyClasses(f"{emb.child.name} has more than {MAX_NORM_SOURCE_CLASSES} classes")
        return _norm_interpolated(x, group, emb)
    raise ValueError(f"unknown norm strategy {strategy!r}")


def norm_map(group: FiniteGroup, subgroup, strategy: str = "auto") -> PolyMap:
    """N_H^G as a multiplicative polynomial map of degree [G:H]."""
    emb = embedding(group, subgroup)
    return PolyMap(burnside_ring(emb.child), burnside_ring(group),
                   lambda x: norm(x, group, emb.subgroup, strategy),
                   group.order // len(emb.subgroup), name=f"N_{emb.child.name}^{group.name}")


def cyclic_burnside_norm(p: int, local_prime: Optional[int] = None) -> PolyMap:
    """N_e^{C_p}: Z -> Z[x]/(x^2 - p x), a -> a + ((a^p - a)/p) x."""
    codomain = cyclic_burnside_ring(p, local_prime)
    x = codomain.generator("x")

    def evaluate(a):
        n = a.payload
        return codomain.from_int(n) + ((n ** p - n) // p) * x

    return PolyMap(IntegerRing(), codomain, evaluate, p, name=f"N_e^C{p}")


def a4_norm_formula(m: int) -> Dict[str, int]:
    """Closed form of N_{A3}^{A4}(m) for m trivial points."""
    return {
        "1": m,
        "[A4/C3]": m * m - m,
        "[A4/Z/2]": binomial(m, 2),
        "[A4/e]": m * binomial(m - 1, 2) + 2 * binomial(m, 4),
    }


def units(ring: BurnsideRing) -> List[BurnsideElement]:
    """
    All units of A(G): the elements whose marks are all ±1.

    Raises:
        TooManyClasses: more classes than the sign-pattern search allows
    """
    n = ring.rank
    if n > MAX_UNIT_CLASSES:
        raise TooManyClasses(f"{ring.label} has {n} > {MAX_UNIT_CLASSES} classes")
    found = []
    for signs in itertools.product((1, -1), repeat=n):
        coords = ring.marks.solve(signs)
        if all(c.denominator == 1 for c in coords):
            found.append(ring.wrap(tuple(int(c) for c in coords)))
    logger.info("%s has %d units", ring.label, len(found))
    return sorted(found, key=lambda u: u.payload)
