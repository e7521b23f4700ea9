"""
Z/2-Tambara functors: a ring A with involution, a ring B, and restriction
res: B -> A, transfer tr: A -> B and norm N: A -> B.

Axioms are verified by seeded sampling. The Witt construction lifts the
norm with ``witt.lift_polymap`` and defines the transfer by reciprocity.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from wittcalc.models import burnside
from wittcalc.models.groups import FiniteGroup, builtin_group, dihedral_tower_subgroup
from wittcalc.models.polymap import PolyMap, cross_effect
from wittcalc.models.rings import (
    FixedPointsRing,
    Involution,
    RingElement,
    RingHandle,
    check_involution,
    divide_exact,
    is_p_torsion_free,
)
from wittcalc.models.witt import (
    TruncationSet,
    WittRing,
    WittVector,
    ghost,
    lift_polymap,
)
from wittcalc.utils.constants import COEFFICIENT_BOUND, DEFAULT_SAMPLES
from wittcalc.utils.errors import (
    NotDivisible,
    NotSolvable,
    TambaraAxiomViolation,
    TorsionBase,
    UnknownTorsion,
    ZeroDivisorDenominator,
)
from wittcalc.utils.sampling import CheckResult, is_prime, make_rng, sampled_check

logger = logging.getLogger(__name__)

Map = Callable[[RingElement], RingElement]


@dataclass(frozen=True, eq=False)
class Z2Tambara:
    """
    Args:
        top: the ring A
        involution: the Z/2-action on A
        bottom: the ring B
        res: B -> A
        tr: A -> B
        norm: A -> B, multiplicative of degree 2
        name: label used in reports
    """
    top: RingHandle
    involution: Involution
    bottom: RingHandle
    res: Map
    tr: Map
    norm: Map
    name: str = "T"

    @property
    def key(self) -> Tuple:
        return ("tambara", self.name, self.top.key, self.bottom.key)

    def norm_map(self) -> PolyMap:
        return PolyMap(self.top, self.bottom, self.norm, 2, name=f"N[{self.name}]")

    def transfer_of_one(self) -> RingElement:
        return self.tr(self.top.one())

    def __repr__(self):
        return f"<Z/2-Tambara {self.name}: {self.top.label} ⇄ {self.bottom.label}>"


def check_tambara(t: Z2Tambara, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None,
                  strict: bool = False) -> List[CheckResult]:
    """
    Sampled verification of every Z/2-Tambara axiom.

    Raises:
        TambaraAxiomViolation: on the first failure when ``strict``
    """
    rng = make_rng(seed)
    top, bottom, tau = t.top, t.bottom, t.involution

    def a_pair():
        return top.random_element(rng), top.random_element(rng)

    def b_pair():
        return bottom.random_element(rng), bottom.random_element(rng)

    def mixed():
        return top.random_element(rng), bottom.random_element(rng)

    def a_triple():
        return tuple(top.random_element(rng) for _ in range(3))

    checks = [
        ("res is a ring map", b_pair,
         lambda b, c: t.res(b + c) == t.res(b) + t.res(c) and t.res(b * c) == t.res(b) * t.res(c)
         and t.res(bottom.one()) == top.one()),
        ("res tr = 1 + tau", a_pair, lambda a, _: t.res(t.tr(a)) == a + tau(a)),
        ("tr is additive", a_pair, lambda a, c: t.tr(a + c) == t.tr(a) + t.tr(c)),
        ("Frobenius reciprocity", mixed, lambda a, b: t.tr(t.res(b) * a) == b * t.tr(a)),
        ("tr tau = tr", a_pair, lambda a, _: t.tr(tau(a)) == t.tr(a)),
        ("N is multiplicative", a_pair,
         lambda a, c: t.norm(a * c) == t.norm(a) * t.norm(c) and t.norm(top.one()) == bottom.one()),
        ("N tau = N", a_pair, lambda a, _: t.norm(tau(a)) == t.norm(a)),
        ("res N = a tau(a)", a_pair, lambda a, _: t.res(t.norm(a)) == a * tau(a)),
        ("Tambara reciprocity", a_pair,
         lambda a, _: t.tr(a) == t.norm(a + 1) - t.norm(a) - 1),
        ("N has degree 2", a_triple, lambda a, b, c: cross_effect(t.norm_map(), (a, b, c)).is_zero()),
    ]
    results = []
    for name, draw, predicate in checks:
        result = sampled_check(f"{t.name}: {name}", samples, draw, predicate)
        if strict and not result:
            raise TambaraAxiomViolation(name, result.witness)
        results.append(result)
    logger.info("%s passed %d of %d Tambara checks", t.name, sum(map(bool, results)), len(results))
    return results


def is_cohomological(t: Z2Tambara, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> bool:
    """tr(1) = 2 and N(res(b)) = b^2 on samples."""
    if t.transfer_of_one() != t.bottom.from_int(2):
        return False
    rng = make_rng(seed)
    return bool(sampled_check(f"{t.name}: N res = squaring", samples,
                              lambda: (t.bottom.random_element(rng),),
                              lambda b: t.norm(t.res(b)) == b * b))


# Constructions

def from_involution_ring(ring: RingHandle, involution: Involution, name: Optional[str] = None) -> Z2Tambara:
    """B = fixed points; res the inclusion, tr(a) = a + tau(a), N(a) = a tau(a)."""
    fixed = FixedPointsRing(ring, involution)
    return Z2Tambara(
        top=ring,
        involution=involution,
        bottom=fixed,
        res=fixed.include,
        tr=lambda a: fixed.restrict(a + involution(a)),
        norm=lambda a: fixed.restrict(a * involution(a)),
        name=name or f"fix({ring.label})",
    )


def burnside_tambara(level: int, p: int = 3) -> Z2Tambara:
    """
    Burnside Tambara functors along the dihedral tower.

    Level 0 is A(e) ⇄ A(Z/2). Level j >= 1 is A(C_{p^j}) ⇄ A(D_{p^j}) with
    the Weyl involution given by conjugation with a reflection. Structure
    maps are the Burnside restriction, transfer and norm.
    """
    if level == 0:
        group = builtin_group("Z2")
        sub = frozenset({0})
        top = burnside.subgroup_ring(group, sub)
        involution = Involution.identity(top)
    else:
        if not is_prime(p) or p == 2:
            raise ValueError(f"the dihedral tower needs an odd prime, got {p}")
        group = builtin_group(f"D{p ** level}")
        sub = group.generate([group.named["r"]])
        top = burnside.subgroup_ring(group, sub)
        s = group.named["s"]
        involution = Involution(top, lambda a: burnside.conjugate(a, group, sub, s), ("conj", group.key, s))
        check_involution(involution)
    return Z2Tambara(
        top=top,
        involution=involution,
        bottom=burnside.burnside_ring(group),
        res=lambda b: burnside.restrict(b, group, sub),
        tr=lambda a: burnside.transfer(a, group, sub),
        norm=lambda a: burnside.norm(a, group, sub),
        name=f"A({group.name})",
    )


@dataclass(frozen=True, eq=False)
class TambaraMorphism:
    """A pair of ring maps A -> A', B -> B' meant to commute with all structure maps."""
    source: Z2Tambara
    target: Z2Tambara
    top_map: Map
    bottom_map: Map


def check_morphism(f: TambaraMorphism, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> List[CheckResult]:
    """Sampled ring-map laws and commutation with tau, res, tr and N."""
    rng = make_rng(seed)
    s, t = f.source, f.target

    def a_pair():
        return s.top.random_element(rng), s.top.random_element(rng)

    def b_pair():
        return s.bottom.random_element(rng), s.bottom.random_element(rng)

    checks = [
        ("top map is a ring map", a_pair,
         lambda a, c: f.top_map(a + c) == f.top_map(a) + f.top_map(c)
         and f.top_map(a * c) == f.top_map(a) * f.top_map(c)),
        ("bottom map is a ring map", b_pair,
         lambda b, c: f.bottom_map(b + c) == f.bottom_map(b) + f.bottom_map(c)
         and f.bottom_map(b * c) == f.bottom_map(b) * f.bottom_map(c)),
        ("commutes with tau", a_pair, lambda a, _: f.top_map(s.involution(a)) == t.involution(f.top_map(a))),
        ("commutes with res", b_pair, lambda b, _: f.top_map(s.res(b)) == t.res(f.bottom_map(b))),
        ("commutes with tr", a_pair, lambda a, _: f.bottom_map(s.tr(a)) == t.tr(f.top_map(a))),
        ("commutes with N", a_pair, lambda a, _: f.bottom_map(s.norm(a)) == t.norm(f.top_map(a))),
    ]
    return [sampled_check(f"{s.name} -> {t.name}: {name}", samples, draw, predicate)
            for name, draw, predicate in checks]


# Witt vectors of Tambara functors

def _coordinatewise(source: WittRing, target: WittRing, fn: Map) -> Callable[[WittVector], WittVector]:
    return lambda v: target.vector([fn(c) for c in source(v).coords])


def witt_tambara(t: Z2Tambara, p: int, m: int) -> Z2Tambara:
    """
    W_m(T): W_m(A) ⇄ W_m(B) with involution and restriction applied
    coordinatewise, W_m(N) the lift of N, and W_m(tr)(x) = W_m(N)(x+1) - W_m(N)(x) - 1.

    Raises:
        TorsionBase: B has p-torsion
        ObstructionWitness: propagated from lifting N
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"Witt Tambara functors need an odd prime, got {p}")
    if not is_p_torsion_free(t.bottom, p):
        raise TorsionBase(f"{t.bottom.label} has {p}-torsion")
    trunc = TruncationSet.p_typical(p, m)
    top, bottom = WittRing(t.top, trunc), WittRing(t.bottom, trunc)
    tau = t.involution
    involution = Involution(top, _coordinatewise(top, top, tau), ("witt", tau.key, p, m))
    norm_map = t.norm_map()

    def norm(x):
        return bottom(lift_polymap(norm_map, p, m, top(x)))

    def tr(x):
        x = top(x)
        return norm(x + 1) - norm(x) - 1

    logger.info("built W_%d(%s) at p=%d", m, t.name, p)
    return Z2Tambara(top, involution, bottom, _coordinatewise(bottom, top, t.res), tr, norm,
                     name=f"W_{m}({t.name})")


def check_ghost_naturality(t: Z2Tambara, wt: Z2Tambara, samples: int = DEFAULT_SAMPLES,
                           seed: Optional[int] = None) -> List[CheckResult]:
    """Ghost components of W(T) commute with tau, res, tr and N of T."""
    rng = make_rng(seed)

    def top():
        return (wt.top.random_element(rng),)

    def bottom():
        return (wt.bottom.random_element(rng),)

    checks = [
        ("ghost tau", top, lambda x: ghost(wt.involution(x)) == [t.involution(w) for w in ghost(x)]),
        ("ghost res", bottom, lambda y: ghost(wt.res(y)) == [t.res(w) for w in ghost(y)]),
        ("ghost tr", top, lambda x: ghost(wt.tr(x)) == [t.tr(w) for w in ghost(x)]),
        ("ghost N", top, lambda x: ghost(wt.norm(x)) == [t.norm(w) for w in ghost(x)]),
    ]
    return [sampled_check(f"{wt.name}: {name}", samples, draw, predicate) for name, draw, predicate in checks]


# Twisted ghost maps

def twisted_coefficient(t: Z2Tambara, p: int, i: int) -> RingElement:
    """c_i = 1 + ((p^i - 1)/2) tr(1)."""
    return t.bottom.one() + ((p ** i - 1) // 2) * t.transfer_of_one()


def _twisted_term(t: Z2Tambara, p: int, i: int, j: int, x: RingElement) -> RingElement:
    return twisted_coefficient(t, p, i) * x * t.norm(t.res(x)) ** ((p ** (j - i) - 1) // 2)


def twisted_ghost(t: Z2Tambara, p: int, j: int, x: Sequence[RingElement]) -> RingElement:
    """w~_j(x) = sum_{i<=j} c_i x_i N(res(x_i))^((p^(j-i)-1)/2)."""
    x = [t.bottom(c) for c in x]
    return t.bottom.sum(_twisted_term(t, p, i, j, x[i]) for i in range(j + 1))


class TwistedVector(RingElement):
    @property
    def coords(self) -> List[RingElement]:
        return [self.owner.tambara.bottom.wrap(c) for c in self.payload]

    def twisted_ghost(self) -> List[RingElement]:
        ring = self.owner
        return [twisted_ghost(ring.tambara, ring.p, j, self.coords) for j in range(ring.length)]


class TwistedWittRing(RingHandle):
    """
    Vectors of length m over B whose operations are defined by making every
    twisted ghost map a ring homomorphism. Every operation re-solves from scratch.

    Args:
        tambara: the Z/2-Tambara functor
        p: odd prime
        m: length
    """

    element_class = TwistedVector

    def __init__(self, tambara: Z2Tambara, p: int, m: int):
        if not is_prime(p) or p == 2:
            raise ValueError(f"twisted Witt vectors need an odd prime, got {p}")
        self.tambara = tambara
        self.p = p
        self.length = m

    @property
    def key(self):
        return ("twisted-witt", self.tambara.key, self.p, self.length)

    @property
    def label(self):
        return f"W~_{self.length}({self.tambara.name}; p={self.p})"

    def vector(self, coords: Sequence) -> TwistedVector:
        if len(coords) != self.length:
            raise ValueError(f"{self.label} needs {self.length} coordinates")
        return self.wrap(tuple(self.tambara.bottom(c).payload for c in coords))

    def solve(self, targets: Sequence[RingElement]) -> Tuple:
        """
        The vector whose twisted ghost components are ``targets``.

        Raises:
            NotSolvable: c_j does not divide the residual at coordinate j
        """
        t, p = self.tambara, self.p
        coords: List[RingElement] = []
        for j, target in enumerate(targets):
            residual = target - t.bottom.sum(_twisted_term(t, p, i, j, coords[i]) for i in range(j))
            try:
                coords.append(divide_exact(residual, twisted_coefficient(t, p, j)))
            except NotDivisible as exc:
                raise NotSolvable(j, exc.residue)
        return tuple(c.payload for c in coords)

    def _solved(self, x, y, combine) -> Tuple:
        gx = self.wrap(x).twisted_ghost()
        gy = self.wrap(y).twisted_ghost() if y is not None else [None] * self.length
        return self.solve([combine(a, b) for a, b in zip(gx, gy)])

    def add(self, x, y):
        return self._solved(x, y, lambda a, b: a + b)

    def mul(self, x, y):
        return self._solved(x, y, lambda a, b: a * b)

    def neg(self, x):
        return self._solved(x, None, lambda a, _: -a)

    def from_int(self, n):
        return self.wrap(self.solve([self.tambara.bottom.from_int(n)] * self.length))

    def divide_exact(self, e, d):
        raise ZeroDivisorDenominator(f"{self.label} declares no non-zero-divisors")

    def is_p_torsion_free(self, p):
        raise UnknownTorsion(f"cannot decide {p}-torsion of {self.label}")

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        bottom = self.tambara.bottom
        return self.wrap(tuple(bottom.random_element(rng, bound).payload for _ in range(self.length)))

    def parse(self, literal):
        return self.vector([self.tambara.bottom.parse(c) for c in literal])

    def to_json(self, payload):
        return [self.tambara.bottom.to_json(c) for c in payload]

    def format(self, payload):
        return "(" + ", ".join(self.tambara.bottom.format(c) for c in payload) + ")"


def twisted_witt_ops(ring: TwistedWittRing, op: str, u, v) -> TwistedVector:
    """``op`` in {add, mul}; raises NotSolvable when the ghost equations have no solution."""
    u, v = ring(u), ring(v)
    if op == "add":
        return u + v
    if op == "mul":
        return u * v
    raise ValueError(f"unknown operation {op!r}")


def check_twisted_ghost_homomorphism(ring: TwistedWittRing, samples: int = DEFAULT_SAMPLES,
                                     seed: Optional[int] = None) -> CheckResult:
    """Every w~_j sends sums to sums and products to products."""
    rng = make_rng(seed)

    def preserved(u, v):
        gu, gv = u.twisted_ghost(), v.twisted_ghost()
        return ((u + v).twisted_ghost() == [a + b for a, b in zip(gu, gv)]
                and (u * v).twisted_ghost() == [a * b for a, b in zip(gu, gv)])

    return sampled_check(f"twisted ghost maps of {ring.label} are ring maps", samples,
                         lambda: (ring.random_element(rng, 3), ring.random_element(rng, 3)), preserved)


def check_twisted_matches_ghost(t: Z2Tambara, p: int, m: int, samples: int = DEFAULT_SAMPLES,
                                seed: Optional[int] = None) -> CheckResult:
    """On a cohomological T the twisted ghost map is the ordinary one."""
    rng = make_rng(seed)
    trunc = TruncationSet.p_typical(p, m)
    witt = WittRing(t.bottom, trunc)

    def agrees(x):
        return [twisted_ghost(t, p, j, x.coords) for j in range(m)] == ghost(x)

    return sampled_check(f"{t.name}: twisted ghost = ghost", samples, lambda: (witt.random_element(rng),), agrees)


# Burnside tower identity

@dataclass
class _Level:
    group: FiniteGroup
    reflection: frozenset
    dihedral: Dict[int, frozenset] = field(default_factory=dict)


def _tower_levels(p: int, n: int) -> List[_Level]:
    top = builtin_group(f"D{p ** n}")
    levels = []
    for j in range(n + 1):
        group = burnside.embedding(top, dihedral_tower_subgroup(top, p, n, j)).child
        s = group.named["s"]
        level = _Level(group, group.generate([s]))
        rotation = next((g for g in range(group.order) if group.element_order(g) == p ** j), 0)
        for i in range(j + 1):
            level.dihedral[j - i] = group.generate([group.power(rotation, p ** i), s])
        levels.append(level)
    return levels


def psi_left(levels: List[_Level], j: int, x: Sequence[RingElement]) -> RingElement:
    """res^{D_{p^j}}_{Z/2} of sum_i tr_{D_{p^(j-i)}} N_{Z/2}^{D_{p^(j-i)}}(x_i)."""
    level = levels[j]
    group = level.group
    total = burnside.burnside_ring(group).zero()
    for i in range(j + 1):
        sub = level.dihedral[j - i]
        emb = burnside.embedding(group, sub)
        normed = burnside.norm(x[i], emb.child, emb.down(level.reflection))
        total = total + burnside.transfer(normed, group, sub)
    return burnside.restrict(total, group, level.reflection)


def psi_check(p: int, n: int, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> CheckResult:
    """
    Over the tower Z/2 <= D_p <= ... <= D_{p^n}, compare for every j <= n the
    Burnside expression ``psi_left`` with the twisted ghost map w~_j of the
    Z/2-Burnside Tambara functor, on sampled x_0..x_n in A(Z/2).
    """
    levels = _tower_levels(p, n)
    base = burnside_tambara(0)
    ring = base.bottom
    rng = make_rng(seed)

    def holds(*x):
        return all(psi_left(levels, j, x) == twisted_ghost(base, p, j, x) for j in range(n + 1))

    return sampled_check(f"dihedral tower identity p={p}, n={n}", samples,
                         lambda: tuple(ring.random_element(rng, 3) for _ in range(n + 1)), holds)
