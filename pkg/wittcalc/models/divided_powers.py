"""
Divided powers of torsion-free rings of finite rank, realised as the
symmetric invariants of tensor powers.

A basis of (A^{⊗n})^{Σ_n} is given by orbit sums indexed by multisets of
size n over the basis of A; coordinates in that basis are the tensor
entries at sorted index tuples.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from cachetools import cached
from cachetools.keys import hashkey
from sympy.utilities.iterables import multiset_permutations

from wittcalc.models.polymap import PolyMap, cross_effect
from wittcalc.models.rings import (
    FreeRankRing,
    LocalizedIntegers,
    RingElement,
    RingHandle,
    divide_exact,
)
from wittcalc.utils.constants import DEFAULT_SAMPLES, DP_MAX_DEGREE
from wittcalc.utils.errors import (
    NonInvertibleFactorial,
    NotDivisible,
    NotHomogeneous,
    RelationViolation,
    ZeroDivisorDenominator,
)
from wittcalc.utils.sampling import CheckResult, make_rng, multisets, sampled_check, subsets

logger = logging.getLogger(__name__)

Multiset = Tuple[int, ...]


class SymElement(RingElement):
    """An element of a ``SymPower``."""

    @property
    def degree(self) -> int:
        return self.owner.degree

    @property
    def coords(self) -> Dict[Multiset, object]:
        return {alpha: c for alpha, c in zip(self.owner.multisets, self.payload) if c}


def _scalar_prime(base: RingHandle) -> Optional[int]:
    if isinstance(base, LocalizedIntegers):
        return base.prime
    return getattr(base, "local_prime", None)


def _base_table(base: RingHandle) -> List[List[List]]:
    basis = base.basis_elements()
    return [[[int(c) for c in base.coordinates(x * y)] for y in basis] for x in basis]


def _orbit_product(table, alpha: Multiset, beta: Multiset, rank: int) -> Dict[Multiset, int]:
    """O_alpha * O_beta in the tensor ring, read at sorted index tuples."""
    full: Dict[Tuple[int, ...], int] = Counter()
    for s in multiset_permutations(list(alpha)):
        for u in multiset_permutations(list(beta)):
            slots = [[(k, c) for k, c in enumerate(table[a][b]) if c] for a, b in zip(s, u)]
            for choice in itertools.product(*slots):
                full[tuple(k for k, _ in choice)] += prod(c for _, c in choice)
    return {t: c for t, c in full.items() if c and list(t) == sorted(t)}


class SymPower(FreeRankRing):
    """
    Γ_n(A) ≅ (A^{⊗n})^{Σ_n} for a free ring A, as a free ring on orbit sums.

    Args:
        base: a free ring (integers, a localization, a free-rank or product ring)
        degree: n
    """

    element_class = SymElement

    def __init__(self, base: RingHandle, degree: int):
        if not base.is_free:
            raise TypeError(f"{base.label} is not free of finite rank")
        if not 0 <= degree <= DP_MAX_DEGREE:
            raise ValueError(f"degree {degree} outside 0..{DP_MAX_DEGREE}")
        self.base = base
        self.degree = degree
        base_basis = base.basis_elements()
        self.base_rank = len(base_basis)
        self.base_names = [str(b) for b in base_basis]
        self.multisets: List[Multiset] = multisets(degree, self.base_rank)
        index = {alpha: i for i, alpha in enumerate(self.multisets)}
        table = _base_table(base)
        structure = {}
        for i, alpha in enumerate(self.multisets):
            for j in range(i, len(self.multisets)):
                product = _orbit_product(table, alpha, self.multisets[j], self.base_rank)
                coords = [0] * len(self.multisets)
                for t, c in product.items():
                    coords[index[t]] = c
                structure[(i, j)] = coords
        unit = _gamma_coords([int(c) for c in base.coordinates(base.one())], degree, self.base_rank)
        names = ["{" + ",".join(self.base_names[k] for k in alpha) + "}" for alpha in self.multisets]
        super().__init__(names, structure, [unit.get(alpha, 0) for alpha in self.multisets],
                         local_prime=_scalar_prime(base), name=f"Γ_{degree}({base.label})",
                         check_axioms=False)
        logger.debug("built %s of rank %d", self.label, self.rank)

    @property
    def key(self):
        return ("sym", self.base.key, self.degree)

    def from_coords(self, coords: Dict[Multiset, object]) -> SymElement:
        return self.wrap(self._canon(coords.get(alpha, 0) for alpha in self.multisets))


@cached(cache={}, key=lambda base, degree: hashkey(base.key, degree))
def sym_power(base: RingHandle, degree: int) -> SymPower:
    return SymPower(base, degree)


# Coordinate-level formulas; scalars may be ints, Fractions or sympy expressions

def _gamma_coords(c: Sequence, n: int, rank: int) -> Dict[Multiset, object]:
    return {alpha: prod((c[i] for i in alpha), start=1) for alpha in multisets(n, rank)}


def _shuffle_coords(x: Dict[Multiset, object], n: int, y: Dict[Multiset, object], m: int,
                    rank: int) -> Dict[Multiset, object]:
    """(x ★ y)[t] = sum over n-subsets S of positions of x[t_S] y[t_{S^c}]."""
    out = {}
    for gamma in multisets(n + m, rank):
        total = 0
        for positions in itertools.combinations(range(n + m), n):
            chosen = set(positions)
            left = tuple(sorted(gamma[i] for i in positions))
            right = tuple(sorted(gamma[i] for i in range(n + m) if i not in chosen))
            total = total + x.get(left, 0) * y.get(right, 0)
        out[gamma] = total
    return out


def gamma_n(a: RingElement, n: int) -> SymElement:
    """γ_n(a) = a^{⊗n}; the coordinate at a multiset is the product of a's coordinates over it."""
    base = a.owner
    power = sym_power(base, n)
    return power.from_coords(_gamma_coords(base.coordinates(a), n, power.base_rank))


def shuffle(x: SymElement, y: SymElement) -> SymElement:
    """Product of the graded algebra of symmetric tensors."""
    if x.owner.base != y.owner.base:
        raise ValueError("shuffle needs a common base ring")
    n, m = x.degree, y.degree
    target = sym_power(x.owner.base, n + m)
    return target.from_coords(_shuffle_coords(x.coords, n, y.coords, m, target.base_rank))


def _expanded_equal(lhs: Dict, rhs: Dict) -> bool:
    keys = set(lhs) | set(rhs)
    return all(sympy.expand(lhs.get(k, 0) - rhs.get(k, 0)) == 0 for k in keys)


def divided_relations_check(power: SymPower, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None,
                            strict: bool = False) -> List[CheckResult]:
    """
    Relations γ_0(a) = 1, γ_n(ka) = k^n γ_n(a), γ_n(a)γ_m(a) = C(n+m, n) γ_{n+m}(a)
    and γ_n(a+b) = Σ γ_k(a)γ_{n-k}(b) for all degrees up to ``power.degree``.

    Each relation is checked as a polynomial identity in symbolic
    coordinates of a and b, then on ``samples`` random elements.
    """
    base, top, rank = power.base, power.degree, power.base_rank
    a = sympy.symbols(f"a0:{rank}")
    b = sympy.symbols(f"b0:{rank}")
    k = sympy.Symbol("k")
    results = []

    def symbolic(name, cases):
        for case in cases:
            lhs, rhs = case()
            if not _expanded_equal(lhs, rhs):
                results.append(CheckResult(name, False, 0, witness=case.__doc__))
                return
        results.append(CheckResult(name, True, 0, details={"mode": "symbolic"}))

    def unit_case():
        "degree 0"
        return _gamma_coords(a, 0, rank), {(): 1}

    def scaling(n):
        def case():
            return _gamma_coords([k * x for x in a], n, rank), {t: k ** n * v for t, v in _gamma_coords(a, n, rank).items()}
        case.__doc__ = f"n={n}"
        return case

    def powers(n, m):
        def case():
            lhs = _shuffle_coords(_gamma_coords(a, n, rank), n, _gamma_coords(a, m, rank), m, rank)
            return lhs, {t: comb(n + m, n) * v for t, v in _gamma_coords(a, n + m, rank).items()}
        case.__doc__ = f"n={n}, m={m}"
        return case

    def sums(n):
        def case():
            lhs = _gamma_coords([x + y for x, y in zip(a, b)], n, rank)
            rhs: Dict = {}
            for i in range(n + 1):
                part = _shuffle_coords(_gamma_coords(a, i, rank), i, _gamma_coords(b, n - i, rank), n - i, rank)
                for t, v in part.items():
                    rhs[t] = rhs.get(t, 0) + v
            return lhs, rhs
        case.__doc__ = f"n={n}"
        return case

    symbolic("γ_0(a) = 1", [unit_case])
    symbolic("γ_n(ka) = k^n γ_n(a)", [scaling(n) for n in range(top + 1)])
    symbolic("γ_n(a)γ_m(a) = C(n+m,n)γ_{n+m}(a)",
             [powers(n, m) for n in range(top + 1) for m in range(top + 1 - n)])
    symbolic("γ_n(a+b) = Σ γ_i(a)γ_{n-i}(b)", [sums(n) for n in range(top + 1)])

    rng = make_rng(seed)

    def draw():
        return base.random_element(rng), base.random_element(rng), rng.randint(0, top), rng.randint(-5, 5)

    def sampled(x, y, n, scalar):
        if gamma_n(scalar * x, n) != scalar ** n * gamma_n(x, n):
            return False
        m = top - n
        if shuffle(gamma_n(x, n), gamma_n(x, m)) != comb(n + m, n) * gamma_n(x, n + m):
            return False
        target = sym_power(base, n)
        expansion = target.sum(shuffle(gamma_n(x, i), gamma_n(y, n - i)) for i in range(n + 1))
        return gamma_n(x + y, n) == expansion

    results.append(sampled_check(f"divided power relations on {base.label}", samples, draw, sampled))
    for result in results:
        logger.info("%s: %s", result.name, "pass" if result.passed else f"fail at {result.witness}")
    if strict:
        failed = [r for r in results if not r.passed]
        if failed:
            raise RelationViolation(failed[0].name, failed[0].witness)
    return results


def cross_effect_expansion(n: int, base: RingHandle, args: Sequence[RingElement]) -> SymElement:
    """
    Σ_U (-1)^{n-|U|} γ_n(Σ_{l in U} a_l), which must equal γ_1(a_1)⋯γ_1(a_n).

    Raises:
        RelationViolation: the two sides differ
    """
    if len(args) != n:
        raise ValueError(f"expected {n} arguments, got {len(args)}")
    args = [base(x) for x in args]
    power = sym_power(base, n)
    total = power.zero()
    for subset in subsets(n):
        value = gamma_n(base.sum(args[i] for i in subset), n)
        total = total + value if (n - len(subset)) % 2 == 0 else total - value
    product = sym_power(base, 0).one()
    for x in args:
        product = shuffle(product, gamma_n(x, 1))
    if product != total:
        raise RelationViolation("cross-effect expansion", tuple(args))
    return total


def _codomain_scalar(codomain: RingHandle, c) -> RingElement:
    if isinstance(c, Fraction) and c.denominator != 1:
        return divide_exact(codomain.from_int(c.numerator), c.denominator)
    return codomain.from_int(int(c))


@dataclass(frozen=True, eq=False)
class HomogeneousExtension:
    """The linear map Γ_n(A) -> B classifying an n-homogeneous map A -> B."""
    source: SymPower
    codomain: RingHandle
    images: Tuple[RingElement, ...]
    phi: PolyMap

    def __call__(self, x: SymElement) -> RingElement:
        x = self.source(x)
        total = self.codomain.zero()
        for c, image in zip(x.payload, self.images):
            if c:
                total = total + _codomain_scalar(self.codomain, c) * image
        return total

    def check(self, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> List[CheckResult]:
        """φ̄∘γ_n = φ and additivity on random inputs."""
        rng = make_rng(seed)
        base, n = self.source.base, self.source.degree
        return [
            sampled_check("extension restricts to φ", samples, lambda: (base.random_element(rng),),
                          lambda a: self(gamma_n(a, n)) == self.phi(a)),
            sampled_check("extension is additive", samples,
                          lambda: (self.source.random_element(rng), self.source.random_element(rng)),
                          lambda x, y: self(x + y) == self(x) + self(y)),
        ]


def extend_homogeneous(phi: PolyMap, p: int, samples: int = DEFAULT_SAMPLES,
                       seed: Optional[int] = None) -> HomogeneousExtension:
    """
    Extend an n-homogeneous map to Γ_n of its domain: the orbit sum of a
    multiset with multiplicities n_1..n_l goes to (1/(n_1!⋯n_l!)) cr_n φ
    evaluated on the basis elements repeated accordingly.

    Raises:
        NotHomogeneous: φ(ka) != k^n φ(a) on a sample
        NonInvertibleFactorial: a multiplicity factorial cannot be divided out
    """
    n = phi.degree_bound
    if p <= n:
        raise ValueError(f"need p > n, got p={p}, n={n}")
    rng = make_rng(seed)
    homogeneous = sampled_check(
        f"{phi.name} is {n}-homogeneous", samples,
        lambda: (phi.domain.random_element(rng), rng.randint(-4, 4)),
        lambda a, k: phi(k * a) == k ** n * phi(a))
    if not homogeneous:
        raise NotHomogeneous(f"{phi.name} fails homogeneity at {homogeneous.witness}")
    source = sym_power(phi.domain, n)
    basis = phi.domain.basis_elements()
    images = []
    for alpha in source.multisets:
        value = cross_effect(phi, [basis[i] for i in alpha])
        multiplicity = prod(factorial(c) for c in Counter(alpha).values())
        try:
            images.append(divide_exact(value, multiplicity))
        except (NotDivisible, ZeroDivisorDenominator):
            raise NonInvertibleFactorial(f"cannot divide {value} by {multiplicity} in {phi.codomain.label}")
    return HomogeneousExtension(source, phi.codomain, tuple(images), phi)
