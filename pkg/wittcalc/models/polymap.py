"""
Polynomial maps between rings: cross-effects, sampled degree tests,
homogeneous decomposition, p-power congruences and the composition /
product calculus.
"""

import itertools
import logging
from dataclasses import dataclass
from math import factorial, prod
from typing import Callable, Dict, List, Optional, Sequence

from cachetools import LRUCache
from sympy.functions.combinatorial.numbers import stirling

from wittcalc.models.rings import (
    IntegerRing,
    PolynomialRing,
    RingElement,
    RingHandle,
    divide_exact,
)
from wittcalc.utils.constants import DEFAULT_SAMPLES
from wittcalc.utils.errors import (
    DegreeViolation,
    NonInvertibleFactorial,
    NotDivisible,
    OwnerMismatch,
    ZeroDivisorDenominator,
)
from wittcalc.utils.sampling import (
    CheckResult,
    binomial,
    is_prime,
    make_rng,
    sampled_check,
    subsets,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PolyMap:
    """
    A map ``domain -> codomain`` with a declared degree bound.

    Args:
        domain: source ring
        codomain: target ring
        fn: pure evaluator on domain elements
        degree_bound: n such that the (n+1)-st cross-effect vanishes
        multiplicative: whether f(ab) = f(a) f(b) is claimed
        name: label used in reports
    """
    domain: RingHandle
    codomain: RingHandle
    fn: Callable[[RingElement], RingElement]
    degree_bound: int
    multiplicative: bool = True
    name: str = "f"

    def __call__(self, a) -> RingElement:
        return self.codomain(self.fn(self.domain(a)))

    def __repr__(self):
        return f"<{self.name}: {self.domain.label} -> {self.codomain.label}, deg <= {self.degree_bound}>"


def cross_effect(f: PolyMap, args: Sequence[RingElement]) -> RingElement:
    """
    cr_k f(a_1..a_k) = sum over U of (-1)^(k-|U|) f(sum_{l in U} a_l).
    """
    k = len(args)
    args = [f.domain(a) for a in args]
    total = f.codomain.zero()
    for subset in subsets(k):
        value = f(f.domain.sum(args[i] for i in subset))
        total = total + value if (k - len(subset)) % 2 == 0 else total - value
    return total


def diagonal_cross_effect(f: PolyMap, k: int, a: RingElement) -> RingElement:
    """cr_k f on k copies of ``a``: subsets of size j contribute f(j a)."""
    a = f.domain(a)
    total = f.codomain.zero()
    for j in range(k + 1):
        total = total + ((-1) ** (k - j) * binomial(k, j)) * f(j * a)
    return total


def degree_test(f: PolyMap, n: int, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> CheckResult:
    """Sampled check that cr_{n+1} f vanishes; the witness is the failing tuple."""
    rng = make_rng(seed)

    def draw():
        return tuple(f.domain.random_element(rng) for _ in range(n + 1))

    return sampled_check(f"degree of {f.name} <= {n}", samples, draw,
                         lambda *args: cross_effect(f, args).is_zero())


def _factorial_inverses(codomain: RingHandle, n: int) -> List[RingElement]:
    inverses = []
    for k in range(n + 1):
        try:
            inverses.append(divide_exact(codomain.one(), factorial(k)))
        except (NotDivisible, ZeroDivisorDenominator):
            raise NonInvertibleFactorial(f"{k}! is not invertible in {codomain.label}")
    return inverses


def homogeneous_decompose(f: PolyMap, samples: int = DEFAULT_SAMPLES,
                          seed: Optional[int] = None) -> List[PolyMap]:
    """
    Split a degree-n map into pieces phi_0..phi_n with phi_k k-homogeneous.

    phi_n = (1/n!) diag cr_n f and phi_k = (1/k!) diag cr_k (f - phi_n - ... - phi_{k+1}).
    Since diag cr_k of an i-homogeneous map is k! S(i, k) times that map
    (S the Stirling numbers of the second kind), every phi_k(a) is read off
    the values f(0), f(a), ..., f(n a).

    Raises:
        NonInvertibleFactorial: some k! with k <= n is not a unit of the codomain
        DegreeViolation: the sampled degree test at n fails
    """
    n = f.degree_bound
    inverses = _factorial_inverses(f.codomain, n)
    check = degree_test(f, n, samples=samples, seed=seed)
    if not check:
        raise DegreeViolation(n, check.witness)

    memo = LRUCache(maxsize=4096)

    def components(a: RingElement) -> List[RingElement]:
        if a in memo:
            return memo[a]
        diag = [diagonal_cross_effect(f, k, a) for k in range(n + 1)]
        parts = [None] * (n + 1)
        for k in range(n, -1, -1):
            value = inverses[k] * diag[k]
            for i in range(k + 1, n + 1):
                value = value - int(stirling(i, k)) * parts[i]
            parts[k] = value
        memo[a] = parts
        return parts

    pieces = []
    for k in range(n + 1):
        pieces.append(PolyMap(f.domain, f.codomain, lambda a, k=k: components(a)[k], k,
                              multiplicative=f.multiplicative, name=f"{f.name}_{k}"))
    logger.info("decomposed %s into %d homogeneous pieces", f.name, n + 1)
    return pieces


def check_decomposition(f: PolyMap, pieces: Sequence[PolyMap], samples: int = DEFAULT_SAMPLES,
                        seed: Optional[int] = None) -> List[CheckResult]:
    """Sum reconstruction, homogeneity and (for multiplicative f) multiplicativity and orthogonality."""
    rng = make_rng(seed)
    domain = f.domain

    def pair():
        return domain.random_element(rng), domain.random_element(rng)

    results = [sampled_check("sum of pieces is f", samples, lambda: (domain.random_element(rng),),
                             lambda a: f.codomain.sum(phi(a) for phi in pieces) == f(a))]
    results.append(sampled_check(
        "pieces are homogeneous", samples, lambda: (domain.random_element(rng), rng.randint(-4, 4)),
        lambda a, k: all(phi(k * a) == k ** phi.degree_bound * phi(a) for phi in pieces)))
    if f.multiplicative:
        results.append(sampled_check(
            "pieces are multiplicative", samples, pair,
            lambda a, b: all(phi(a * b) == phi(a) * phi(b) for phi in pieces)))
        results.append(sampled_check(
            "pieces are orthogonal", samples, pair,
            lambda a, b: all((phi(a) * psi(b)).is_zero()
                             for phi, psi in itertools.permutations(pieces, 2))))
    return results


def compose(g: PolyMap, f: PolyMap) -> PolyMap:
    """g after f, of degree at most deg(g) * deg(f)."""
    if f.codomain != g.domain:
        raise OwnerMismatch(f"cannot compose {g.name} after {f.name}")
    return PolyMap(f.domain, g.codomain, lambda a: g(f(a)), g.degree_bound * f.degree_bound,
                   multiplicative=f.multiplicative and g.multiplicative, name=f"{g.name}∘{f.name}")


def product(f: PolyMap, g: PolyMap) -> PolyMap:
    """Pointwise product, of degree at most deg(f) + deg(g)."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise OwnerMismatch(f"cannot multiply {f.name} and {g.name}")
    return PolyMap(f.domain, f.codomain, lambda a: f(a) * g(a), f.degree_bound + g.degree_bound,
                   multiplicative=f.multiplicative and g.multiplicative, name=f"{f.name}·{g.name}")


def _congruence_sides(f: PolyMap, p: int, k: int, a: RingElement, c: RingElement):
    lhs = f(a + p ** k * c)
    correction = f.codomain.zero()
    for indices in itertools.product(range(1, p), repeat=k):
        coefficient = (-1) ** sum(indices) * prod(binomial(p, i) for i in indices)
        correction = correction + coefficient * f(a + prod(indices) * c)
    return lhs, correction


def congruence_check(f: PolyMap, p: int, k: int = 1, samples: int = DEFAULT_SAMPLES,
                     seed: Optional[int] = None, points: Optional[Sequence] = None) -> CheckResult:
    """
    Check f(a + p^k c) = f(a) + sum over i_1..i_k in 1..p-1 of
    (-1)^(i_1+...+i_k) C(p,i_1)...C(p,i_k) f(a + i_1...i_k c), and that the
    correction sum is divisible by p^k.

    ``points`` replaces the sampled (a, c) pairs when given.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"congruence needs an odd prime, got {p}")
    rng = make_rng(seed)

    def holds(a, c):
        lhs, correction = _congruence_sides(f, p, k, a, c)
        if lhs != f(a) + correction:
            return False
        try:
            divide_exact(correction, p ** k)
        except NotDivisible:
            return False
        return True

    name = f"{f.name} congruence mod {p}^{k}"
    if points is not None:
        from wittcalc.utils.sampling import exhaustive_check
        return exhaustive_check(name, [(f.domain(a), f.domain(c)) for a, c in points], holds)
    return sampled_check(name, samples,
                         lambda: (f.domain.random_element(rng), f.domain.random_element(rng)), holds)


def witt_congruence(f: PolyMap, p: int, a0, a1) -> CheckResult:
    """
    Check f(a_0^p + p a_1) = f(a_0)^p mod p, the first condition for
    (f(a_0), f(a_0^p + p a_1)) to be a ghost vector.
    """
    a0, a1 = f.domain(a0), f.domain(a1)
    difference = f(a0 ** p + p * a1) - f(a0) ** p
    name = f"{f.name}(a0^{p} + {p} a1) = {f.name}(a0)^{p} mod {p}"
    try:
        divide_exact(difference, p)
    except NotDivisible as exc:
        logger.warning("%s fails at (%s, %s)", name, a0, a1)
        return CheckResult(name, False, 1, witness=(a0, a1),
                           details={"difference": difference, "residue": exc.residue})
    return CheckResult(name, True, 1, details={"difference": difference})


# Built-in maps

def identity_map(ring: RingHandle) -> PolyMap:
    return PolyMap(ring, ring, lambda a: a, 1, name="id")


def power_map(ring: RingHandle, exponent: int) -> PolyMap:
    """a -> a^k, multiplicative and k-homogeneous."""
    return PolyMap(ring, ring, lambda a: a ** exponent, exponent, name=f"(-)^{exponent}")


def integer_homomorphism(codomain: RingHandle) -> PolyMap:
    """The unique unital ring map out of Z."""
    return PolyMap(IntegerRing(), codomain, lambda a: codomain.from_int(a.payload), 1, name=f"Z->{codomain.label}")


def ring_homomorphism(domain: PolynomialRing, codomain: RingHandle, images: Dict[str, RingElement],
                      name: str = "h") -> PolyMap:
    """The ring map out of a polynomial ring determined by the images of its variables."""
    targets = [codomain(images[v]) for v in domain.variables]

    def evaluate(a):
        total = codomain.zero()
        for monomial, coefficient in domain.terms(a):
            term = codomain.from_int(coefficient)
            for target, exponent in zip(targets, monomial):
                if exponent:
                    term = term * target ** exponent
            total = total + term
        return total

    return PolyMap(domain, codomain, evaluate, 1, name=name)
