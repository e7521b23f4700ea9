"""
Witt vectors over arbitrary exact rings.

p-typical vectors of finite length are the primary path; finite
divisor-closed truncation sets are supported with the divisor ghost map.
Ring operations evaluate universal integer polynomials that are computed
once per truncation set by solving the ghost equations over Z[a, b] and
then cached (in memory with cachetools, optionally in SQLite).
"""

import logging
import threading
from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy
from cachetools import LRUCache, cached
from cachetools.keys import hashkey
from sympy import Poly, ZZ
from sympy.polys.polyerrors import ExactQuotientFailed

from wittcalc.database import db
from wittcalc.models.polymap import PolyMap
from wittcalc.models.rings import (
    IntegerModRing,
    RingElement,
    RingHandle,
    divide_exact,
    is_p_torsion_free,
)
from wittcalc.utils.constants import (
    COEFFICIENT_BOUND,
    DEFAULT_SAMPLES,
    MAX_FINITE_TRUNCATION,
    MULTIPLICATIVITY_SAMPLES,
    POLY_CACHE_DB,
)
from wittcalc.utils.errors import (
    BadFrobeniusLift,
    BadTruncationSet,
    DescriptorError,
    NotDivisible,
    NotInGhostImage,
    NotMultiplicative,
    ObstructionWitness,
    TorsionBase,
    UnknownTorsion,
    UnsupportedIndex,
    ZeroDivisorDenominator,
)
from wittcalc.utils.sampling import CheckResult, binomial, is_prime, make_rng, sampled_check

logger = logging.getLogger(__name__)

Term = Tuple[Tuple[int, ...], int]


@dataclass(frozen=True)
class TruncationSet:
    """
    Index set of Witt coordinates.

    ``support`` lists the indexed integers in increasing order; ``prime`` is
    set for p-typical sets {1, p, ..., p^(m-1)}.
    """
    support: Tuple[int, ...]
    prime: Optional[int] = None

    @classmethod
    def p_typical(cls, p: int, m: int) -> "TruncationSet":
        if not is_prime(p):
            raise BadTruncationSet(f"{p} is not prime")
        if m < 1:
            raise BadTruncationSet(f"length {m} < 1")
        return cls(tuple(p ** i for i in range(m)), p)

    @classmethod
    def finite(cls, support: Sequence[int]) -> "TruncationSet":
        """A finite divisor-closed set of positive integers."""
        items = tuple(sorted(set(int(n) for n in support)))
        if not items or items[0] < 1:
            raise BadTruncationSet(f"{list(support)} must be non-empty positive integers")
        if len(items) > MAX_FINITE_TRUNCATION:
            raise BadTruncationSet(f"|S| = {len(items)} exceeds {MAX_FINITE_TRUNCATION}")
        for n in items:
            for d in range(1, n):
                if n % d == 0 and d not in items:
                    raise BadTruncationSet(f"{d} divides {n} but is missing")
        return cls(items)

    @property
    def length(self) -> int:
        return len(self.support)

    @property
    def is_p_typical(self) -> bool:
        return self.prime is not None

    def ghost_terms(self, j: int) -> List[Tuple[int, int, int]]:
        """(coordinate, weight, exponent) triples with w_j = sum weight * a_coordinate^exponent."""
        if self.prime is not None:
            p = self.prime
            return [(i, p ** i, p ** (j - i)) for i in range(j + 1)]
        n = self.support[j]
        return [(i, d, n // d) for i, d in enumerate(self.support) if n % d == 0]

    def leading_weight(self, j: int) -> int:
        return self.support[j]

    def primes(self) -> List[int]:
        """Primes dividing some element of the support; the ring must be free of their torsion."""
        out = set()
        for n in self.support:
            out.update(q for q in range(2, n + 1) if n % q == 0 and is_prime(q))
        return sorted(out)

    def shorter(self) -> "TruncationSet":
        if self.prime is None or self.length < 2:
            raise BadTruncationSet("only p-typical sets of length >= 2 can be shortened")
        return TruncationSet.p_typical(self.prime, self.length - 1)

    def longer(self) -> "TruncationSet":
        if self.prime is None:
            raise BadTruncationSet("only p-typical sets can be lengthened")
        return TruncationSet.p_typical(self.prime, self.length + 1)

    def __str__(self):
        if self.prime is not None:
            return f"p={self.prime}, m={self.length}"
        return f"S={list(self.support)}"


# Universal polynomials

def _symbols(prefix: str, count: int):
    return list(sympy.symbols(f"{prefix}0:{count}")) if count else []


def _ghost_poly(trunc: TruncationSet, j: int, coords: Sequence[Poly]) -> Poly:
    total = None
    for i, weight, exponent in trunc.ghost_terms(j):
        term = coords[i] ** exponent * weight
        total = term if total is None else total + term
    return total


def _solve_ghost(trunc: TruncationSet, targets: Sequence[Poly], length: int) -> List[Poly]:
    """Solve w_j(s) = targets[j] over Z[...]; integrality failure aborts."""
    solved = []
    for j in range(length):
        residual = targets[j]
        for i, weight, exponent in trunc.ghost_terms(j):
            if i != j:
                residual = residual - solved[i] ** exponent * weight
        try:
            solved.append(residual.exquo_ground(trunc.leading_weight(j)))
        except ExactQuotientFailed:
            logger.error("universal Witt polynomial not integral at %d for %s", j, trunc)
            raise NotInGhostImage(j, residual.as_expr())
    return solved


def _build_polynomials(trunc: TruncationSet, kind: str) -> List[Poly]:
    m = trunc.length
    a = _symbols("a", m)
    if kind in ("sum", "product"):
        b = _symbols("b", m)
        gens = a + b
        pa = [Poly(x, *gens, domain=ZZ) for x in a]
        pb = [Poly(x, *gens, domain=ZZ) for x in b]
        ghost_a = [_ghost_poly(trunc, j, pa) for j in range(m)]
        ghost_b = [_ghost_poly(trunc, j, pb) for j in range(m)]
        if kind == "sum":
            targets = [x + y for x, y in zip(ghost_a, ghost_b)]
        else:
            targets = [x * y for x, y in zip(ghost_a, ghost_b)]
        return _solve_ghost(trunc, targets, m)
    pa = [Poly(x, *a, domain=ZZ) for x in a]
    if kind == "negation":
        return _solve_ghost(trunc, [-_ghost_poly(trunc, j, pa) for j in range(m)], m)
    if kind == "frobenius":
        shorter = trunc.shorter()
        targets = [_ghost_poly(trunc, j + 1, pa) for j in range(m - 1)]
        return _solve_ghost(shorter, targets, m - 1)
    raise ValueError(f"unknown polynomial kind {kind!r}")


def _gens_for(trunc: TruncationSet, kind: str):
    m = trunc.length
    return _symbols("a", m) + (_symbols("b", m) if kind in ("sum", "product") else [])


_cache_lock = threading.Lock()


@cached(cache={}, key=lambda trunc, kind: hashkey(trunc, kind), lock=_cache_lock)
def universal_polynomials(trunc: TruncationSet, kind: str) -> Tuple[Tuple[Term, ...], ...]:
    """
    Integer polynomials giving each output coordinate of ``kind`` in
    {sum, product, negation, frobenius}, as (monomial, coefficient) terms in
    the variables a_0..a_{m-1} (then b_0..b_{m-1} for binary operations).
    """
    gens = _gens_for(trunc, kind)
    polys = None
    persistent = POLY_CACHE_DB is not None and trunc.is_p_typical
    if persistent:
        db.init_database()
        stored = db.load_polynomials(trunc.prime, trunc.length, kind)
        if stored is not None:
            polys = [Poly(sympy.sympify(expr), *gens, domain=ZZ) for expr in stored]
            logger.debug("loaded %s polynomials for %s from %s", kind, trunc, POLY_CACHE_DB)
    if polys is None:
        polys = _build_polynomials(trunc, kind)
        logger.info("built universal %s polynomials for %s", kind, trunc)
        if persistent:
            db.store_polynomials(trunc.prime, trunc.length, kind, [sympy.srepr(p.as_expr()) for p in polys])
    return tuple(tuple((monom, int(coeff)) for monom, coeff in poly.terms() if coeff) for poly in polys)


def universal_expressions(trunc: TruncationSet, kind: str) -> List[sympy.Expr]:
    """The cached polynomials as sympy expressions."""
    gens = _gens_for(trunc, kind)
    return [Poly.from_dict(dict(terms) or {(0,) * len(gens): 0}, *gens, domain=ZZ).as_expr()
            for terms in universal_polynomials(trunc, kind)]


def evaluate_terms(terms: Sequence[Term], values: Sequence[RingElement], ring: RingHandle) -> RingElement:
    """Evaluate an integer polynomial at ring elements."""
    powers: Dict[Tuple[int, int], RingElement] = {}
    total = ring.zero()
    for monom, coeff in terms:
        term = ring.from_int(coeff)
        for i, exponent in enumerate(monom):
            if exponent:
                if (i, exponent) not in powers:
                    powers[(i, exponent)] = values[i] ** exponent
                term = term * powers[(i, exponent)]
        total = total + term
    return total


# Witt vector rings

class WittVector(RingElement):
    """An element of a ``WittRing``; ``coords`` are elements of the base ring."""

    @property
    def coords(self) -> List[RingElement]:
        return [self.owner.base.wrap(c) for c in self.payload]

    def ghost(self) -> List[RingElement]:
        return ghost(self)


@cached(cache=LRUCache(maxsize=1024), key=lambda ring, n: hashkey(ring.key, n), lock=threading.Lock())
def _integer_payload(ring: "WittRing", n: int) -> Tuple:
    """n * 1 by double-and-add."""
    result = ring._zero_payload()
    base = ring._one_payload() if n >= 0 else ring.neg(ring._one_payload())
    k = abs(n)
    while k:
        if k & 1:
            result = ring.add(result, base)
        base = ring.add(base, base)
        k >>= 1
    return result


class WittRing(RingHandle):
    """
    W_S(base) for a truncation set S.

    Args:
        base: coefficient ring
        trunc: truncation set
        strategy: "universal" evaluates the cached integer polynomials and
            works over any base; "ghost" adds and multiplies ghost
            components and solves back, which needs a torsion-free base
    """

    element_class = WittVector

    def __init__(self, base: RingHandle, trunc: TruncationSet, strategy: str = "universal"):
        if strategy not in ("universal", "ghost"):
            raise ValueError(f"unknown Witt arithmetic strategy {strategy!r}")
        self.base = base
        self.trunc = trunc
        self.strategy = strategy
        if strategy == "ghost":
            for q in trunc.primes():
                if not is_p_torsion_free(base, q):
                    raise ZeroDivisorDenominator(f"ghost arithmetic needs {base.label} free of {q}-torsion")

    @classmethod
    def p_typical(cls, base: RingHandle, p: int, m: int, strategy: str = "universal") -> "WittRing":
        return cls(base, TruncationSet.p_typical(p, m), strategy)

    @property
    def prime(self) -> Optional[int]:
        return self.trunc.prime

    @property
    def length(self) -> int:
        return self.trunc.length

    @property
    def key(self):
        return ("witt", self.base.key, self.trunc)

    @property
    def label(self):
        if self.trunc.is_p_typical:
            return f"W_{self.length}({self.base.label}; p={self.prime})"
        return f"W_{list(self.trunc.support)}({self.base.label})"

    def vector(self, coords: Sequence) -> WittVector:
        if len(coords) != self.length:
            raise ValueError(f"{self.label} needs {self.length} coordinates, got {len(coords)}")
        return self.wrap(tuple(self.base(c).payload for c in coords))

    def _coords(self, payload) -> List[RingElement]:
        return [self.base.wrap(c) for c in payload]

    def _apply(self, kind: str, *payloads) -> Tuple:
        values = [c for payload in payloads for c in self._coords(payload)]
        polys = universal_polynomials(self.trunc, kind)
        return tuple(evaluate_terms(terms, values, self.base).payload for terms in polys)

    def _via_ghost(self, op: Callable, x, y) -> Tuple:
        gx = ghost(self.wrap(x))
        gy = ghost(self.wrap(y))
        return unghost([op(a, b) for a, b in zip(gx, gy)], self.trunc, self.base).payload

    def _zero_payload(self):
        return tuple(self.base.zero().payload for _ in range(self.length))

    def add(self, x, y):
        zero = self._zero_payload()
        if y == zero:
            return x
        if x == zero:
            return y
        if self.strategy == "ghost":
            return self._via_ghost(lambda a, b: a + b, x, y)
        return self._apply("sum", x, y)

    def mul(self, x, y):
        zero = self._zero_payload()
        if x == zero or y == zero:
            return zero
        one = self._one_payload()
        if y == one:
            return x
        if x == one:
            return y
        if self.strategy == "ghost":
            return self._via_ghost(lambda a, b: a * b, x, y)
        return self._apply("product", x, y)

    def neg(self, x):
        if self.strategy == "ghost":
            return unghost([-w for w in ghost(self.wrap(x))], self.trunc, self.base).payload
        return self._apply("negation", x)

    def _one_payload(self):
        return (self.base.one().payload,) + tuple(self.base.zero().payload for _ in range(self.length - 1))

    def from_int(self, n):
        return self.wrap(_integer_payload(self, int(n)))

    def divide_exact(self, e, d):
        for q in self.trunc.primes():
            if not is_p_torsion_free(self.base, q):
                raise ZeroDivisorDenominator(f"{self.label}: base has {q}-torsion")
        quotients = []
        for j, (num, den) in enumerate(zip(ghost(e), ghost(d))):
            try:
                quotients.append(divide_exact(num, den))
            except NotDivisible:
                raise NotDivisible(e, d, e)
        try:
            return unghost(quotients, self.trunc, self.base)
        except NotInGhostImage:
            raise NotDivisible(e, d, e)

    def is_p_torsion_free(self, p):
        if all(is_p_torsion_free(self.base, q) for q in self.trunc.primes()):
            return is_p_torsion_free(self.base, p)
        if isinstance(self.base, IntegerModRing):
            return gcd(p, self.base.modulus) == 1
        raise UnknownTorsion(f"cannot decide {p}-torsion of {self.label}")

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        return self.wrap(tuple(self.base.random_element(rng, bound).payload for _ in range(self.length)))

    def parse(self, literal):
        if not isinstance(literal, (list, tuple)):
            raise DescriptorError(f"a Witt vector literal is a list, got {literal!r}")
        return self.vector([self.base.parse(c) for c in literal])

    def to_json(self, payload):
        return [self.base.to_json(c) for c in payload]

    def format(self, payload):
        return "(" + ", ".join(self.base.format(c) for c in payload) + ")"


# Operations

def ghost(v: WittVector) -> List[RingElement]:
    """Ghost components w_j = sum weight_i * a_i^exponent."""
    ring = v.owner
    coords = v.coords
    out = []
    for j in range(ring.length):
        total = ring.base.zero()
        for i, weight, exponent in ring.trunc.ghost_terms(j):
            total = total + weight * coords[i] ** exponent
        out.append(total)
    return out


def unghost(g: Sequence, trunc: TruncationSet, ring: RingHandle) -> WittVector:
    """
    Solve w_j(a) = g_j coordinate by coordinate.

    Raises:
        NotInGhostImage: with the coordinate and the non-divisible residue
    """
    for q in trunc.primes():
        if not is_p_torsion_free(ring, q):
            raise ZeroDivisorDenominator(f"{ring.label} has {q}-torsion; ghost components do not determine vectors")
    g = [ring(x) for x in g]
    if len(g) != trunc.length:
        raise ValueError(f"expected {trunc.length} ghost components, got {len(g)}")
    coords: List[RingElement] = []
    for j in range(trunc.length):
        residual = g[j]
        for i, weight, exponent in trunc.ghost_terms(j):
            if i != j:
                residual = residual - weight * coords[i] ** exponent
        try:
            coords.append(divide_exact(residual, trunc.leading_weight(j)))
        except NotDivisible as exc:
            raise NotInGhostImage(j, exc.residue)
    return WittRing(ring, trunc).vector(coords)


def in_ghost_image(g: Sequence, trunc: TruncationSet, ring: RingHandle) -> bool:
    try:
        unghost(g, trunc, ring)
    except NotInGhostImage:
        return False
    return True


def witt_add(u: WittVector, v: WittVector) -> WittVector:
    return u + v


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    return u * v


def witt_neg(u: WittVector) -> WittVector:
    return -u


def frobenius(v: WittVector) -> WittVector:
    """F: W_m -> W_{m-1} with w_j(F a) = w_{j+1}(a)."""
    ring = v.owner
    target = WittRing(ring.base, ring.trunc.shorter(), ring.strategy)
    polys = universal_polynomials(ring.trunc, "frobenius")
    return target.vector([evaluate_terms(terms, v.coords, ring.base) for terms in polys])


def verschiebung(v: WittVector) -> WittVector:
    """V: W_m -> W_{m+1}, (a_0, ..., a_{m-1}) -> (0, a_0, ..., a_{m-1})."""
    ring = v.owner
    target = WittRing(ring.base, ring.trunc.longer(), ring.strategy)
    return target.vector([ring.base.zero()] + v.coords)


def teichmuller(a: RingElement, trunc: TruncationSet) -> WittVector:
    """[a] = (a, 0, ..., 0)."""
    ring = WittRing(a.owner, trunc)
    return ring.vector([a] + [a.owner.zero()] * (trunc.length - 1))


def restrict(v: WittVector, support: Optional[Sequence[int]] = None) -> WittVector:
    """Drop the last p-typical coordinate, or restrict to a divisor-closed subset."""
    ring = v.owner
    if support is None:
        target = TruncationSet.p_typical(ring.prime, ring.length - 1) if ring.trunc.is_p_typical \
            else TruncationSet.finite(ring.trunc.support[:-1])
    elif ring.trunc.is_p_typical:
        target = TruncationSet.p_typical(ring.prime, len(support))
    else:
        target = TruncationSet.finite(support)
    coords = dict(zip(ring.trunc.support, v.coords))
    missing = [n for n in target.support if n not in coords]
    if missing:
        raise BadTruncationSet(f"{missing} not in {list(ring.trunc.support)}")
    return WittRing(ring.base, target, ring.strategy).vector([coords[n] for n in target.support])


def check_frobenius_lift(phi: Callable, ring: RingHandle, p: int, samples: int = DEFAULT_SAMPLES,
                         seed: Optional[int] = None):
    """Sampled check that ``phi`` is a ring endomorphism with phi(a) = a^p mod p."""
    rng = make_rng(seed)

    def is_lift(a, b):
        if phi(a + b) != phi(a) + phi(b) or phi(a * b) != phi(a) * phi(b):
            return False
        try:
            divide_exact(phi(a) - a ** p, p)
        except NotDivisible:
            return False
        return True

    result = sampled_check(f"Frobenius lift on {ring.label}", samples,
                           lambda: (ring.random_element(rng), ring.random_element(rng)), is_lift)
    if phi(ring.one()) != ring.one() or not result:
        raise BadFrobeniusLift(f"not a Frobenius lift at {result.witness}")
    return result


def dwork_membership(g: Sequence[RingElement], p: int, phi: Optional[Callable] = None,
                     samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> bool:
    """
    Dwork criterion: (g_0, g_1, ...) is a ghost vector iff
    phi(g_{j-1}) = g_j mod p^j for every j, for any Frobenius lift phi.
    ``phi`` defaults to the identity, which is a lift on rings where a^p = a mod p.
    """
    ring = g[0].owner
    phi = phi or (lambda a: a)
    check_frobenius_lift(phi, ring, p, samples=samples, seed=seed)
    for j in range(1, len(g)):
        try:
            divide_exact(g[j] - phi(g[j - 1]), p ** j)
        except NotDivisible:
            logger.debug("Dwork congruence fails at %d for %s", j, list(g))
            return False
    return True


_multiplicativity_lock = threading.Lock()


@cached(cache=LRUCache(maxsize=256), key=lambda f, samples, seed: hashkey(f, samples, seed),
        lock=_multiplicativity_lock)
def _multiplicativity(f: PolyMap, samples: int, seed: Optional[int]) -> CheckResult:
    rng = make_rng(seed)
    return sampled_check(f"{f.name} is multiplicative", samples,
                         lambda: (f.domain.random_element(rng), f.domain.random_element(rng)),
                         lambda a, b: f(a * b) == f(a) * f(b))


def check_multiplicative(f: PolyMap, samples: int = MULTIPLICATIVITY_SAMPLES,
                         seed: Optional[int] = None) -> CheckResult:
    """
    Raises:
        NotMultiplicative: f is declared non-multiplicative, or a sampled pair fails
    """
    if not f.multiplicative:
        raise NotMultiplicative(f.name)
    result = _multiplicativity(f, samples, seed)
    if not result:
        raise NotMultiplicative(f.name, result.witness)
    return result


def lift_polymap(f: PolyMap, p: int, m: int, a, seed: Optional[int] = None) -> WittVector:
    """
    W_m(f)(a): the unique b with w_j(b) = f(w_j(a)) for all j.

    Raises:
        ObstructionWitness: the ghost vector f(w(a)) has no preimage
        TorsionBase: the codomain has p-torsion
        NotMultiplicative: f fails f(ab) = f(a) f(b)
    """
    if not is_p_torsion_free(f.codomain, p):
        raise TorsionBase(f"{f.codomain.label} has {p}-torsion")
    check_multiplicative(f, seed=seed)
    if f.degree_bound >= p:
        logger.warning("%s has degree bound %d >= %d; a lift may not exist", f.name, f.degree_bound, p)
    trunc = TruncationSet.p_typical(p, m)
    a = WittRing(f.domain, trunc)(a) if isinstance(a, RingElement) else WittRing(f.domain, trunc).vector(a)
    targets = [f(w) for w in ghost(a)]
    try:
        return unghost(targets, trunc, f.codomain)
    except NotInGhostImage as exc:
        logger.warning("%s does not lift to W_%d at coordinate %d (residue %s)", f.name, m, exc.index, exc.residue)
        raise ObstructionWitness(exc.index, exc.residue) from exc


def lifted_map(f: PolyMap, p: int, m: int) -> PolyMap:
    """W_m(f) as a polynomial map between Witt rings."""
    trunc = TruncationSet.p_typical(p, m)
    return PolyMap(WittRing(f.domain, trunc), WittRing(f.codomain, trunc),
                   lambda a: lift_polymap(f, p, m, a), f.degree_bound,
                   multiplicative=f.multiplicative, name=f"W_{m}({f.name})")


@dataclass(frozen=True)
class LiftFormula:
    """
    Closed form of one component of W_m(f) for a map of degree n < p:
    b_0 = f(a_0) and b_1 = sum_{i=1}^{p-1} coefficient_i f(a_0^p + i a_1).
    """
    p: int
    index: int
    coefficients: Tuple[Tuple[int, int], ...]
    expression: sympy.Expr

    def evaluate(self, f: Callable, a0: RingElement, a1: RingElement) -> RingElement:
        if self.index == 0:
            return f(a0)
        base = a0 ** self.p
        total = None
        for coefficient, i in self.coefficients:
            term = coefficient * f(base + i * a1)
            total = term if total is None else total + term
        return total


def universal_lift_formula(n: int, p: int, j: int) -> LiftFormula:
    """
    The j-th Witt component of W(f) as a formal expression in f, a_0, a_1.

    Raises:
        UnsupportedIndex: for j > 1
    """
    if j not in (0, 1):
        raise UnsupportedIndex(f"closed forms exist only for j <= 1, got {j}")
    if not is_prime(p) or n >= p:
        raise ValueError(f"need a prime p > n, got p={p}, n={n}")
    f = sympy.Function("f")
    a0, a1 = sympy.symbols("a0 a1")
    if j == 0:
        return LiftFormula(p, 0, (), f(a0))
    coefficients = tuple(((-1) ** i * binomial(p, i) // p, i) for i in range(1, p))
    expression = sympy.Add(*[c * f(a0 ** p + i * a1) for c, i in coefficients])
    return LiftFormula(p, 1, coefficients, expression)


# Limits of the degree bound

def _w2_fp(p: int) -> WittRing:
    return WittRing.p_typical(IntegerModRing(p), p, 2)


def power_map_lift_defect(p: int) -> Dict:
    """
    a -> a^p is the identity on F_p, yet on W_2(F_p) the p-th power of
    V(1) = (0, 1) is 0 while the identity keeps it: the degree-p map has
    no functorial lift agreeing with the identity.
    """
    ring = _w2_fp(p)
    v = ring.vector([0, 1])
    powered = v ** p
    return {"vector": v.to_json(), "identity": v.to_json(), "power": powered.to_json(),
            "differs": powered != v}


def composition_defect(p: int, n: int, k: int) -> Dict:
    """
    Find v in W_2(F_p) with (v^k)^n != v^e, where e in 1..p-1 is the exponent
    with a^e = a^(nk) on F_p.
    """
    if n * k < p:
        raise ValueError(f"n*k = {n * k} < p = {p}: composition is functorial")
    ring = _w2_fp(p)
    e = (n * k - 1) % (p - 1) + 1
    for a0 in range(p):
        for a1 in range(p):
            v = ring.vector([a0, a1])
            if (v ** k) ** n != v ** e:
                return {"vector": v.to_json(), "exponent": e,
                        "composite": ((v ** k) ** n).to_json(), "reduced": (v ** e).to_json()}
    return {"vector": None, "exponent": e}


def sum_defect(p: int) -> Dict:
    """(p+1) a = a on F_p but (p+1) v != v for v = 1 in W_2(F_p)."""
    ring = _w2_fp(p)
    v = ring.one()
    scaled = (p + 1) * v
    return {"vector": v.to_json(), "scaled": scaled.to_json(), "differs": scaled != v}
