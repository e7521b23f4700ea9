"""
The free Z/2-Tambara functor on a presheaf pair X <- Y.

The top ring is Z[X] with the involution of X. The bottom ring is free
abelian on three kinds of generators:

    s1  monomials m g m̄ over the orbits X/Z2 and Y (the norms N(m) times g)
    s2  involution-fixed monomials k of M(X) (the transfers tr(k))
    s3  orbits {h, h̄} of non-fixed monomials (the transfers tr(h))

Monomials are exponent tuples over the listed order of X; an s3 orbit is
stored by its member that comes first in lexicographic monomial order.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from wittcalc.models.polymap import ring_homomorphism
from wittcalc.models.rings import (
    Involution,
    PolynomialRing,
    RingElement,
    RingHandle,
)
from wittcalc.models.schemas import PresheafPairDescriptor
from wittcalc.models.tambara import (
    TambaraMorphism,
    Z2Tambara,
    from_involution_ring,
    is_cohomological,
)
from wittcalc.utils.constants import COEFFICIENT_BOUND, DEFAULT_SAMPLES, FREE_TAMBARA_DEGREE
from wittcalc.utils.errors import (
    DescriptorError,
    NotCohomological,
    NotCompatible,
    NotDivisible,
    NotEquivariant,
    ZeroDivisorDenominator,
)
from wittcalc.utils.sampling import CheckResult, binomial, exhaustive_check

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class PresheafPair:
    """
    X with an involution, Y, and res: Y -> X^{Z/2}.

    ``points`` fixes the total order of X; ``swap[i]`` is the index of the
    partner of point i; ``orbits`` lists orbit representatives.
    """
    points: Tuple[str, ...]
    swap: Tuple[int, ...]
    ys: Tuple[str, ...]
    res: Tuple[int, ...]

    @classmethod
    def from_orbits(cls, orbits: Sequence[Sequence[str]], ys: Sequence[str] = (),
                    res: Optional[Dict[str, str]] = None) -> "PresheafPair":
        points: List[str] = []
        swap: List[int] = []
        for orbit in orbits:
            if len(orbit) == 1:
                swap.append(len(points))
                points.append(orbit[0])
            elif len(orbit) == 2:
                swap.extend([len(points) + 1, len(points)])
                points.extend(orbit)
            else:
                raise DescriptorError(f"orbit {list(orbit)} must have one or two points")
        if len(set(points)) != len(points) or set(points) & set(ys):
            raise DescriptorError("point names must be distinct")
        if not points:
            raise DescriptorError("X must be non-empty")
        res = res or {}
        images = []
        for y in ys:
            if res.get(y) not in points:
                raise DescriptorError(f"res({y}) = {res.get(y)!r} is not a point of X")
            i = points.index(res[y])
            if swap[i] != i:
                raise DescriptorError(f"res({y}) = {res[y]} is not fixed by the involution")
            images.append(i)
        return cls(tuple(points), tuple(swap), tuple(ys), tuple(images))

    @classmethod
    def from_descriptor(cls, spec) -> "PresheafPair":
        if not isinstance(spec, PresheafPairDescriptor):
            spec = PresheafPairDescriptor.model_validate(spec)
        return cls.from_orbits(spec.X, spec.Y, spec.res)

    @property
    def orbits(self) -> Tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.swap) if i <= j)

    def tau(self, mono: Monomial) -> Monomial:
        out = [0] * len(self.points)
        for i, e in enumerate(mono):
            out[self.swap[i]] += e
        return tuple(out)

    def is_fixed(self, mono: Monomial) -> bool:
        return self.tau(mono) == mono

    def canonical(self, mono: Monomial) -> Monomial:
        """The representative of {h, h̄} stored in s3; u before ū."""
        return max(mono, self.tau(mono))

    def norm_variables(self) -> Tuple[str, ...]:
        """Variables of s1: the orbit representatives followed by Y."""
        return tuple(f"N({self.points[i]})" for i in self.orbits) + self.ys

    def res_monomial(self, n: Monomial) -> Monomial:
        """res(m g m̄) = m m̄ res(g) as a monomial of M(X)."""
        out = [0] * len(self.points)
        for e, i in zip(n, self.orbits):
            out[i] += e
            out[self.swap[i]] += e
        for e, i in zip(n[len(self.orbits):], self.res):
            out[i] += e
        return tuple(out)

    def norm_monomial(self, mono: Monomial) -> Monomial:
        """N(m) = m 1 m̄ as an s1 monomial."""
        orbit_index = {}
        for k, i in enumerate(self.orbits):
            orbit_index[i] = k
            orbit_index[self.swap[i]] = k
        out = [0] * (len(self.orbits) + len(self.ys))
        for i, e in enumerate(mono):
            out[orbit_index[i]] += e
        return tuple(out)


def _add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _freeze(d: Dict[Monomial, int]) -> Tuple[Tuple[Monomial, int], ...]:
    return tuple(sorted((m, c) for m, c in d.items() if c))


class FreeTopElement(RingElement):
    """An element of the bottom ring of the free Tambara functor; payload is (s1, s2, s3)."""

    @property
    def s1(self) -> Dict[Monomial, int]:
        return dict(self.payload[0])

    @property
    def s2(self) -> Dict[Monomial, int]:
        return dict(self.payload[1])

    @property
    def s3(self) -> Dict[Monomial, int]:
        return dict(self.payload[2])


class FreeTambaraRing(RingHandle):
    """The bottom ring Z(M(Y ⨿ X/Z2)) ⊕ Z(M(X)^{Z/2}) ⊕ Z(M(X)^free/Z2)."""

    element_class = FreeTopElement

    def __init__(self, pair: PresheafPair):
        self.pair = pair
        self._s1_length = len(pair.orbits) + len(pair.ys)

    @property
    def key(self):
        return ("free-tambara", self.pair)

    @property
    def label(self):
        return f"A[{','.join(self.pair.points)};{','.join(self.pair.ys)}]"

    def make(self, s1=None, s2=None, s3=None) -> FreeTopElement:
        return self.wrap((_freeze(s1 or {}), _freeze(s2 or {}), _freeze(s3 or {})))

    def transfer_monomial(self, mono: Monomial, coefficient: int = 1) -> FreeTopElement:
        """tr of a monomial of M(X): s2 when fixed, s3 otherwise."""
        if self.pair.is_fixed(mono):
            return self.make(s2={mono: coefficient})
        return self.make(s3={self.pair.canonical(mono): coefficient})

    def add(self, x, y):
        parts = []
        for a, b in zip(x, y):
            merged = dict(a)
            for m, c in b:
                merged[m] = merged.get(m, 0) + c
            parts.append(_freeze(merged))
        return tuple(parts)

    def neg(self, x):
        return tuple(tuple((m, -c) for m, c in part) for part in x)

    def _trace_terms(self, mono: Monomial, coefficient: int, s2: Dict, s3: Dict):
        if self.pair.is_fixed(mono):
            s2[mono] = s2.get(mono, 0) + coefficient
        else:
            key = self.pair.canonical(mono)
            s3[key] = s3.get(key, 0) + coefficient

    def mul(self, x, y):
        pair = self.pair
        s1: Dict[Monomial, int] = {}
        s2: Dict[Monomial, int] = {}
        s3: Dict[Monomial, int] = {}
        (x1, x2, x3), (y1, y2, y3) = x, y
        for n, c in x1:
            for n2, d in y1:
                key = _add(n, n2)
                s1[key] = s1.get(key, 0) + c * d
        # s1 acts on the transfer ideal through res
        for left, right in ((x1, y), (y1, x)):
            for n, c in left:
                r = pair.res_monomial(n)
                for k, d in right[1]:
                    self._trace_terms(_add(r, k), c * d, s2, s3)
                for h, d in right[2]:
                    self._trace_terms(_add(r, h), c * d, s2, s3)
        for k, c in x2:
            for k2, d in y2:
                self._trace_terms(_add(k, k2), 2 * c * d, s2, s3)
        for left, right in ((x2, y3), (y2, x3)):
            for k, c in left:
                for h, d in right:
                    self._trace_terms(_add(k, h), 2 * c * d, s2, s3)
        # (h + h̄)(h' + h̄') = tr(h h') + tr(h h̄'); both products fixed lands twice in s2
        for h, c in x3:
            for h2, d in y3:
                self._trace_terms(_add(h, h2), c * d, s2, s3)
                self._trace_terms(_add(h, pair.tau(h2)), c * d, s2, s3)
        return (_freeze(s1), _freeze(s2), _freeze(s3))

    def from_int(self, n):
        return self.make(s1={(0,) * self._s1_length: int(n)})

    def divide_exact(self, e, d):
        """Coefficientwise division by an integer; the group is free on the monomial basis."""
        s1, s2, s3 = d.payload
        constant = (0,) * self._s1_length
        if s2 or s3 or any(m != constant for m, _ in s1):
            raise ZeroDivisorDenominator(f"{self.label} only divides by integers")
        n = dict(s1).get(constant, 0)
        if n == 0:
            raise ZeroDivisorDenominator(f"division by 0 in {self.label}")
        quotient = self.wrap(tuple(_freeze({m: c // n for m, c in part}) for part in e.payload))
        if any(c % n for part in e.payload for _, c in part):
            raise NotDivisible(e, d, e - quotient * d)
        return quotient

    def is_p_torsion_free(self, p):
        return True

    def _random_monomial(self, rng, length: int, degree: int) -> Monomial:
        exps = [0] * length
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(length)] += 1
        return tuple(exps)

    def random_element(self, rng, bound=COEFFICIENT_BOUND, degree: int = 2, terms: int = 2):
        n_points = len(self.pair.points)
        s1, s2, s3 = {}, {}, {}
        for _ in range(rng.randint(1, terms)):
            s1[self._random_monomial(rng, self._s1_length, degree)] = rng.randint(-bound, bound)
        for _ in range(rng.randint(0, terms)):
            self._trace_terms(self._random_monomial(rng, n_points, degree), rng.randint(-bound, bound), s2, s3)
        return self.make(s1, s2, s3)

    def basis(self, degree: int) -> List[FreeTopElement]:
        """All additive generators whose monomial has total degree <= ``degree``."""
        out = []
        for n in _monomials(self._s1_length, degree):
            out.append(self.make(s1={n: 1}))
        seen = set()
        for mono in _monomials(len(self.pair.points), degree):
            key = self.pair.canonical(mono)
            if key not in seen:
                seen.add(key)
                out.append(self.transfer_monomial(mono))
        return out

    def parse(self, literal):
        if isinstance(literal, int) or (isinstance(literal, str) and literal.lstrip("-").isdigit()):
            return self.from_int(int(literal))
        if isinstance(literal, dict):
            parts = []
            for name in ("s1", "s2", "s3"):
                parts.append({tuple(int(e) for e in mono): int(c) for mono, c in literal.get(name, [])})
            s2, s3 = {}, {}
            for mono, c in itertools.chain(parts[1].items(), parts[2].items()):
                self._trace_terms(mono, c, s2, s3)
            return self.make(parts[0], s2, s3)
        raise DescriptorError(f"cannot parse {literal!r} in {self.label}")

    def to_json(self, payload):
        return {name: [[list(m), str(c)] for m, c in part] for name, part in zip(("s1", "s2", "s3"), payload)}

    def _monomial_text(self, mono: Monomial, names: Sequence[str]) -> str:
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, mono) if e]
        return "*".join(factors) or "1"

    def format(self, payload):
        pair = self.pair
        terms = []
        for m, c in payload[0]:
            terms.append(f"{c}*[{self._monomial_text(m, pair.norm_variables())}]")
        for m, c in payload[1]:
            terms.append(f"{c}*tr({self._monomial_text(m, pair.points)})")
        for m, c in payload[2]:
            text = self._monomial_text(m, pair.points)
            partner = self._monomial_text(pair.tau(m), pair.points)
            terms.append(f"{c}*({text}+{partner})")
        return " + ".join(terms) if terms else "0"


def _monomials(length: int, degree: int) -> Iterable[Monomial]:
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(length), total):
            exps = [0] * length
            for i in combo:
                exps[i] += 1
            yield tuple(exps)


# The Tambara functor

def _top_ring(pair: PresheafPair) -> Tuple[PolynomialRing, Involution]:
    ring = PolynomialRing(pair.points)
    swaps = {pair.points[i]: pair.points[j] for i, j in enumerate(pair.swap) if i < j}
    involution = Involution.from_variable_swap(ring, swaps) if swaps else Involution.identity(ring)
    return ring, involution


def free_structure(kind: str, arg: RingElement, bottom: FreeTambaraRing, top: PolynomialRing,
                   involution: Involution) -> RingElement:
    """res, tr or N of the free Tambara functor."""
    pair = bottom.pair
    if kind == "res":
        (s1, s2, s3) = bottom(arg).payload
        terms: Dict[Monomial, int] = {}

        def put(mono, c):
            terms[mono] = terms.get(mono, 0) + c

        for n, c in s1:
            put(pair.res_monomial(n), c)
        for k, c in s2:
            put(k, 2 * c)
        for h, c in s3:
            put(h, c)
            put(pair.tau(h), c)
        return top.from_terms(terms)
    if kind == "tr":
        total = bottom.zero()
        for mono, c in top.terms(top(arg)):
            total = total + bottom.transfer_monomial(mono, c)
        return total
    if kind == "N":
        parts = top.terms(top(arg))
        total = bottom.zero()
        one_transfer = bottom.transfer_monomial((0,) * len(pair.points))
        for mono, c in parts:
            scalar = bottom.from_int(c) + binomial(c, 2) * one_transfer
            total = total + scalar * bottom.make(s1={pair.norm_monomial(mono): 1})
        for (m1, c1), (m2, c2) in itertools.combinations(parts, 2):
            total = total + bottom.transfer_monomial(_add(m1, pair.tau(m2)), c1 * c2)
        return total
    raise ValueError(f"unknown structure map {kind!r}")


def free_mul(a: FreeTopElement, b: FreeTopElement) -> FreeTopElement:
    return a * b


def free_tambara(pair: PresheafPair) -> Z2Tambara:
    """𝔸[X;Y] as a Z/2-Tambara functor."""
    top, involution = _top_ring(pair)
    bottom = FreeTambaraRing(pair)
    logger.info("built free Tambara functor on X=%s, Y=%s", list(pair.points), list(pair.ys))
    return Z2Tambara(
        top=top,
        involution=involution,
        bottom=bottom,
        res=lambda b: free_structure("res", b, bottom, top, involution),
        tr=lambda a: free_structure("tr", a, bottom, top, involution),
        norm=lambda a: free_structure("N", a, bottom, top, involution),
        name=bottom.label,
    )


def check_ring_structure(bottom: FreeTambaraRing, degree: int = FREE_TAMBARA_DEGREE) -> List[CheckResult]:
    """Unit, commutativity and associativity on all generator triples of total degree <= ``degree``."""
    basis = bottom.basis(degree)

    def degree_of(e):
        return max(sum(m) for part in e.payload for m, _ in part)

    one = bottom.one()
    pairs = [(a, b) for a, b in itertools.combinations_with_replacement(basis, 2)
             if degree_of(a) + degree_of(b) <= degree]
    triples = [(a, b, c) for a, b, c in itertools.combinations_with_replacement(basis, 3)
               if degree_of(a) + degree_of(b) + degree_of(c) <= degree]
    return [
        exhaustive_check(f"{bottom.label}: unit", [(a,) for a in basis], lambda a: one * a == a),
        exhaustive_check(f"{bottom.label}: commutativity", pairs, lambda a, b: a * b == b * a),
        exhaustive_check(f"{bottom.label}: associativity",
                         [p for a, b, c in triples for p in ((a, b, c), (a, c, b), (b, a, c))],
                         lambda a, b, c: (a * b) * c == a * (b * c)),
    ]


# Adjunction

def adjunction_extend(free: Z2Tambara, target: Z2Tambara, alpha: Dict[str, RingElement],
                      beta: Dict[str, RingElement]) -> TambaraMorphism:
    """
    The unique Tambara morphism out of 𝔸[X;Y] extending alpha on X and beta on Y.

    Raises:
        NotEquivariant: alpha does not commute with the involutions
        NotCompatible: res(beta(y)) differs from alpha(res(y))
    """
    bottom: FreeTambaraRing = free.bottom
    pair = bottom.pair
    alpha = {x: target.top(alpha[x]) for x in pair.points}
    beta = {y: target.bottom(beta[y]) for y in pair.ys}
    for i, x in enumerate(pair.points):
        if alpha[pair.points[pair.swap[i]]] != target.involution(alpha[x]):
            raise NotEquivariant(f"alpha({pair.points[pair.swap[i]]}) != tau(alpha({x}))")
    for y, i in zip(pair.ys, pair.res):
        if target.res(beta[y]) != alpha[pair.points[i]]:
            raise NotCompatible(f"res(beta({y})) != alpha({pair.points[i]})")
    top_map = ring_homomorphism(free.top, target.top, alpha, name="alpha*")

    def monomial_image(mono: Monomial) -> RingElement:
        out = target.top.one()
        for x, e in zip(pair.points, mono):
            if e:
                out = out * alpha[x] ** e
        return out

    norms = [target.norm(alpha[pair.points[i]]) for i in pair.orbits]
    gens = norms + [beta[y] for y in pair.ys]

    def bottom_map(b):
        s1, s2, s3 = bottom(b).payload
        total = target.bottom.zero()
        for n, c in s1:
            term = target.bottom.one()
            for g, e in zip(gens, n):
                if e:
                    term = term * g ** e
            total = total + c * term
        for mono, c in itertools.chain(s2, s3):
            total = total + c * target.tr(monomial_image(mono))
        return total

    return TambaraMorphism(free, target, top_map, bottom_map)


def restrict_to_generators(morphism: TambaraMorphism) -> Tuple[Dict[str, RingElement], Dict[str, RingElement]]:
    """(alpha, beta) from a morphism out of 𝔸[X;Y]."""
    free = morphism.source
    pair = free.bottom.pair
    alpha = {x: morphism.top_map(free.top.variable(x)) for x in pair.points}
    beta = {}
    offset = len(pair.orbits)
    for k, y in enumerate(pair.ys):
        mono = [0] * (offset + len(pair.ys))
        mono[offset + k] = 1
        beta[y] = morphism.bottom_map(free.bottom.make(s1={tuple(mono): 1}))
    return alpha, beta


# Cohomological resolution

@dataclass(frozen=True, eq=False)
class Resolution:
    """A polynomial ring with involution S, its fixed-point Tambara functor, and the map onto T."""
    ring: PolynomialRing
    involution: Involution
    tambara: Z2Tambara
    morphism: TambaraMorphism
    surjective: CheckResult


def cohomological_resolution(t: Z2Tambara, top_generators: Sequence[RingElement],
                             bottom_generators: Sequence[RingElement],
                             samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> Resolution:
    """
    S = Z[u_i, ū_i, b_j] with u_i <-> ū_i and b_j fixed, mapping u_i to the
    i-th generator of A, ū_i to its conjugate and b_j to res of the j-th
    generator of B; on fixed points, m m̄ b^e goes to N(m) b^e and h + h̄ to tr(h).

    Raises:
        NotCohomological: T is not cohomological
    """
    if not is_cohomological(t, samples=samples, seed=seed):
        raise NotCohomological(f"{t.name} is not cohomological")
    a_gens = [t.top(g) for g in top_generators]
    b_gens = [t.bottom(g) for g in bottom_generators]
    if not a_gens and not b_gens:
        raise ValueError("a resolution needs at least one generator")
    names = []
    for i in range(len(a_gens)):
        names += [f"u{i}", f"ubar{i}"]
    names += [f"b{j}" for j in range(len(b_gens))]
    ring = PolynomialRing(names)
    swaps = {f"u{i}": f"ubar{i}" for i in range(len(a_gens))}
    involution = Involution.from_variable_swap(ring, swaps) if swaps else Involution.identity(ring)
    fixed_tambara = from_involution_ring(ring, involution, name=f"fix({ring.label})")

    images = {}
    for i, a in enumerate(a_gens):
        images[f"u{i}"] = a
        images[f"ubar{i}"] = t.involution(a)
    for j, b in enumerate(b_gens):
        images[f"b{j}"] = t.res(b)
    top_map = ring_homomorphism(ring, t.top, images, name="resolution")
    n_u = 2 * len(a_gens)

    def bottom_map(s):
        total = t.bottom.zero()
        done = set()
        for mono, c in ring.terms(fixed_tambara.bottom.include(fixed_tambara.bottom(s))):
            if mono in done:
                continue
            partner = tuple(mono[i + 1] if i < n_u and i % 2 == 0 else mono[i - 1] if i < n_u else mono[i]
                            for i in range(len(mono)))
            done.update({mono, partner})
            if partner == mono:
                m = [0] * len(mono)
                for i in range(0, n_u, 2):
                    m[i] = mono[i]
                term = t.norm(top_map(ring.from_terms({tuple(m): 1})))
                for j, b in enumerate(b_gens):
                    e = mono[n_u + j]
                    if e:
                        term = term * b ** e
                total = total + c * term
            else:
                total = total + c * t.tr(top_map(ring.from_terms({mono: 1})))
        return total

    morphism = TambaraMorphism(fixed_tambara, t, top_map, bottom_map)
    cases = [(ring.variable(f"u{i}"), a, False) for i, a in enumerate(a_gens)]
    cases += [(fixed_tambara.bottom.restrict(ring.variable(f"b{j}")), b, True) for j, b in enumerate(b_gens)]
    surjective = exhaustive_check(
        "resolution hits every generator", cases,
        lambda s, target, bottom: (bottom_map(s) if bottom else top_map(s)) == target)
    logger.info("resolved %s by %s", t.name, ring.label)
    return Resolution(ring, involution, fixed_tambara, morphism, surjective)
