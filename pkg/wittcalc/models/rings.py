"""
Exact commutative-ring kernel.

Every ring is a ``RingHandle``; its elements are immutable ``RingElement``
values holding a canonical payload (an int, a residue, a coordinate tuple,
a pair, a Fraction or a sympy ``Poly``). Arithmetic between elements of
different handles is rejected.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, ZZ
from sympy.polys.polyerrors import ExactQuotientFailed

from wittcalc.utils.constants import COEFFICIENT_BOUND
from wittcalc.utils.errors import (
    BadInvolution,
    BadModulus,
    DescriptorError,
    NoUnit,
    NonAssociative,
    NonCommutative,
    NotDivisible,
    OwnerMismatch,
    UnknownTorsion,
    ZeroDivisorDenominator,
)
from wittcalc.utils.sampling import make_rng

logger = logging.getLogger(__name__)

AXIOM_SAMPLES = 200


@dataclass(frozen=True, eq=False)
class RingElement:
    """An element of ``owner`` with a canonical payload."""
    owner: "RingHandle"
    payload: Any

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.owner != self.owner:
                raise OwnerMismatch(f"{self.owner.label} vs {other.owner.label}")
            return other
        if isinstance(other, int):
            return self.owner.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.owner.wrap(self.owner.add(self.payload, other.payload))

    __radd__ = __add__

    def __neg__(self):
        return self.owner.wrap(self.owner.neg(self.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.owner.wrap(self.owner.mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative exponents are not supported")
        result = self.owner.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.owner.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.owner == other.owner and self.payload == other.payload

    def __hash__(self):
        return hash((self.owner.key, self.payload))

    def is_zero(self) -> bool:
        return self.payload == self.owner.zero().payload

    def to_json(self):
        return self.owner.to_json(self.payload)

    def __repr__(self):
        return self.owner.format(self.payload)

    __str__ = __repr__


class RingHandle(ABC):
    """A dynamically dispatched exact commutative ring."""

    element_class = RingElement

    @property
    @abstractmethod
    def key(self) -> Tuple:
        """Hashable identity; handles with equal keys are the same ring."""

    @property
    def label(self) -> str:
        return str(self.key)

    def __eq__(self, other):
        return isinstance(other, RingHandle) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<ring {self.label}>"

    def wrap(self, payload) -> RingElement:
        return self.element_class(self, payload)

    # payload-level arithmetic

    @abstractmethod
    def add(self, x, y): ...

    @abstractmethod
    def mul(self, x, y): ...

    @abstractmethod
    def neg(self, x): ...

    @abstractmethod
    def from_int(self, n: int) -> RingElement: ...

    def zero(self) -> RingElement:
        return self.from_int(0)

    def one(self) -> RingElement:
        return self.from_int(1)

    def sum(self, items: Iterable[RingElement]) -> RingElement:
        total = self.zero()
        for item in items:
            total = total + item
        return total

    def __call__(self, value) -> RingElement:
        if isinstance(value, RingElement):
            if value.owner != self:
                raise OwnerMismatch(f"{value.owner.label} vs {self.label}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.parse(value)

    @abstractmethod
    def divide_exact(self, e: RingElement, d: RingElement) -> RingElement: ...

    @abstractmethod
    def is_p_torsion_free(self, p: int) -> bool: ...

    @abstractmethod
    def random_element(self, rng, bound: int = COEFFICIENT_BOUND) -> RingElement: ...

    @abstractmethod
    def parse(self, literal) -> RingElement: ...

    @abstractmethod
    def to_json(self, payload): ...

    @abstractmethod
    def format(self, payload) -> str: ...

    def descriptor(self) -> dict:
        raise DescriptorError(f"{self.label} has no JSON descriptor")

    # free-module view, available on rings that are free over Z or Z_(p)

    def basis_elements(self) -> List[RingElement]:
        raise TypeError(f"{self.label} is not a free module of finite rank")

    def coordinates(self, e: RingElement) -> List:
        raise TypeError(f"{self.label} is not a free module of finite rank")

    @property
    def is_free(self) -> bool:
        return False


def _int_literal(value) -> int:
    if isinstance(value, bool):
        raise DescriptorError(f"not an integer literal: {value!r}")
    if isinstance(value, int):
        return value
    try:
        return int(str(value).strip())
    except ValueError:
        raise DescriptorError(f"not an integer literal: {value!r}")


def _local_scalar(value, p: Optional[int]):
    """Parse an integer or a fraction with denominator prime to ``p``."""
    if p is None:
        return _int_literal(value)
    q = Fraction(str(value)) if not isinstance(value, (int, Fraction)) else Fraction(value)
    if q.denominator % p == 0:
        raise DescriptorError(f"{value} has a denominator divisible by {p}")
    return q


class IntegerRing(RingHandle):
    """The integers with arbitrary-precision payloads."""

    @property
    def key(self):
        return ("Z",)

    @property
    def label(self):
        return "Z"

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def from_int(self, n):
        return self.wrap(int(n))

    def divide_exact(self, e, d):
        if d.payload == 0:
            raise ZeroDivisorDenominator("division by 0 in Z")
        q, r = divmod(e.payload, d.payload)
        if r:
            raise NotDivisible(e, d, e)
        return self.wrap(q)

    def is_p_torsion_free(self, p):
        return True

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        return self.wrap(rng.randint(-bound, bound))

    def parse(self, literal):
        return self.wrap(_int_literal(literal))

    def to_json(self, payload):
        return str(payload)

    def format(self, payload):
        return str(payload)

    def descriptor(self):
        return {"type": "integers"}

    @property
    def is_free(self):
        return True

    def basis_elements(self):
        return [self.one()]

    def coordinates(self, e):
        return [e.payload]


class IntegerModRing(RingHandle):
    """Residues modulo ``n``, represented in [0, n)."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise BadModulus(f"modulus {modulus} < 2")
        self.modulus = modulus

    @property
    def key(self):
        return ("Z/n", self.modulus)

    @property
    def label(self):
        return f"Z/{self.modulus}"

    def add(self, x, y):
        return (x + y) % self.modulus

    def mul(self, x, y):
        return (x * y) % self.modulus

    def neg(self, x):
        return (-x) % self.modulus

    def from_int(self, n):
        return self.wrap(int(n) % self.modulus)

    def divide_exact(self, e, d):
        if gcd(d.payload, self.modulus) != 1:
            raise ZeroDivisorDenominator(f"{d.payload} is a zero divisor mod {self.modulus}")
        return self.wrap(e.payload * pow(d.payload, -1, self.modulus) % self.modulus)

    def is_p_torsion_free(self, p):
        return gcd(p, self.modulus) == 1

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        return self.wrap(rng.randrange(self.modulus))

    def parse(self, literal):
        return self.from_int(_int_literal(literal))

    def to_json(self, payload):
        return str(payload)

    def format(self, payload):
        return str(payload)

    def descriptor(self):
        return {"type": "mod", "modulus": self.modulus}


class LocalizedIntegers(RingHandle):
    """Z_(p): fractions whose reduced denominator is prime to ``p``."""

    def __init__(self, prime: int):
        self.prime = prime

    @property
    def key(self):
        return ("Z_(p)", self.prime)

    @property
    def label(self):
        return f"Z_({self.prime})"

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def from_int(self, n):
        return self.wrap(Fraction(n))

    def divide_exact(self, e, d):
        if d.payload == 0:
            raise ZeroDivisorDenominator("division by 0")
        q = e.payload / d.payload
        if q.denominator % self.prime == 0:
            raise NotDivisible(e, d, e)
        return self.wrap(q)

    def is_p_torsion_free(self, p):
        return True

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        denominators = [k for k in range(1, bound + 1) if k % self.prime]
        return self.wrap(Fraction(rng.randint(-bound, bound), rng.choice(denominators)))

    def parse(self, literal):
        return self.wrap(_local_scalar(literal, self.prime))

    def to_json(self, payload):
        return str(payload)

    def format(self, payload):
        return str(payload)

    def descriptor(self):
        return {"type": "localization", "prime": self.prime}

    @property
    def is_free(self):
        return True

    def basis_elements(self):
        return [self.one()]

    def coordinates(self, e):
        return [e.payload]


class FreeRankRing(RingHandle):
    """
    A ring that is free of finite rank over Z (or over Z_(p) when
    ``local_prime`` is set), given by a named basis and structure constants.

    Args:
        basis: basis names, in the fixed coordinate order
        table: maps (i, j) with i <= j to the coordinate tuple of e_i * e_j;
            missing pairs multiply to zero
        unit: coordinate tuple of the identity
        local_prime: when set, coordinates live in Z_(p)
        name: display name
        check_axioms: verify unit, associativity on all basis triples
    """

    def __init__(self, basis: Sequence[str], table: Dict[Tuple[int, int], Sequence[int]],
                 unit: Sequence[int], local_prime: Optional[int] = None, name: Optional[str] = None,
                 check_axioms: bool = True):
        self.basis = tuple(basis)
        self.rank = len(self.basis)
        self.local_prime = local_prime
        self.name = name
        self._key = None
        zero = (0,) * self.rank
        self._table = [[zero] * self.rank for _ in range(self.rank)]
        for (i, j), coords in table.items():
            coords = tuple(int(c) for c in coords)
            self._table[i][j] = coords
            if i != j and (j, i) in table and tuple(table[(j, i)]) != coords:
                raise NonCommutative(f"{self.basis[i]}*{self.basis[j]} != {self.basis[j]}*{self.basis[i]}")
            self._table[j][i] = coords
        self._unit = self._canon(unit)
        if check_axioms:
            self._check_axioms()

    def _canon(self, coords):
        if self.local_prime is None:
            return tuple(int(c) for c in coords)
        return tuple(Fraction(c) for c in coords)

    def _check_axioms(self):
        basis = [self._unit_vector(i) for i in range(self.rank)]
        for i, b in enumerate(basis):
            if self.mul(self._unit, b) != b:
                raise NoUnit(f"unit does not fix {self.basis[i]}")
        for i, j, k in itertools.product(range(self.rank), repeat=3):
            left = self.mul(self.mul(basis[i], basis[j]), basis[k])
            right = self.mul(basis[i], self.mul(basis[j], basis[k]))
            if left != right:
                raise NonAssociative(f"({self.basis[i]}*{self.basis[j]})*{self.basis[k]}")
        logger.debug("free ring %s passed structure-constant checks", self.label)

    def _unit_vector(self, i):
        return self._canon(1 if k == i else 0 for k in range(self.rank))

    @property
    def key(self):
        if self._key is None:
            table = tuple(tuple(row) for row in self._table)
            self._key = ("free", self.basis, table, self._unit, self.local_prime)
        return self._key

    @property
    def label(self):
        if self.name:
            return self.name
        return f"free{list(self.basis)}" + (f"_({self.local_prime})" if self.local_prime else "")

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        out = [0] * self.rank
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return self._canon(out)

    def from_int(self, n):
        return self.wrap(self._canon(n * u for u in self._unit))

    def element(self, coords: Dict[str, Any]) -> RingElement:
        """Build an element from ``{basis name: coefficient}``."""
        out = [0] * self.rank
        for name, value in coords.items():
            if name not in self.basis:
                raise DescriptorError(f"unknown basis element {name!r} of {self.label}")
            out[self.basis.index(name)] += _local_scalar(value, self.local_prime)
        return self.wrap(self._canon(out))

    def generator(self, name: str) -> RingElement:
        return self.element({name: 1})

    def multiplication_matrix(self, d) -> sympy.Matrix:
        """Matrix of multiplication by ``d`` in the fixed basis (columns = images of basis)."""
        columns = [self.mul(d.payload, self._unit_vector(i)) for i in range(self.rank)]
        return sympy.Matrix(self.rank, self.rank, lambda r, c: sympy.Rational(columns[c][r]))

    def _is_scalar(self, q) -> bool:
        if self.local_prime is None:
            return q.q == 1
        return sympy.Rational(q).q % self.local_prime != 0

    def divide_exact(self, e, d):
        matrix = self.multiplication_matrix(d)
        if matrix.det() == 0:
            raise ZeroDivisorDenominator(f"{d} is a zero divisor in {self.label}")
        solution = matrix.LUsolve(sympy.Matrix([sympy.Rational(c) for c in e.payload]))
        if all(self._is_scalar(q) for q in solution):
            return self.wrap(self._canon(Fraction(int(q.p), int(q.q)) if self.local_prime else int(q)
                                         for q in solution))
        kept = [Fraction(int(q.p), int(q.q)) if self._is_scalar(q) else 0 for q in solution]
        if self.local_prime is None:
            kept = [int(q) for q in kept]
        residue = e - self.wrap(self.mul(d.payload, self._canon(kept)))
        raise NotDivisible(e, d, residue)

    def is_p_torsion_free(self, p):
        return True

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        if self.local_prime is None:
            return self.wrap(tuple(rng.randint(-bound, bound) for _ in range(self.rank)))
        denominators = [k for k in range(1, bound + 1) if k % self.local_prime]
        return self.wrap(tuple(Fraction(rng.randint(-bound, bound), rng.choice(denominators))
                               for _ in range(self.rank)))

    def parse(self, literal):
        if isinstance(literal, dict):
            return self.element(literal)
        if isinstance(literal, (int, str)) and str(literal).lstrip("-").isdigit():
            return self.from_int(int(literal))
        raise DescriptorError(f"cannot parse {literal!r} as an element of {self.label}")

    def to_json(self, payload):
        return {name: str(c) for name, c in zip(self.basis, payload) if c}

    def format(self, payload):
        terms = []
        for name, c in zip(self.basis, payload):
            if not c:
                continue
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def descriptor(self):
        mul = {}
        for i in range(self.rank):
            for j in range(i, self.rank):
                coords = self._table[i][j]
                if any(coords):
                    mul[f"{self.basis[i]}*{self.basis[j]}"] = [
                        [self.basis[k], str(c)] for k, c in enumerate(coords) if c]
        out = {"type": "free", "basis": list(self.basis), "mul": mul,
               "unit": [[self.basis[k], str(c)] for k, c in enumerate(self._unit) if c]}
        if self.local_prime:
            out["local_prime"] = self.local_prime
        return out

    @property
    def is_free(self):
        return True

    def basis_elements(self):
        return [self.wrap(self._unit_vector(i)) for i in range(self.rank)]

    def coordinates(self, e):
        return list(e.payload)

    def localize(self, p: int) -> "FreeRankRing":
        """The scalar extension Z_(p) ⊗ self."""
        table = {(i, j): self._table[i][j] for i in range(self.rank) for j in range(i, self.rank)}
        name = f"Z_({p})⊗{self.name}" if self.name else None
        return FreeRankRing(self.basis, table, self._unit, local_prime=p, name=name)

    def embed(self, target: "FreeRankRing", e: RingElement) -> RingElement:
        """Map ``e`` into a scalar extension with the same basis."""
        return target.wrap(target._canon(e.payload))


class ProductRing(RingHandle):
    """The product ring ``left × right``."""

    def __init__(self, left: RingHandle, right: RingHandle):
        self.left = left
        self.right = right

    @property
    def key(self):
        return ("product", self.left.key, self.right.key)

    @property
    def label(self):
        return f"({self.left.label} × {self.right.label})"

    def add(self, x, y):
        return (self.left.add(x[0], y[0]), self.right.add(x[1], y[1]))

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def neg(self, x):
        return (self.left.neg(x[0]), self.right.neg(x[1]))

    def from_int(self, n):
        return self.wrap((self.left.from_int(n).payload, self.right.from_int(n).payload))

    def pair(self, a: RingElement, b: RingElement) -> RingElement:
        return self.wrap((self.left(a).payload, self.right(b).payload))

    def components(self, e: RingElement) -> Tuple[RingElement, RingElement]:
        return self.left.wrap(e.payload[0]), self.right.wrap(e.payload[1])

    def divide_exact(self, e, d):
        (e1, e2), (d1, d2) = self.components(e), self.components(d)
        failures = []
        quotients = []
        for ring, num, den in ((self.left, e1, d1), (self.right, e2, d2)):
            try:
                quotients.append(ring.divide_exact(num, den))
            except NotDivisible as exc:
                failures.append(exc.residue)
                quotients.append(ring.zero())
            else:
                failures.append(ring.zero())
        if any(not f.is_zero() for f in failures):
            raise NotDivisible(e, d, self.pair(*failures))
        return self.pair(*quotients)

    def is_p_torsion_free(self, p):
        return self.left.is_p_torsion_free(p) and self.right.is_p_torsion_free(p)

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        return self.pair(self.left.random_element(rng, bound), self.right.random_element(rng, bound))

    def parse(self, literal):
        if not isinstance(literal, (list, tuple)) or len(literal) != 2:
            raise DescriptorError(f"product element literal must be a pair, got {literal!r}")
        return self.pair(self.left.parse(literal[0]), self.right.parse(literal[1]))

    def to_json(self, payload):
        return [self.left.to_json(payload[0]), self.right.to_json(payload[1])]

    def format(self, payload):
        return f"({self.left.format(payload[0])}, {self.right.format(payload[1])})"

    def descriptor(self):
        return {"type": "product", "left": self.left.descriptor(), "right": self.right.descriptor()}

    @property
    def is_free(self):
        return self.left.is_free and self.right.is_free

    def basis_elements(self):
        return ([self.pair(b, self.right.zero()) for b in self.left.basis_elements()]
                + [self.pair(self.left.zero(), b) for b in self.right.basis_elements()])

    def coordinates(self, e):
        a, b = self.components(e)
        return self.left.coordinates(a) + self.right.coordinates(b)


class PolynomialRing(RingHandle):
    """Z[x_1, ..., x_k] on named variables, elements stored as sympy ``Poly`` over ZZ."""

    def __init__(self, variables: Sequence[str]):
        self.variables = tuple(variables)
        self.gens = sympy.symbols(self.variables)
        if not isinstance(self.gens, tuple):
            self.gens = (self.gens,)

    @property
    def key(self):
        return ("poly", self.variables)

    @property
    def label(self):
        return f"Z[{', '.join(self.variables)}]"

    def _poly(self, expr) -> Poly:
        return Poly(expr, *self.gens, domain=ZZ)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def from_int(self, n):
        return self.wrap(self._poly(int(n)))

    def variable(self, name: str) -> RingElement:
        return self.wrap(self._poly(self.gens[self.variables.index(name)]))

    def from_terms(self, terms: Dict[Tuple[int, ...], int]) -> RingElement:
        return self.wrap(Poly.from_dict({m: c for m, c in terms.items() if c} or {(0,) * len(self.gens): 0},
                                        *self.gens, domain=ZZ))

    def terms(self, e: RingElement) -> List[Tuple[Tuple[int, ...], int]]:
        return [(m, int(c)) for m, c in e.payload.terms() if c]

    def divide_exact(self, e, d):
        if d.payload.is_zero:
            raise ZeroDivisorDenominator("division by the zero polynomial")
        if d.payload.is_ground:
            c = int(d.payload.LC())
            bad = {m: v for m, v in self.terms(e) if v % c}
            if bad:
                raise NotDivisible(e, d, self.from_terms(bad))
            return self.from_terms({m: v // c for m, v in self.terms(e)})
        try:
            return self.wrap(e.payload.exquo(d.payload))
        except ExactQuotientFailed:
            raise NotDivisible(e, d, e)

    def is_p_torsion_free(self, p):
        return True

    def random_element(self, rng, bound=COEFFICIENT_BOUND, degree: int = 2, terms: int = 3):
        monomials = {}
        for _ in range(rng.randint(1, terms)):
            exps = [0] * len(self.gens)
            for _ in range(rng.randint(0, degree)):
                exps[rng.randrange(len(self.gens))] += 1
            monomials[tuple(exps)] = rng.randint(-bound, bound)
        return self.from_terms(monomials)

    def parse(self, literal):
        if isinstance(literal, int):
            return self.from_int(literal)
        try:
            expr = sympy.sympify(str(literal), locals=dict(zip(self.variables, self.gens)))
            return self.wrap(self._poly(expr))
        except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
            raise DescriptorError(f"cannot parse {literal!r} in {self.label}: {exc}")

    def to_json(self, payload):
        return str(payload.as_expr())

    def format(self, payload):
        return str(payload.as_expr())

    def descriptor(self):
        return {"type": "polynomial", "variables": list(self.variables)}


class FixedPointsRing(RingHandle):
    """The subring of ``base`` fixed by an involution; payloads are base payloads."""

    def __init__(self, base: RingHandle, involution: "Involution"):
        self.base = base
        self.involution = involution
        self._fixed_basis = None
        if isinstance(base, FreeRankRing) and involution.signed_permutation is not None:
            self._fixed_basis = _fixed_lattice_basis(base, involution.signed_permutation)

    @property
    def key(self):
        return ("fixed", self.base.key, self.involution.key)

    @property
    def label(self):
        return f"{self.base.label}^Z/2"

    def add(self, x, y):
        return self.base.add(x, y)

    def mul(self, x, y):
        return self.base.mul(x, y)

    def neg(self, x):
        return self.base.neg(x)

    def from_int(self, n):
        return self.wrap(self.base.from_int(n).payload)

    def include(self, e: RingElement) -> RingElement:
        """The inclusion into the base ring."""
        return self.base.wrap(e.payload)

    def restrict(self, a: RingElement) -> RingElement:
        """View a fixed base element as an element of this subring."""
        if self.involution(a) != a:
            raise DescriptorError(f"{a} is not fixed by the involution")
        return self.wrap(a.payload)

    def divide_exact(self, e, d):
        q = self.base.divide_exact(self.include(e), self.include(d))
        return self.restrict(q)

    def is_p_torsion_free(self, p):
        return self.base.is_p_torsion_free(p)

    def random_element(self, rng, bound=COEFFICIENT_BOUND):
        if self._fixed_basis is not None:
            total = self.base.zero()
            for b in self._fixed_basis:
                total = total + rng.randint(-bound, bound) * b
            return self.wrap(total.payload)
        r = self.base.random_element(rng, bound)
        s = self.base.random_element(rng, max(1, bound // 2))
        total = rng.randint(-bound, bound) + r + self.involution(r) + s * self.involution(s)
        return self.wrap(total.payload)

    def parse(self, literal):
        return self.restrict(self.base.parse(literal))

    def to_json(self, payload):
        return self.base.to_json(payload)

    def format(self, payload):
        return self.base.format(payload)


def _fixed_lattice_basis(base: FreeRankRing, action) -> List[RingElement]:
    """Z-basis of the kernel of (tau - id) for a signed permutation of the basis."""
    seen = set()
    out = []
    basis = base.basis_elements()
    for i, (j, sign) in enumerate(action):
        if i in seen:
            continue
        seen.update({i, j})
        if i == j:
            if sign == 1:
                out.append(basis[i])
        else:
            out.append(basis[i] + sign * basis[j])
    return out


class Involution:
    """
    A ring automorphism of order at most two.

    Build with one of the constructors; ``signed_permutation`` and
    ``variable_swap`` are kept so fixed-point rings can pick a basis.
    """

    def __init__(self, owner: RingHandle, action: Callable[[RingElement], RingElement], key: Tuple,
                 signed_permutation=None, variable_swap=None):
        self.owner = owner
        self._action = action
        self._key = key
        self.signed_permutation = signed_permutation
        self.variable_swap = variable_swap

    @property
    def key(self):
        return self._key

    def __call__(self, e: RingElement) -> RingElement:
        return self._action(self.owner(e))

    @classmethod
    def identity(cls, owner: RingHandle) -> "Involution":
        return cls(owner, lambda e: e, ("identity",))

    @classmethod
    def from_signed_permutation(cls, owner: FreeRankRing, action: Sequence[Tuple[int, int]],
                                samples: int = AXIOM_SAMPLES, seed: Optional[int] = None) -> "Involution":
        """``action[i] = (j, s)`` sends basis element i to s times basis element j."""
        action = tuple((int(j), int(s)) for j, s in action)

        def apply(e):
            out = [0] * owner.rank
            for i, c in enumerate(e.payload):
                j, s = action[i]
                out[j] += s * c
            return owner.wrap(owner._canon(out))

        inv = cls(owner, apply, ("perm", action), signed_permutation=action)
        check_involution(inv, samples, seed)
        return inv

    @classmethod
    def from_variable_swap(cls, owner: PolynomialRing, pairs: Dict[str, str],
                           samples: int = AXIOM_SAMPLES, seed: Optional[int] = None) -> "Involution":
        """Swap variables; ``pairs`` maps each moved variable to its partner."""
        index = {v: i for i, v in enumerate(owner.variables)}
        perm = list(range(len(owner.variables)))
        for a, b in pairs.items():
            perm[index[a]] = index[b]
            perm[index[b]] = index[a]

        def apply(e):
            terms = {}
            for monom, c in owner.terms(e):
                swapped = [0] * len(monom)
                for i, k in enumerate(monom):
                    swapped[perm[i]] = k
                terms[tuple(swapped)] = c
            return owner.from_terms(terms)

        inv = cls(owner, apply, ("swap", tuple(perm)), variable_swap=tuple(perm))
        check_involution(inv, samples, seed)
        return inv

    @classmethod
    def product_swap(cls, owner: ProductRing) -> "Involution":
        if owner.left != owner.right:
            raise BadInvolution("swap needs equal factors")
        inv = cls(owner, lambda e: owner.wrap((e.payload[1], e.payload[0])), ("product-swap",))
        check_involution(inv, AXIOM_SAMPLES)
        return inv


def check_involution(inv: Involution, samples: int = AXIOM_SAMPLES, seed: Optional[int] = None):
    """Sampled check that ``inv`` is a unital ring endomorphism squaring to the identity."""
    rng = make_rng(seed)
    ring = inv.owner
    if inv(ring.one()) != ring.one():
        raise BadInvolution("involution is not unital")
    for _ in range(samples):
        a, b = ring.random_element(rng), ring.random_element(rng)
        if inv(inv(a)) != a:
            raise BadInvolution(f"involution does not square to the identity at {a}")
        if inv(a + b) != inv(a) + inv(b) or inv(a * b) != inv(a) * inv(b):
            raise BadInvolution(f"involution is not a ring map at ({a}, {b})")


# Module-level operations

def construct_ring(spec) -> RingHandle:
    """
    Build a ring from a descriptor dict (or a validated ``RingDescriptor``).

    Returns:
        RingHandle with total, exact arithmetic
    """
    from wittcalc.models.schemas import RingDescriptor

    if not isinstance(spec, RingDescriptor):
        spec = RingDescriptor.model_validate(spec)
    kind = spec.type
    if kind == "integers":
        return IntegerRing()
    if kind == "mod":
        return IntegerModRing(spec.modulus)
    if kind == "localization":
        return LocalizedIntegers(spec.prime)
    if kind == "polynomial":
        return PolynomialRing(spec.variables)
    if kind == "product":
        return ProductRing(construct_ring(spec.left), construct_ring(spec.right))
    if kind == "free":
        basis = list(spec.basis)
        index = {name: i for i, name in enumerate(basis)}

        def coords(entries):
            out = [0] * len(basis)
            for name, value in entries:
                if name not in index:
                    raise DescriptorError(f"unknown basis element {name!r}")
                out[index[name]] += _int_literal(value)
            return out

        table = {}
        unit = coords(spec.unit) if spec.unit else None
        if unit is None:
            if "1" not in index:
                raise NoUnit("free ring needs a unit expression or a basis element named '1'")
            unit = coords([["1", 1]])
        for pair, entries in (spec.mul or {}).items():
            left, _, right = pair.partition("*")
            if left not in index or right not in index:
                raise DescriptorError(f"bad product key {pair!r}")
            i, j = sorted((index[left], index[right]))
            table[(i, j)] = coords(entries)
        if "1" in index and unit == coords([["1", 1]]):
            one = index["1"]
            for k in range(len(basis)):
                i, j = sorted((one, k))
                table.setdefault((i, j), coords([[basis[k], 1]]))
        return FreeRankRing(basis, table, unit, local_prime=spec.local_prime, name=spec.name)
    raise DescriptorError(f"unknown ring type {kind!r}")


def ring_eval(e1: RingElement, op: str, e2: Optional[RingElement] = None) -> RingElement:
    """Apply ``op`` in {add, mul, neg, sub}."""
    if op == "neg":
        return -e1
    if e2 is None:
        raise DescriptorError(f"operation {op} needs two operands")
    if e1.owner != e2.owner:
        raise OwnerMismatch(f"{e1.owner.label} vs {e2.owner.label}")
    if op == "add":
        return e1 + e2
    if op == "sub":
        return e1 - e2
    if op == "mul":
        return e1 * e2
    raise DescriptorError(f"unknown operation {op!r}")


def divide_exact(e: RingElement, d) -> RingElement:
    """Return q with q * d = e, or raise ``NotDivisible`` with the residue witness."""
    d = e.owner(d)
    q = e.owner.divide_exact(e, d)
    if q * d != e:
        raise NotDivisible(e, d, e - q * d)
    return q


def is_p_torsion_free(ring: RingHandle, p: int) -> bool:
    """Structural decision of whether multiplication by ``p`` is injective."""
    try:
        return ring.is_p_torsion_free(p)
    except (AttributeError, NotImplementedError):
        raise UnknownTorsion(f"cannot decide p-torsion for {ring.label}")


def check_ring_axioms(ring: RingHandle, samples: int = AXIOM_SAMPLES, seed: Optional[int] = None):
    """Sampled associativity, commutativity, distributivity and unit laws."""
    from wittcalc.utils.sampling import sampled_check

    rng = make_rng(seed)

    def draw():
        return tuple(ring.random_element(rng) for _ in range(3))

    def axioms(a, b, c):
        return ((a * b) * c == a * (b * c) and a * b == b * a
                and a * (b + c) == a * b + a * c and ring.one() * a == a and a + ring.zero() == a
                and a + (-a) == ring.zero())

    return sampled_check(f"ring axioms of {ring.label}", samples, draw, axioms)


# Frequently used rings

def integers() -> IntegerRing:
    return IntegerRing()


def burnside_z2_ring(local_prime: Optional[int] = None) -> FreeRankRing:
    """A(Z/2) = Z[x]/(x^2 - 2x) on the basis {1, x}."""
    return cyclic_burnside_ring(2, local_prime)


def cyclic_burnside_ring(p: int, local_prime: Optional[int] = None) -> FreeRankRing:
    """Z[x]/(x^2 - p x) on the basis {1, x}."""
    table = {(0, 0): (1, 0), (0, 1): (0, 1), (1, 1): (0, p)}
    name = f"Z[x]/(x^2-{p}x)"
    if local_prime:
        name = f"Z_({local_prime})⊗{name}"
    return FreeRankRing(("1", "x"), table, (1, 0), local_prime=local_prime, name=name)
