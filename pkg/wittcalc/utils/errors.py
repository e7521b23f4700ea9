"""
Exception hierarchy for the library.

Every error carries the data needed to reproduce it (witness elements,
indices) as attributes; the CLI and HTTP layers turn them into reports.
"""


class AlgebraError(Exception):
    """Base class for all computation errors."""


# Ring kernel

class OwnerMismatch(AlgebraError):
    """Operands belong to different rings."""


class BadModulus(AlgebraError):
    """Residue ring requested with modulus below 2."""


class NonAssociative(AlgebraError):
    """Structure constants fail associativity on a basis triple."""


class NonCommutative(AlgebraError):
    """Structure constants fail commutativity on a basis pair."""


class NoUnit(AlgebraError):
    """The declared unit does not act as a two-sided identity."""


class NotDivisible(AlgebraError):
    """An exact quotient does not exist; ``residue`` is the offending part."""

    def __init__(self, numerator, denominator, residue):
        self.numerator = numerator
        self.denominator = denominator
        self.residue = residue
        super().__init__(f"{numerator} is not divisible by {denominator} (residue {residue})")


class ZeroDivisorDenominator(AlgebraError):
    """Division by an element not declared to be a non-zero-divisor."""


class UnknownTorsion(AlgebraError):
    """p-torsion-freeness cannot be decided structurally for this ring."""


class BadInvolution(AlgebraError):
    """An involution is not an order-two unital ring automorphism."""


# Polynomial maps

class NotHomogeneous(AlgebraError):
    """A map fails the homogeneity test f(ka) = k^n f(a)."""


class NonInvertibleFactorial(AlgebraError):
    """Some integer 1..n is not invertible in the codomain."""


class DegreeViolation(AlgebraError):
    """A cross-effect above the declared degree bound is non-zero."""

    def __init__(self, degree, witness):
        self.degree = degree
        self.witness = witness
        super().__init__(f"cross-effect of order {degree + 1} non-zero at {witness}")


# Witt vectors

class NotInGhostImage(AlgebraError):
    """Ghost components cannot be solved at coordinate ``index``."""

    def __init__(self, index, residue):
        self.index = index
        self.residue = residue
        super().__init__(f"not in ghost image at coordinate {index}; residue {residue}")


class ObstructionWitness(NotInGhostImage):
    """A polynomial map does not lift to Witt vectors; carries the failing coordinate."""


class NotMultiplicative(AlgebraError):
    """A map to be lifted fails f(ab) = f(a) f(b); ``witness`` is the failing pair."""

    def __init__(self, name, witness=None):
        self.name = name
        self.witness = witness
        super().__init__(f"{name} is not multiplicative" + (f" at {witness}" if witness is not None else ""))


class UnsupportedIndex(AlgebraError):
    """Closed-form lift components are only available for j <= 1."""


class BadFrobeniusLift(AlgebraError):
    """phi(a) is not congruent to a^p mod p."""


class BadTruncationSet(AlgebraError):
    """Truncation set is not closed under divisors or too large."""


# Groups and Burnside rings

class GroupTooLarge(AlgebraError):
    """Group order exceeds the subgroup search limit."""


class UnknownGroup(AlgebraError):
    """Group name is not one of the built-in families."""


class NotASubgroup(AlgebraError):
    """The given element set is not a subgroup of the ambient group."""


class IndexTooLarge(AlgebraError):
    """Subgroup index exceeds the brute-force norm limit."""


class InterpolationNonIntegral(AlgebraError):
    """Internal error: the interpolated norm is not an integral polynomial of the expected degree."""


class TooManyClasses(AlgebraError):
    """Too many subgroup classes for sign-pattern unit enumeration."""


# Tambara functors

class TambaraAxiomViolation(AlgebraError):
    """A sampled Tambara axiom fails."""

    def __init__(self, name, witness):
        self.name = name
        self.witness = witness
        super().__init__(f"Tambara axiom '{name}' fails at {witness}")


class TorsionBase(AlgebraError):
    """The fixed-point ring has p-torsion, so norms cannot be lifted."""


class NotSolvable(AlgebraError):
    """Twisted ghost equations have no solution at coordinate ``index``."""

    def __init__(self, index, residue):
        self.index = index
        self.residue = residue
        super().__init__(f"twisted ghost equation not solvable at {index}; residue {residue}")


class NotCohomological(AlgebraError):
    """N(res(b)) differs from b^2 or tr(1) differs from 2."""


class NotEquivariant(AlgebraError):
    """Generator images do not commute with the involution."""


class NotCompatible(AlgebraError):
    """Generator images do not commute with restriction."""


# Divided powers

class RelationViolation(AlgebraError):
    """A divided power relation fails."""

    def __init__(self, relation, witness):
        self.relation = relation
        self.witness = witness
        super().__init__(f"relation {relation} fails at {witness}")


# Front end

class UnknownScenario(AlgebraError):
    """Replay name is not registered."""


class DescriptorError(AlgebraError):
    """A JSON descriptor is well-formed JSON but names nothing we can build."""
