"""
Pydantic models for descriptors, reports and API request/response validation.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator

Scalar = Union[int, str]


class RingDescriptor(BaseModel):
    """JSON description of a ring; ``type`` selects which fields apply."""
    type: Literal["integers", "mod", "free", "product", "localization", "polynomial"]
    modulus: Optional[int] = None
    prime: Optional[int] = None
    variables: Optional[List[str]] = None
    left: Optional["RingDescriptor"] = None
    right: Optional["RingDescriptor"] = None
    basis: Optional[List[str]] = None
    mul: Optional[Dict[str, List[Tuple[str, Scalar]]]] = None
    unit: Optional[List[Tuple[str, Scalar]]] = None
    local_prime: Optional[int] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def check_fields(self):
        required = {
            "mod": ["modulus"],
            "localization": ["prime"],
            "polynomial": ["variables"],
            "product": ["left", "right"],
            "free": ["basis"],
        }
        for field_name in required.get(self.type, []):
            if getattr(self, field_name) is None:
                raise ValueError(f"ring type {self.type!r} needs field {field_name!r}")
        if self.type == "free" and len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be distinct")
        return self


class ElementLiteral(BaseModel):
    """A ring descriptor together with one element literal."""
    ring: RingDescriptor
    elem: Any


class InvolutionDescriptor(BaseModel):
    """
    ``permutation`` maps a free-ring basis name to [target name, sign];
    ``swap`` pairs polynomial variables.
    """
    kind: Literal["identity", "permutation", "swap", "product-swap"]
    permutation: Optional[Dict[str, Tuple[str, int]]] = None
    swap: Optional[Dict[str, str]] = None

    @model_validator(mode="after")
    def check_fields(self):
        if self.kind == "permutation" and not self.permutation:
            raise ValueError("permutation involution needs 'permutation'")
        if self.kind == "swap" and not self.swap:
            raise ValueError("swap involution needs 'swap'")
        return self


class MapDescriptor(BaseModel):
    """
    A built-in polynomial map.

    ``power`` raises to ``exponent`` on ``ring``; ``burnside-norm`` is the
    norm from the trivial group into A(C_p) (``group`` like "C3" or "Z2");
    ``homomorphism`` sends the variables of a polynomial ``ring`` to
    ``images`` in ``codomain``.
    """
    kind: Literal["identity", "power", "burnside-norm", "homomorphism"]
    ring: Optional[RingDescriptor] = None
    codomain: Optional[RingDescriptor] = None
    exponent: Optional[int] = Field(default=None, ge=0)
    group: Optional[str] = None
    images: Optional[Dict[str, Any]] = None

    @model_validator(mode="after")
    def check_fields(self):
        if self.kind == "power" and self.exponent is None:
            raise ValueError("power map needs 'exponent'")
        if self.kind == "burnside-norm" and not self.group:
            raise ValueError("burnside-norm needs 'group'")
        if self.kind == "homomorphism" and (self.ring is None or self.codomain is None or self.images is None):
            raise ValueError("homomorphism needs 'ring', 'codomain' and 'images'")
        return self


class PresheafPairDescriptor(BaseModel):
    """
    X as a list of involution orbits (pairs are swapped, singletons fixed),
    Y as names, and res sending each y to a fixed point of X.
    """
    X: List[List[str]]
    Y: List[str] = []
    res: Dict[str, str] = {}

    @model_validator(mode="after")
    def check_orbits(self):
        for orbit in self.X:
            if len(orbit) not in (1, 2):
                raise ValueError(f"orbit {orbit} must have one or two points")
        missing = [y for y in self.Y if y not in self.res]
        if missing:
            raise ValueError(f"res undefined on {missing}")
        return self


class CheckResultModel(BaseModel):
    """Serialized outcome of one property check."""
    name: str
    passed: bool
    samples: int
    witness: Optional[Any] = None


class Report(BaseModel):
    """Result of a CLI command, an API call or a replay."""
    status: Literal["ok", "obstruction", "fail"]
    payload: Any = None
    witnesses: List[Any] = []

    @model_validator(mode="after")
    def obstruction_has_witness(self):
        if self.status == "obstruction" and not self.witnesses:
            raise ValueError("an obstruction report needs at least one witness")
        return self


class WittRequest(BaseModel):
    """Ghost components of a p-typical Witt vector."""
    p: int = Field(ge=2)
    m: int = Field(ge=1)
    ring: RingDescriptor
    vector: List[Any]


class LiftRequest(BaseModel):
    """Lift a built-in polynomial map to p-typical Witt vectors."""
    p: int = Field(ge=2)
    m: int = Field(ge=1)
    map: MapDescriptor
    vector: List[Any]


class HealthResponse(BaseModel):
    """Health check response."""
    status: str
    version: str
    cached_polynomials: int


RingDescriptor.model_rebuild()
