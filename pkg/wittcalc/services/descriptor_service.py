"""
Turns JSON descriptors and command-line shorthands into library objects.

Accepted shorthands:
    rings     Z, Z/n, Z_(p), A(G) or burnside:G, or a ring descriptor (inline JSON or a file)
    maps      identity, power:k, burnside-norm:Cp, or a map descriptor
    tambara   burnside:Z2, burnside:D<p^j>, invring:<file with ring and involution>
"""

import json
import logging
import re
from pathlib import Path
from typing import Any, List, Optional, Sequence

from pydantic import ValidationError

from wittcalc.models import burnside
from wittcalc.models.free_tambara import PresheafPair
from wittcalc.models.polymap import (
    PolyMap,
    identity_map,
    power_map,
    ring_homomorphism,
)
from wittcalc.models.rings import (
    FreeRankRing,
    Involution,
    IntegerModRing,
    IntegerRing,
    LocalizedIntegers,
    PolynomialRing,
    ProductRing,
    RingElement,
    RingHandle,
    construct_ring,
)
from wittcalc.models.schemas import (
    InvolutionDescriptor,
    MapDescriptor,
    PresheafPairDescriptor,
    RingDescriptor,
)
from wittcalc.models.tambara import Z2Tambara, burnside_tambara, from_involution_ring
from wittcalc.utils.errors import DescriptorError
from wittcalc.utils.sampling import is_prime

logger = logging.getLogger(__name__)


def load_json(source: Any) -> Any:
    """
    Read a descriptor given as a parsed value, an inline JSON string or the
    path of a JSON file.
    """
    if not isinstance(source, str):
        return source
    path = Path(source)
    if path.suffix == ".json" or (len(source) < 256 and path.is_file()):
        try:
            return json.loads(path.read_text())
        except FileNotFoundError:
            raise DescriptorError(f"descriptor file {source} not found")
        except json.JSONDecodeError as e:
            raise DescriptorError(f"{source} is not valid JSON: {e}")
    try:
        return json.loads(source)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"cannot read descriptor {source!r}: {e}")


def _validated(model, data):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise DescriptorError(f"invalid {model.__name__}: {e.errors()[0]['msg']}")


def build_ring(spec: Any) -> RingHandle:
    """A ring from a shorthand, a descriptor dict or a descriptor file."""
    if isinstance(spec, RingHandle):
        return spec
    if isinstance(spec, str):
        text = spec.strip()
        if text in ("Z", "integers"):
            return IntegerRing()
        match = re.fullmatch(r"Z/(\d+)", text)
        if match:
            return IntegerModRing(int(match.group(1)))
        match = re.fullmatch(r"Z_\((\d+)\)", text)
        if match:
            return LocalizedIntegers(int(match.group(1)))
        match = re.fullmatch(r"(?:A\((.+)\)|burnside:(.+))", text)
        if match:
            return burnside.burnside_ring(match.group(1) or match.group(2))
        spec = load_json(text)
    return construct_ring(_validated(RingDescriptor, spec))


def parse_element(ring: RingHandle, literal: Any) -> RingElement:
    if isinstance(literal, str) and isinstance(ring, FreeRankRing):
        # free rings read coordinates; a bare integer string is a scalar
        try:
            return ring(json.loads(literal))
        except json.JSONDecodeError:
            pass
    return ring(literal)


def parse_vector(ring: RingHandle, literal: Any) -> List[RingElement]:
    """A JSON array of element literals."""
    values = load_json(literal) if isinstance(literal, str) else literal
    if not isinstance(values, list):
        raise DescriptorError(f"expected a JSON array of elements, got {values!r}")
    return [parse_element(ring, v) for v in values]


def build_involution(ring: RingHandle, spec: Any) -> Involution:
    spec = _validated(InvolutionDescriptor, load_json(spec))
    if spec.kind == "identity":
        return Involution.identity(ring)
    if spec.kind == "swap":
        if not isinstance(ring, PolynomialRing):
            raise DescriptorError("variable swaps need a polynomial ring")
        return Involution.from_variable_swap(ring, spec.swap)
    if spec.kind == "product-swap":
        if not isinstance(ring, ProductRing):
            raise DescriptorError("product-swap needs a product ring")
        return Involution.product_swap(ring)
    if not isinstance(ring, FreeRankRing):
        raise DescriptorError("signed permutations need a free ring")
    index = {name: i for i, name in enumerate(ring.basis)}
    action = []
    for name in ring.basis:
        target, sign = spec.permutation.get(name, (name, 1))
        if target not in index:
            raise DescriptorError(f"unknown basis element {target!r}")
        action.append((index[target], sign))
    return Involution.from_signed_permutation(ring, action)


def _cyclic_prime(group: str) -> int:
    match = re.fullmatch(r"(?:C|Z/?)(\d+)", group)
    if not match or not is_prime(int(match.group(1))):
        raise DescriptorError(f"burnside-norm needs a group C_p of prime order, got {group!r}")
    return int(match.group(1))


def build_map(spec: Any, ring: Optional[RingHandle] = None) -> PolyMap:
    """
    A built-in polynomial map. ``ring`` is the domain for shorthands that
    do not name one (integers when omitted).
    """
    if isinstance(spec, str):
        text = spec.strip()
        if text == "identity":
            spec = {"kind": "identity"}
        elif text.startswith("power:"):
            spec = {"kind": "power", "exponent": int(text.split(":", 1)[1])}
        elif text.startswith("burnside-norm:"):
            spec = {"kind": "burnside-norm", "group": text.split(":", 1)[1]}
        else:
            spec = load_json(text)
    spec = _validated(MapDescriptor, spec)
    domain = build_ring(spec.ring) if spec.ring is not None else (ring or IntegerRing())
    if spec.kind == "identity":
        return identity_map(domain)
    if spec.kind == "power":
        return power_map(domain, spec.exponent)
    if spec.kind == "burnside-norm":
        local_prime = spec.codomain.local_prime if spec.codomain is not None else None
        return burnside.cyclic_burnside_norm(_cyclic_prime(spec.group), local_prime)
    if not isinstance(domain, PolynomialRing):
        raise DescriptorError("homomorphisms are defined out of polynomial rings")
    codomain = build_ring(spec.codomain)
    images = {name: parse_element(codomain, value) for name, value in spec.images.items()}
    missing = [v for v in domain.variables if v not in images]
    if missing:
        raise DescriptorError(f"no image given for {missing}")
    return ring_homomorphism(domain, codomain, images)


def build_presheaf_pair(spec: Any) -> PresheafPair:
    return PresheafPair.from_descriptor(_validated(PresheafPairDescriptor, load_json(spec)))


def build_tambara(spec: str, p: int = 3) -> Z2Tambara:
    """
    ``burnside:Z2`` is A(e) ⇄ A(Z/2); ``burnside:D<n>`` uses the dihedral tower
    level with p^j = n; ``invring:FILE`` reads {"ring": ..., "involution": ...}.
    """
    kind, _, arg = spec.partition(":")
    if kind == "burnside":
        if arg in ("Z2", "Z/2", "C2"):
            return burnside_tambara(0)
        match = re.fullmatch(r"D(\d+)", arg)
        if match:
            order, level = int(match.group(1)), 0
            while order % p == 0:
                order //= p
                level += 1
            if order != 1 or level == 0:
                raise DescriptorError(f"{arg} is not D_(p^j) for p={p}")
            return burnside_tambara(level, p)
        raise DescriptorError(f"unknown Burnside Tambara functor {arg!r}")
    if kind == "invring":
        data = load_json(arg)
        if not isinstance(data, dict) or "ring" not in data:
            raise DescriptorError("invring descriptors need 'ring' and 'involution'")
        ring = build_ring(data["ring"])
        involution = build_involution(ring, data.get("involution", {"kind": "identity"}))
        return from_involution_ring(ring, involution)
    raise DescriptorError(f"unknown Tambara functor {spec!r}")


def element_json(value: Any) -> Any:
    """JSON form of elements, vectors and nested containers; integers as strings."""
    if isinstance(value, RingElement):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [element_json(v) for v in value]
    if isinstance(value, dict):
        return {str(k): element_json(v) for k, v in value.items()}
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return str(value)


def ring_elements(ring: RingHandle, values: Sequence[Any]) -> List[RingElement]:
    return [parse_element(ring, v) for v in values]
