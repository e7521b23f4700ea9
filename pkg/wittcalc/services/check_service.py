"""
Check suites shared by the command line, the HTTP routes and the replays.

Every suite returns ``CheckResult`` lists; ``to_report`` turns them into the
wire ``Report``.
"""

import itertools
import logging
from typing import Any, Dict, List, Optional, Sequence

from wittcalc.models import free_tambara as ft
from wittcalc.models.divided_powers import divided_relations_check, extend_homogeneous, sym_power
from wittcalc.models.polymap import PolyMap, compose, product
from wittcalc.models.rings import RingHandle
from wittcalc.models.schemas import CheckResultModel, Report
from wittcalc.models.tambara import (
    Z2Tambara,
    check_ghost_naturality,
    check_morphism,
    check_tambara,
    witt_tambara,
)
from wittcalc.models.witt import TruncationSet, WittRing, ghost, lift_polymap
from wittcalc.services.descriptor_service import element_json
from wittcalc.utils.constants import DEFAULT_SAMPLES, FREE_TAMBARA_DEGREE
from wittcalc.utils.sampling import CheckResult, exhaustive_check, make_rng, sampled_check

logger = logging.getLogger(__name__)


def to_model(result: CheckResult) -> CheckResultModel:
    witness = element_json(result.witness) if result.witness is not None else None
    return CheckResultModel(name=result.name, passed=result.passed, samples=result.samples, witness=witness)


def to_report(results: Sequence[CheckResult], payload: Any = None) -> Report:
    """ok when every check passed, fail otherwise; failing witnesses are attached."""
    models = [to_model(r) for r in results]
    failed = [m for m in models if not m.passed]
    for m in failed:
        logger.info("check failed: %s", m.name)
    body = {"checks": [m.model_dump() for m in models]}
    if payload is not None:
        body["result"] = payload
    return Report(status="fail" if failed else "ok", payload=body,
                  witnesses=[m.witness for m in failed if m.witness is not None])


# Witt vectors

def ghost_homomorphism_suite(ring: RingHandle, p: int, m: int, samples: int = DEFAULT_SAMPLES,
                             seed: Optional[int] = None) -> List[CheckResult]:
    """w(u + v) = w(u) + w(v) and w(uv) = w(u) w(v) on random vectors over ``ring``."""
    witt = WittRing(ring, TruncationSet.p_typical(p, m))
    rng = make_rng(seed)

    def draw():
        return witt.random_element(rng, 3), witt.random_element(rng, 3)

    return [
        sampled_check(f"ghost of sums in {witt.label}", samples, draw,
                      lambda u, v: ghost(u + v) == [a + b for a, b in zip(ghost(u), ghost(v))]),
        sampled_check(f"ghost of products in {witt.label}", samples, draw,
                      lambda u, v: ghost(u * v) == [a * b for a, b in zip(ghost(u), ghost(v))]),
    ]


def lift_functoriality_suite(f: PolyMap, g: PolyMap, p: int, m: int, samples: int = DEFAULT_SAMPLES,
                             seed: Optional[int] = None) -> List[CheckResult]:
    """W(g∘f) = W(g)∘W(f) and W(f·g) = W(f)·W(g) when the degrees allow it."""
    rng = make_rng(seed)
    witt = WittRing(f.domain, TruncationSet.p_typical(p, m))

    def draw():
        return (witt.random_element(rng, 3),)

    results = [sampled_check(
        f"W_{m}({g.name}∘{f.name}) = W_{m}({g.name})∘W_{m}({f.name})", samples, draw,
        lambda a: lift_polymap(compose(g, f), p, m, a) == lift_polymap(g, p, m, lift_polymap(f, p, m, a)))]
    if f.domain == g.domain and f.codomain == g.codomain:
        results.append(sampled_check(
            f"W_{m}({f.name}·{g.name}) = W_{m}({f.name})·W_{m}({g.name})", samples, draw,
            lambda a: lift_polymap(product(f, g), p, m, a) == lift_polymap(f, p, m, a) * lift_polymap(g, p, m, a)))
    return results


# Tambara functors

def witt_tambara_suite(t: Z2Tambara, p: int, m: int, samples: int = DEFAULT_SAMPLES,
                       seed: Optional[int] = None) -> List[CheckResult]:
    """The Tambara axioms for W_m(T) and naturality of its ghost maps."""
    wt = witt_tambara(t, p, m)
    return check_tambara(wt, samples, seed) + check_ghost_naturality(t, wt, samples, seed)


def free_tambara_suite(pair: ft.PresheafPair, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None,
                       degree: int = FREE_TAMBARA_DEGREE) -> List[CheckResult]:
    """Exact ring laws of the bottom ring up to ``degree`` and the sampled Tambara axioms."""
    t = ft.free_tambara(pair)
    return ft.check_ring_structure(t.bottom, degree) + check_tambara(t, samples, seed)


def adjunction_suite(free: Z2Tambara, target: Z2Tambara, alpha: Dict, beta: Dict,
                     samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> List[CheckResult]:
    """The extension is a Tambara morphism and restricts back to (alpha, beta)."""
    morphism = ft.adjunction_extend(free, target, alpha, beta)
    alpha_back, beta_back = ft.restrict_to_generators(morphism)
    round_trip = CheckResult(
        "extension restricts to the generators",
        all(alpha_back[x] == target.top(alpha[x]) for x in alpha)
        and all(beta_back[y] == target.bottom(beta[y]) for y in beta),
        1, details={"alpha": alpha_back, "beta": beta_back})
    return check_morphism(morphism, samples, seed) + [round_trip]


def adjunction_box_suite(free: Z2Tambara, target: Z2Tambara, top_box: Sequence, bottom_box: Sequence,
                         samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> List[CheckResult]:
    """
    Every admissible (alpha, beta) with alpha on orbit representatives drawn
    from ``top_box`` and beta from ``bottom_box`` extends and restricts back.
    Inadmissible choices are skipped.
    """
    pair: ft.PresheafPair = free.bottom.pair
    reps = pair.orbits
    admissible = []
    for values in itertools.product(top_box, repeat=len(reps)):
        alpha = {}
        for i, a in zip(reps, values):
            a = target.top(a)
            alpha[pair.points[i]] = a
            alpha[pair.points[pair.swap[i]]] = target.involution(a)
        for betas in itertools.product(bottom_box, repeat=len(pair.ys)):
            beta = {y: target.bottom(b) for y, b in zip(pair.ys, betas)}
            if all(alpha[pair.points[pair.swap[i]]] == target.involution(alpha[pair.points[i]]) for i in reps) \
                    and all(target.res(beta[y]) == alpha[pair.points[i]] for y, i in zip(pair.ys, pair.res)):
                admissible.append((alpha, beta))

    def round_trips(alpha, beta):
        back_alpha, back_beta = ft.restrict_to_generators(ft.adjunction_extend(free, target, alpha, beta))
        return back_alpha == alpha and back_beta == beta

    results = [exhaustive_check(f"{free.name} -> {target.name}: round trip", admissible, round_trips)]
    if admissible:
        alpha, beta = admissible[-1]
        results += check_morphism(ft.adjunction_extend(free, target, alpha, beta), samples, seed)
    return results


def resolution_suite(t: Z2Tambara, top_generators: Sequence, bottom_generators: Sequence,
                     samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None) -> List[CheckResult]:
    resolution = ft.cohomological_resolution(t, top_generators, bottom_generators, samples, seed)
    return [resolution.surjective] + check_morphism(resolution.morphism, samples, seed)


# Divided powers

def divided_powers_suite(ring: RingHandle, degree: int, samples: int = DEFAULT_SAMPLES,
                         seed: Optional[int] = None) -> List[CheckResult]:
    return divided_relations_check(sym_power(ring, degree), samples, seed)


def homogeneous_extension_suite(phi: PolyMap, p: int, samples: int = DEFAULT_SAMPLES,
                                seed: Optional[int] = None) -> List[CheckResult]:
    return extend_homogeneous(phi, p, samples, seed).check(samples, seed)
