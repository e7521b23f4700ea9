"""
API route handlers for the Witt vector calculator.
"""

import logging
from typing import Optional

from fastapi import APIRouter, HTTPException
from pydantic import ValidationError

from wittcalc import __version__
from wittcalc.database import db
from wittcalc.models import burnside, witt
from wittcalc.models.schemas import HealthResponse, LiftRequest, Report, WittRequest
from wittcalc.services import descriptor_service, replay_service
from wittcalc.services.descriptor_service import element_json
from wittcalc.utils.constants import POLY_CACHE_DB
from wittcalc.utils.errors import AlgebraError, NotInGhostImage, UnknownGroup, UnknownScenario

logger = logging.getLogger(__name__)

router = APIRouter()


def _obstruction(e: NotInGhostImage) -> HTTPException:
    return HTTPException(
        status_code=422,
        detail=Report(status="obstruction",
                      payload={"index": e.index, "residue": element_json(e.residue)},
                      witnesses=[{"index": e.index, "residue": element_json(e.residue)}]).model_dump(),
    )


@router.get("/api/health", response_model=HealthResponse)
async def health_check():
    """
    Health check endpoint.

    Returns:
        HealthResponse: service status and the number of persisted polynomials
    """
    cached = 0
    if POLY_CACHE_DB is not None:
        try:
            cached = db.count_polynomials()
        except Exception as e:
            logger.warning("polynomial cache unavailable: %s", e)
    return HealthResponse(status="healthy", version=__version__, cached_polynomials=cached)


@router.get("/api/replay/{name}", response_model=Report)
def replay(name: str, seed: Optional[int] = None, samples: Optional[int] = None):
    """
    Replay an acceptance scenario.

    Args:
        name: cex, a4, units, formula, psi or dwork
    """
    try:
        return replay_service.replay(name, samples, seed)
    except UnknownScenario as e:
        raise HTTPException(status_code=404, detail=str(e))
    except AlgebraError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/api/witt/ghost", response_model=Report)
def witt_ghost(request: WittRequest):
    """Ghost components of a p-typical Witt vector."""
    try:
        ring = descriptor_service.build_ring(request.ring.model_dump(exclude_none=True))
        trunc = witt.TruncationSet.p_typical(request.p, request.m)
        vector = witt.WittRing(ring, trunc).vector(descriptor_service.ring_elements(ring, request.vector))
        return Report(status="ok", payload=element_json(witt.ghost(vector)))
    except (AlgebraError, ValueError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/api/witt/lift", response_model=Report)
def witt_lift(request: LiftRequest):
    """
    W_m(f) of a built-in polynomial map.

    Returns 422 with the obstruction report when the lift does not exist.
    """
    try:
        f = descriptor_service.build_map(request.map.model_dump(exclude_none=True))
        vector = descriptor_service.ring_elements(f.domain, request.vector)
        return Report(status="ok", payload=element_json(witt.lift_polymap(f, request.p, request.m, vector)))
    except NotInGhostImage as e:
        raise _obstruction(e)
    except (AlgebraError, ValueError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.get("/api/burnside/{group}/marks")
def burnside_marks(group: str):
    """The table of marks of A(G), rows G/H and columns K."""
    try:
        frame = burnside.burnside_ring(group).marks.frame()
    except UnknownGroup as e:
        raise HTTPException(status_code=404, detail=str(e))
    except AlgebraError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return {"columns": list(frame.columns), "index": list(frame.index), "marks": frame.values.tolist()}


@router.get("/api/burnside/{group}/units", response_model=Report)
def burnside_units(group: str):
    """All units of A(G)."""
    try:
        found = burnside.units(burnside.burnside_ring(group))
    except UnknownGroup as e:
        raise HTTPException(status_code=404, detail=str(e))
    except AlgebraError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return Report(status="ok", payload={"count": len(found), "units": element_json(found)})
