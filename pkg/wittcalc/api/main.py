"""
Witt Calculator API Server

FastAPI server exposing Witt vector, Burnside ring and replay reports.
"""

import logging

from fastapi import FastAPI

from wittcalc import __version__
from wittcalc.api.routes import router
from wittcalc.database import db
from wittcalc.utils.constants import LOG_LEVEL, POLY_CACHE_DB

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Witt Calculator API",
    description="Exact computations with Witt vectors, polynomial maps, Burnside rings and Tambara functors",
    version=__version__,
)

app.include_router(router)


@app.on_event("startup")
async def startup_event():
    """Create the polynomial cache table when persistence is configured."""
    logger.info("Starting up Witt Calculator API...")
    if POLY_CACHE_DB is not None:
        db.init_database()
        logger.info("Polynomial cache at %s", POLY_CACHE_DB)


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
