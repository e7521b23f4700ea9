"""
SQLite persistence for the universal Witt polynomial cache.

The database is only used when ``POLY_CACHE_DB`` is configured; expressions
are stored as sympy ``srepr`` strings.
"""

import logging
import sqlite3
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

from wittcalc.utils.constants import POLY_CACHE_DB

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).parent / "schema.sql"


def get_connection(path: Optional[str] = None):
    """Get a database connection."""
    conn = sqlite3.connect(path or POLY_CACHE_DB)
    conn.row_factory = sqlite3.Row
    return conn


@contextmanager
def get_db(path: Optional[str] = None):
    """Context manager for database connections."""
    conn = get_connection(path)
    try:
        yield conn
        conn.commit()
    except Exception:
        conn.rollback()
        raise
    finally:
        conn.close()


def init_database(path: Optional[str] = None):
    """Create the cache table if it does not exist."""
    with open(SCHEMA_PATH, "r") as f:
        schema_sql = f.read()
    with get_db(path) as conn:
        conn.executescript(schema_sql)


def load_polynomials(prime: int, length: int, kind: str, path: Optional[str] = None) -> Optional[List[str]]:
    """Stored expressions for one (prime, length, kind), ordered by coordinate, or None."""
    with get_db(path) as conn:
        rows = conn.execute(
            """SELECT idx, expr FROM witt_polynomials
               WHERE prime = ? AND length = ? AND kind = ?
               ORDER BY idx""",
            (prime, length, kind),
        ).fetchall()
    if not rows:
        return None
    return [row["expr"] for row in rows]


def store_polynomials(prime: int, length: int, kind: str, exprs: List[str], path: Optional[str] = None):
    """Insert or replace the expressions of one (prime, length, kind)."""
    with get_db(path) as conn:
        conn.executemany(
            """INSERT OR REPLACE INTO witt_polynomials (prime, length, kind, idx, expr)
               VALUES (?, ?, ?, ?, ?)""",
            [(prime, length, kind, idx, expr) for idx, expr in enumerate(exprs)],
        )
    logger.info("stored %d %s polynomials for p=%d, m=%d", len(exprs), kind, prime, length)


def count_polynomials(path: Optional[str] = None) -> int:
    with get_db(path) as conn:
        return conn.execute("SELECT COUNT(*) FROM witt_polynomials").fetchone()[0]


def clear_polynomial_cache(path: Optional[str] = None):
    """Delete every stored polynomial."""
    with get_db(path) as conn:
        conn.execute("DELETE FROM witt_polynomials")
