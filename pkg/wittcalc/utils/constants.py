"""
Constants used across the exact-arithmetic library.

Values marked with an environment variable can be overridden at import time.
"""

import os

# Sampling
DEFAULT_SEED = int(os.getenv("WITTCALC_SEED", "20240229"))
DEFAULT_SAMPLES = int(os.getenv("WITTCALC_SAMPLES", "500"))
COEFFICIENT_BOUND = int(os.getenv("WITTCALC_COEFFICIENT_BOUND", "6"))
# sampled multiplicativity precondition of lift_polymap, cached per map
MULTIPLICATIVITY_SAMPLES = 16

# Size limits (declared, never silently truncated)
MAX_GROUP_ORDER = 54
MAX_NORM_INDEX = 6
MAX_NORM_SOURCE_CLASSES = 5
MAX_UNIT_CLASSES = 16
MAX_FINITE_TRUNCATION = 12
DP_MAX_DEGREE = 6
FREE_TAMBARA_DEGREE = int(os.getenv("WITTCALC_FREE_DEGREE", "3"))

# Universal Witt polynomial persistence; unset keeps the cache in memory only
POLY_CACHE_DB = os.getenv("WITTCALC_POLY_CACHE_DB") or None

LOG_LEVEL = os.getenv("WITTCALC_LOG_LEVEL", "INFO")

# CLI exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_OBSTRUCTION = 2
