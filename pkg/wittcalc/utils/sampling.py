"""
Seeded sampling and small combinatorial helpers shared by the check suites.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, List, Optional, Tuple

from wittcalc.utils.constants import DEFAULT_SEED

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a sampled (or exhaustive) property check."""
    name: str
    passed: bool
    samples: int
    witness: Optional[Any] = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def make_rng(seed: Optional[int] = None) -> random.Random:
    """Return a deterministic generator; ``None`` means the configured default seed."""
    return random.Random(DEFAULT_SEED if seed is None else seed)


def sampled_check(
    name: str,
    samples: int,
    draw: Callable[[], Tuple],
    predicate: Callable[..., bool],
) -> CheckResult:
    """
    Evaluate ``predicate(*draw())`` ``samples`` times.

    Stops at the first failing draw and reports it as the witness.
    """
    for _ in range(samples):
        args = draw()
        if not predicate(*args):
            logger.info("check %s failed at %s", name, args)
            return CheckResult(name, False, samples, witness=args)
    logger.debug("check %s passed on %d samples", name, samples)
    return CheckResult(name, True, samples)


def exhaustive_check(name: str, cases, predicate: Callable[..., bool]) -> CheckResult:
    """Evaluate ``predicate`` on every tuple in ``cases``."""
    count = 0
    for args in cases:
        count += 1
        if not predicate(*args):
            logger.info("check %s failed at %s", name, args)
            return CheckResult(name, False, count, witness=args)
    return CheckResult(name, True, count)


def subsets(n: int) -> Iterator[Tuple[int, ...]]:
    """All subsets of {0..n-1} as sorted tuples, smallest first."""
    for size in range(n + 1):
        yield from itertools.combinations(range(n), size)


def binomial(n: int, k: int) -> int:
    """Generalised binomial coefficient C(n, k) for any integer n and k >= 0."""
    if k < 0:
        return 0
    result = 1
    for i in range(k):
        result = result * (n - i)
    for i in range(2, k + 1):
        result //= i
    return result


def multisets(size: int, symbols: int) -> List[Tuple[int, ...]]:
    """Multisets of ``size`` drawn from ``range(symbols)``, in lexicographic order."""
    return list(itertools.combinations_with_replacement(range(symbols), size))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))
