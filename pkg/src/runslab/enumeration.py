"""Exhaustive computation of the run polynomial ``R_n(z)``.

Two independent routes are provided:

* ``distribution_bruteforce`` tallies ``z**run(p)`` over all ``n!`` permutations.
* ``distribution_via_orbits`` tallies only the orbit-minimal permutations and
  multiplies the result by ``(1+z)**m``.

Both walk the permutations in lexicographic order in numpy blocks.  A block
is a fixed prefix followed by every arrangement of the remaining values, so
block ``b`` covers lexicographic ranks ``b*k! .. (b+1)*k! - 1`` where ``k`` is
the block width.  The orbit route is not asymptotically cheaper: it still
visits every permutation to test minimality, it just accumulates ``n!/2**m``
terms instead of ``n!``.
"""

from __future__ import annotations

import logging
import os
import time
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np

from .exceptions import CapExceededError, DivisibilityError, InvalidInputError
from .group import generator_set
from .perm import MAX_N, Permutation
from .runpoly import RunPolynomial, merge_all

__all__ = [
    "DEFAULT_LIMITS",
    "DistributionResult",
    "check_cap",
    "distribution",
    "distribution_bruteforce",
    "distribution_via_orbits",
    "hard_cap",
    "iter_permutations",
    "minimal_representatives",
    "partition_work",
    "rank",
    "unrank",
]

logger = logging.getLogger(__name__)

#: Per-operation default ceilings on n; ``force=True`` lifts them up to the hard cap.
DEFAULT_LIMITS = {
    "brute": 13,
    "orbit": 13,
    "permutation": 8,
    "distribution": 11,
}

METHODS = ("brute", "orbit")

_BLOCK_WIDTH = 8


def hard_cap() -> int:
    """Global ceiling on n, lowered (never raised) by ``RUNSLAB_MAX_N``."""
    raw = os.environ.get("RUNSLAB_MAX_N")
    if raw is None or not raw.strip():
        return MAX_N
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring non-integer RUNSLAB_MAX_N=%r", raw)
        return MAX_N
    return max(1, min(MAX_N, value))


def check_cap(n: int, kind: str, force: bool = False) -> None:
    """Refuse ``n`` outside ``1..limit`` with a message stating the cost."""
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    cap = hard_cap()
    cost = factorial(n) if n <= 170 else None
    if n > cap:
        raise CapExceededError(
            f"n={n} exceeds the hard cap {cap}", n=n, limit=cap, cost=cost
        )
    limit = min(DEFAULT_LIMITS[kind], cap)
    if n > limit and not force:
        raise CapExceededError(
            f"n={n} needs {cost:,} permutations; the {kind} default limit is "
            f"n<={limit} (use force/--force to override)",
            n=n,
            limit=limit,
            cost=cost,
        )


# -- ranking ---------------------------------------------------------------


def unrank(r: int, n: int) -> Permutation:
    """The permutation of ``1..n`` with 0-based lexicographic rank ``r``."""
    total = factorial(n)
    if not 0 <= r < total:
        raise InvalidInputError(f"rank {r} outside 0..{total - 1}")
    pool = list(range(1, n + 1))
    out = []
    for k in range(n - 1, -1, -1):
        q, r = divmod(r, factorial(k))
        out.append(pool.pop(q))
    return Permutation._trusted(out)


def rank(p: Sequence[int]) -> int:
    """0-based lexicographic rank; inverse of :func:`unrank`."""
    n = len(p)
    pool = sorted(p)
    r = 0
    for pos, v in enumerate(p):
        q = pool.index(v)
        r += q * factorial(n - 1 - pos)
        pool.pop(q)
    return r


def partition_work(n: int, workers: int) -> list[tuple[int, int]]:
    """Split ranks ``0..n!-1`` into contiguous half-open ranges for workers.

    The granule is the set of permutations sharing a prefix of length ``d``,
    with ``d`` the shortest prefix giving at least ``workers`` granules.  Range
    sizes then differ by at most one granule.

    >>> partition_work(5, 5)
    [(0, 24), (24, 48), (48, 72), (72, 96), (96, 120)]
    """
    if workers < 1:
        raise InvalidInputError(f"workers must be >= 1, got {workers}")
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    total = factorial(n)
    depth = 0
    while depth < n and total // factorial(n - depth) < workers:
        depth += 1
    granule = factorial(n - depth)
    granules = total // granule
    parts = min(workers, granules)
    base, extra = divmod(granules, parts)
    ranges = []
    start = 0
    for k in range(parts):
        size = (base + (1 if k < extra else 0)) * granule
        ranges.append((start, start + size))
        start += size
    return ranges


# -- block kernels ---------------------------------------------------------


@lru_cache(maxsize=None)
def _suffix_table(width: int) -> np.ndarray:
    return np.array(list(permutations(range(width))), dtype=np.int64).reshape(
        factorial(width), width
    )


def _blocks(n: int, start: int, stop: int) -> Iterator[np.ndarray]:
    """Permutations with ranks in ``[start, stop)`` as 2-D arrays, in order."""
    width = min(n, _BLOCK_WIDTH)
    table = _suffix_table(width)
    size = factorial(width)
    head = n - width
    for b in range(start // size, -(-stop // size)):
        first = unrank(b * size, n)
        prefix = first[:head]
        rest = np.array(first[head:], dtype=np.int64)
        block = np.empty((size, n), dtype=np.int64, order="F")
        block[:, :head] = prefix
        block[:, head:] = rest[table]
        lo = max(start - b * size, 0)
        hi = min(stop - b * size, size)
        yield block[lo:hi]


def block_run_counts(block: np.ndarray) -> np.ndarray:
    """Row-wise run counts of a 2-D array of permutations."""
    if block.shape[1] < 3:
        return np.ones(block.shape[0], dtype=np.int64)
    up = block[:, 1:] > block[:, :-1]
    return np.count_nonzero(up[:, 1:] != up[:, :-1], axis=1) + 1


def block_apply_c(block: np.ndarray, i: int) -> np.ndarray:
    """Row-wise ``apply_c(i, .)`` with 1-based position ``i``."""
    out = block.copy()
    tail = block[:, i - 1 :]
    order = np.argsort(tail, axis=1)
    ordered = np.take_along_axis(tail, order, axis=1)
    # value with ascending rank k moves to rank (width - 1 - k)
    np.put_along_axis(out[:, i - 1 :], order, ordered[:, ::-1], axis=1)
    return out


def block_runs_after_c(
    block: np.ndarray, i: int, runs: np.ndarray | None = None
) -> np.ndarray:
    """Row-wise ``run_count(apply_c(i, .))`` without building the image.

    Needs ``2 <= i <= n``.  Complementing the suffix flips every comparison
    inside it and leaves the prefix alone, so only the direction changes at
    positions ``i-1`` and ``i`` can differ.  The new comparison across
    positions ``i-1``/``i`` comes from ranks within the suffix.
    """
    n = block.shape[1]
    if not 2 <= i <= n:
        raise InvalidInputError(f"position {i} outside 2..{n}")
    if runs is None:
        runs = block_run_counts(block)
    if n < 3:
        return runs
    first = block[:, i - 1]
    left = block[:, i - 2]
    prefix_below_first = np.zeros(block.shape[0], dtype=np.int64)
    prefix_below_left = np.zeros(block.shape[0], dtype=np.int64)
    for col in range(i - 1):
        prefix_below_first += block[:, col] < first
        prefix_below_left += block[:, col] < left
    # values are 1..n, so #(suffix < x) = x - 1 - #(prefix < x)
    first_rank = first - 1 - prefix_below_first
    suffix_below_left = left - 1 - prefix_below_left
    # the entry moved to position i has suffix rank (n - i) - first_rank
    cross_new = (n - i) - first_rank >= suffix_below_left
    cross_old = block[:, i - 1] > block[:, i - 2]
    delta = np.zeros(block.shape[0], dtype=np.int64)
    if i >= 3:
        before = block[:, i - 2] > block[:, i - 3]
        delta += (before != cross_new).astype(np.int64) - (before != cross_old)
    if i <= n - 1:
        after = block[:, i] > block[:, i - 1]
        delta += (cross_new != ~after).astype(np.int64) - (cross_old != after)
    return runs + delta


def block_is_minimal(block: np.ndarray, runs: np.ndarray | None = None) -> np.ndarray:
    n = block.shape[1]
    if runs is None:
        runs = block_run_counts(block)
    keep = np.ones(block.shape[0], dtype=bool)
    for i in generator_set(n).indices:
        keep &= block_runs_after_c(block, i, runs) == runs + 1
    return keep


def _tally(n: int, start: int, stop: int, method: str) -> list[int]:
    counts = np.zeros(n + 1, dtype=np.int64)
    for block in _blocks(n, start, stop):
        runs = block_run_counts(block)
        if method == "orbit":
            runs = runs[block_is_minimal(block, runs)]
        counts += np.bincount(runs, minlength=n + 1)[: n + 1]
    return [int(c) for c in counts]


def _tally_task(args: tuple[int, int, int, str]) -> list[int]:
    return _tally(*args)


def _accumulate(n: int, method: str, workers: int) -> RunPolynomial:
    ranges = partition_work(n, workers)
    tasks = [(n, a, b, method) for a, b in ranges]
    if workers == 1 or len(tasks) == 1:
        partials = [_tally_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=len(tasks)) as pool:
            partials = list(pool.map(_tally_task, tasks))
    return merge_all(RunPolynomial.from_dense(c) for c in partials)


def iter_permutations(n: int) -> Iterator[Permutation]:
    """All permutations of ``1..n`` in lexicographic order."""
    for t in permutations(range(1, n + 1)):
        yield Permutation._trusted(t)


def minimal_representatives(n: int, force: bool = False) -> Iterator[Permutation]:
    """Orbit-minimal permutations of length ``n`` in lexicographic order."""
    check_cap(n, "orbit", force)
    for block in _blocks(n, 0, factorial(n)):
        for row in block[block_is_minimal(block)]:
            yield Permutation._trusted(int(v) for v in row)


# -- distributions ---------------------------------------------------------


@dataclass(frozen=True)
class DistributionResult:
    n: int
    m: int
    polynomial: RunPolynomial
    method: str
    quotient: RunPolynomial | None
    multiplicity_at_minus_one: int
    elapsed: float = field(compare=False)
    workers: int = field(compare=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "method": self.method,
            "polynomial": self.polynomial.to_json(),
            "quotient": None if self.quotient is None else self.quotient.to_json(),
            "multiplicity_at_minus_one": self.multiplicity_at_minus_one,
            "coefficient_sum": str(self.polynomial.eval_at(1)),
            "elapsed_seconds": round(self.elapsed, 6),
            "workers": self.workers,
        }


def _default_workers() -> int:
    return os.cpu_count() or 1


def _finish(n, m, poly, quotient, method, t0, workers) -> DistributionResult:
    elapsed = time.perf_counter() - t0
    logger.debug("R_%d via %s in %.3fs on %d workers", n, method, elapsed, workers)
    return DistributionResult(
        n=n,
        m=m,
        polynomial=poly,
        method=method,
        quotient=quotient if n >= 4 else None,
        multiplicity_at_minus_one=poly.multiplicity_at_minus_one(),
        elapsed=elapsed,
        workers=workers,
    )


def distribution_bruteforce(
    n: int, workers: int | None = None, force: bool = False
) -> DistributionResult:
    """Tally ``z**run(p)`` over every permutation of length ``n``."""
    check_cap(n, "brute", force)
    workers = workers or _default_workers()
    m = generator_set(n).m
    t0 = time.perf_counter()
    poly = _accumulate(n, "brute", workers)
    try:
        quotient = poly.div_binomial_power(m)
    except DivisibilityError:
        quotient = None
    return _finish(n, m, poly, quotient, "brute", t0, workers)


def distribution_via_orbits(
    n: int, workers: int | None = None, force: bool = False
) -> DistributionResult:
    """Sum ``z**run(q)`` over orbit-minimal ``q`` and multiply by ``(1+z)**m``."""
    check_cap(n, "orbit", force)
    workers = workers or _default_workers()
    m = generator_set(n).m
    t0 = time.perf_counter()
    quotient = _accumulate(n, "orbit", workers)
    poly = quotient.mul_binomial_power(m)
    return _finish(n, m, poly, quotient, "orbit", t0, workers)


def distribution(
    n: int, method: str = "brute", workers: int | None = None, force: bool = False
) -> DistributionResult:
    if method == "brute":
        return distribution_bruteforce(n, workers, force)
    if method == "orbit":
        return distribution_via_orbits(n, workers, force)
    raise InvalidInputError(f"unknown method {method!r}; expected one of {METHODS}")
