"""Exhaustive checks of the structural claims behind the factorization of ``R_n``.

Each property is checked on every instance in an inclusive range of ``n`` and
stops at the first failure, which is kept as a witness.  Per-permutation
properties use the scalar operations in :mod:`runslab.perm` and
:mod:`runslab.group`; distribution-level properties use the block engine.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .enumeration import DEFAULT_LIMITS, check_cap, distribution, iter_permutations
from .exceptions import DivisibilityError, InvalidInputError, InvariantViolation
from .group import (
    binomial_layers,
    expected_layers,
    generator_set,
    is_minimal,
    minimal_representative,
    orbit_of,
    orbit_polynomial,
)
from .perm import Permutation, apply_c, run_count

__all__ = ["PROPERTIES", "VerificationReport", "verify_all", "verify_property"]


@dataclass(frozen=True)
class VerificationReport:
    property: str
    n_range: tuple[int, int]
    passed: bool
    checked: int
    counterexample: tuple[Permutation | None, str] | None = None
    notes: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        cx = None
        if self.counterexample is not None:
            perm, detail = self.counterexample
            cx = {
                "permutation": None if perm is None else list(perm),
                "detail": detail,
            }
        return {
            "property": self.property,
            "n_range": list(self.n_range),
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": cx,
            "notes": self.notes,
        }


class _Failure(Exception):
    def __init__(self, perm, detail):
        super().__init__(detail)
        self.perm = perm
        self.detail = detail


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _pairs_apart(n: int) -> list[tuple[int, int]]:
    """All ``(i, j)`` with ``1 <= i <= j - 2 <= n - 2``."""
    return [(i, j) for j in range(3, n + 1) for i in range(1, j - 1)]


# -- per-permutation properties ----------------------------------------------
# Each checker yields once per instance and raises _Failure on a violation.


def _run_delta(n: int, notes: dict) -> Iterator[None]:
    for p in iter_permutations(n):
        r = run_count(p)
        for i in range(3, n):
            q = apply_c(i, p)
            if abs(run_count(q) - r) != 1:
                raise _Failure(p, f"c_{i} maps {r} runs to {run_count(q)} runs")
            yield


def _commutativity(n: int, notes: dict) -> Iterator[None]:
    pairs = _pairs_apart(n)
    for p in iter_permutations(n):
        for i, j in pairs:
            ij = apply_c(i, apply_c(j, p))
            ji = apply_c(j, apply_c(i, p))
            if ij != ji:
                raise _Failure(p, f"c_{i}c_{j}(p) = {ij} but c_{j}c_{i}(p) = {ji}")
            yield


def _non_fixing(n: int, notes: dict) -> Iterator[None]:
    pairs = _pairs_apart(n)
    for p in iter_permutations(n):
        for i, j in pairs:
            if apply_c(i, apply_c(j, p)) == p:
                raise _Failure(p, f"c_{i}c_{j} fixes p")
            yield


def _independence(n: int, notes: dict) -> Iterator[None]:
    gens = generator_set(n).indices
    for p in iter_permutations(n):
        r = run_count(p)
        for i in gens:
            ci = apply_c(i, p)
            step = _sign(run_count(ci) - r)
            for j in gens:
                if j == i:
                    continue
                cj = apply_c(j, p)
                later = _sign(run_count(apply_c(j, ci)) - run_count(cj))
                if later != step:
                    raise _Failure(
                        p,
                        f"c_{i} changes runs by sign {step} on p but by sign "
                        f"{later} on c_{j}(p)",
                    )
                yield


def _orbits(n: int):
    """Each orbit exactly once, seeded by its lexicographically first member."""
    gens = generator_set(n)
    seen: set[Permutation] = set()
    for p in iter_permutations(n):
        if p in seen:
            continue
        try:
            orbit = orbit_of(p, gens)
        except InvariantViolation as exc:
            raise _Failure(p, str(exc)) from exc
        members = orbit.permutations()
        overlap = seen.intersection(members)
        if overlap:
            raise _Failure(p, f"orbit overlaps an earlier orbit at {min(overlap)}")
        seen.update(members)
        yield p, orbit


def _orbit_size(n: int, notes: dict) -> Iterator[None]:
    m = generator_set(n).m
    count = 0
    for p, orbit in _orbits(n):
        if len(orbit) != 1 << m:
            raise _Failure(p, f"orbit has {len(orbit)} members, expected {1 << m}")
        count += 1
        yield
    if count * (1 << m) != factorial(n):
        raise _Failure(None, f"n={n}: {count} orbits of size {1 << m} do not cover {factorial(n)}")
    notes.setdefault("orbits", {})[str(n)] = count


def _orbit_polynomial(n: int, notes: dict) -> Iterator[None]:
    gens = generator_set(n)
    want = expected_layers(gens.m)
    for p, orbit in _orbits(n):
        layers = binomial_layers(orbit)
        if layers != want:
            raise _Failure(p, f"run-count layers {layers}, expected {want}")
        try:
            orbit_polynomial(orbit)
        except InvariantViolation as exc:
            raise _Failure(p, str(exc)) from exc
        q = orbit.minimal
        if not is_minimal(q, gens):
            raise _Failure(p, f"orbit minimum {q} is not fixed by the greedy test")
        for order in ("ascending", "descending"):
            greedy = minimal_representative(p, gens, order=order)
            if greedy != q:
                raise _Failure(p, f"{order} greedy gives {greedy}, orbit minimum is {q}")
        yield


# -- distribution-level properties -------------------------------------------


@lru_cache(maxsize=64)
def _polynomial(n: int, method: str, workers: int, force: bool):
    return distribution(n, method, workers, force).polynomial


def _evenness(n: int, notes: dict, workers: int, force: bool) -> Iterator[None]:
    if n < 2:
        return
    poly = _polynomial(n, "brute", workers, force)
    for e, c in poly:
        if c % 2:
            raise _Failure(None, f"R_{n} has odd coefficient {c} at z^{e}")
        yield


def _divisibility(n: int, notes: dict, workers: int, force: bool) -> Iterator[None]:
    m = generator_set(n).m
    poly = _polynomial(n, "brute", workers, force)
    try:
        poly.div_binomial_power(m)
    except DivisibilityError as exc:
        raise _Failure(None, f"R_{n}: {exc}") from exc
    mult = poly.multiplicity_at_minus_one()
    if mult < m:
        raise _Failure(None, f"R_{n} has multiplicity {mult} at -1, below m={m}")
    notes.setdefault("multiplicity", {})[str(n)] = {"m": m, "multiplicity": mult}
    yield


def _oracle_equality(n: int, notes: dict, workers: int, force: bool) -> Iterator[None]:
    brute = _polynomial(n, "brute", workers, force)
    orbit = _polynomial(n, "orbit", workers, force)
    if brute != orbit:
        raise _Failure(None, f"n={n}: brute {brute} != orbit {orbit}")
    yield


@dataclass(frozen=True)
class _Property:
    kind: str
    default_range: tuple[int, int]
    checker: object
    needs_engine: bool = False


PROPERTIES: dict[str, _Property] = {
    "run-delta": _Property("permutation", (4, 8), _run_delta),
    "commutativity": _Property("permutation", (1, 7), _commutativity),
    "non-fixing": _Property("permutation", (1, 7), _non_fixing),
    "orbit-size": _Property("permutation", (1, 8), _orbit_size),
    "independence": _Property("permutation", (1, 7), _independence),
    "orbit-polynomial": _Property("permutation", (1, 8), _orbit_polynomial),
    "evenness": _Property("distribution", (2, 10), _evenness, True),
    "divisibility": _Property("distribution", (4, 11), _divisibility, True),
    "oracle-equality": _Property("distribution", (1, 10), _oracle_equality, True),
}


def verify_property(
    name: str,
    n_range: tuple[int, int] | None = None,
    *,
    workers: int = 1,
    force: bool = False,
) -> VerificationReport:
    """Check ``name`` on every instance with ``n`` in the inclusive ``n_range``."""
    try:
        prop = PROPERTIES[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown property {name!r}; expected one of {', '.join(PROPERTIES)}"
        ) from None
    lo, hi = n_range if n_range is not None else prop.default_range
    if lo > hi:
        raise InvalidInputError(f"empty range {lo}..{hi}")
    check_cap(lo, prop.kind, force)
    check_cap(hi, prop.kind, force)
    notes: dict = {}
    checked = 0
    try:
        for n in range(lo, hi + 1):
            if prop.needs_engine:
                instances = prop.checker(n, notes, workers, force)
            else:
                instances = prop.checker(n, notes)
            for _ in instances:
                checked += 1
    except _Failure as failure:
        return VerificationReport(
            name, (lo, hi), False, checked, (failure.perm, failure.detail), notes
        )
    return VerificationReport(name, (lo, hi), True, checked, None, notes)


def verify_all(
    n_range: tuple[int, int], properties=None, *, workers: int = 1, force: bool = False
) -> list[VerificationReport]:
    """One report per (property, n), properties in declaration order."""
    names = list(PROPERTIES) if properties is None else list(properties)
    reports = []
    for name in names:
        for n in range(n_range[0], n_range[1] + 1):
            reports.append(verify_property(name, (n, n), workers=workers, force=force))
    return reports


def feasibility_limit(name: str) -> int:
    return DEFAULT_LIMITS[PROPERTIES[name].kind]
