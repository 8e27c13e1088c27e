"""Permutations in one-line notation, alternating runs, and complements.

Positions are 1-indexed everywhere in the public API, so ``apply_c(3, p)``
leaves ``p[0]`` and ``p[1]`` (the entries at positions 1 and 2) untouched.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence

from .exceptions import InvalidInputError, PermutationParseError

__all__ = [
    "MAX_N",
    "Permutation",
    "apply_c",
    "complement",
    "direction_changes",
    "parse_permutation",
    "relative_complement",
    "run_count",
    "vertical_complement",
]

#: Largest supported length; entries then fit in 8 bits and n! < 2**62.
MAX_N = 20


def _missing_or_bad(entries: Sequence[int]) -> str | None:
    n = len(entries)
    seen = set()
    for v in entries:
        if v in seen:
            return f"duplicate {v}"
        if v < 1 or v > n:
            return f"value {v} out of range 1..{n}"
        seen.add(v)
    return None


class Permutation(tuple):
    """A permutation of ``1..n`` stored as an immutable tuple.

    Indexing follows Python (0-based); the module-level operations use
    1-based positions to match the usual mathematical notation.

    >>> Permutation([3, 1, 5, 4, 6, 2])
    Permutation('3 1 5 4 6 2')
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]):
        values = tuple(int(v) for v in entries)
        if not values:
            raise InvalidInputError("a permutation needs at least one entry")
        if len(values) > MAX_N:
            raise InvalidInputError(
                f"length {len(values)} exceeds the supported maximum {MAX_N}"
            )
        problem = _missing_or_bad(values)
        if problem is not None:
            raise InvalidInputError(f"not a permutation: {problem}")
        return tuple.__new__(cls, values)

    @classmethod
    def _trusted(cls, values: Iterable[int]) -> "Permutation":
        # Caller guarantees validity; skips the O(n) check in hot loops.
        return tuple.__new__(cls, values)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self)

    def compact(self) -> str:
        """Digit-string form (``"315462"``); falls back to spaces when n > 9."""
        if len(self) <= 9:
            return "".join(map(str, self))
        return str(self)

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation('{self}')"


def direction_changes(p: Sequence[int]) -> list[int]:
    """1-based interior positions where ``p`` has a peak or a valley."""
    return [
        i + 1
        for i in range(1, len(p) - 1)
        if (p[i - 1] < p[i]) != (p[i] < p[i + 1])
    ]


def run_count(p: Sequence[int]) -> int:
    """Number of alternating runs: one more than the number of direction changes.

    >>> run_count(Permutation([3, 1, 5, 4, 6, 2]))
    5
    """
    changes = 0
    for i in range(1, len(p) - 1):
        if (p[i - 1] < p[i]) != (p[i] < p[i + 1]):
            changes += 1
    return changes + 1


def complement(p: Permutation) -> Permutation:
    """Replace every entry ``v`` by ``n + 1 - v``."""
    top = len(p) + 1
    return Permutation._trusted(top - v for v in p)


def relative_complement(s: Sequence[int]) -> tuple[int, ...]:
    """Swap the j-th smallest and j-th largest values of ``s`` in place.

    The values need not be ``1..len(s)``; only their relative order matters.

    >>> relative_complement([2, 4, 7, 8, 3])
    (8, 4, 3, 2, 7)
    """
    values = tuple(s)
    if not values:
        raise InvalidInputError("relative complement of an empty string")
    ordered = sorted(values)
    if len(set(ordered)) != len(ordered):
        dup = next(a for a, b in zip(ordered, ordered[1:]) if a == b)
        raise InvalidInputError(f"duplicate {dup}")
    mirror = dict(zip(ordered, reversed(ordered)))
    return tuple(mirror[v] for v in values)


def vertical_complement(subset: Iterable[int], universe: Iterable[int]) -> frozenset[int]:
    """Map each element of ``subset`` from its rank in ``universe`` to the mirrored rank.

    >>> sorted(vertical_complement({1, 4, 6}, {1, 2, 3, 4, 6, 8, 9}))
    [3, 4, 9]
    """
    sub = set(subset)
    ordered = sorted(set(universe))
    stray = sub.difference(ordered)
    if stray:
        raise InvalidInputError(
            f"subset is not contained in universe: {sorted(stray)}"
        )
    mirror = dict(zip(ordered, reversed(ordered)))
    return frozenset(mirror[v] for v in sub)


def apply_c(i: int, p: Permutation) -> Permutation:
    """Keep positions ``1..i-1`` and complement the suffix relative to its values.

    ``apply_c(1, p)`` is ``complement(p)``; ``apply_c(len(p), p)`` is ``p``.
    """
    n = len(p)
    if not 1 <= i <= n:
        raise InvalidInputError(f"position {i} outside 1..{n}")
    head = p[: i - 1]
    tail = p[i - 1 :]
    ordered = sorted(tail)
    mirror = dict(zip(ordered, reversed(ordered)))
    return Permutation._trusted(head + tuple(mirror[v] for v in tail))


_DELIMITED = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Read ``"3 1 5 4 6 2"``, ``"3,1,5,4,6,2"`` or the digit string ``"315462"``.

    The undelimited form is only accepted for n <= 9, where each entry is
    a single digit.
    """
    stripped = text.strip()
    if not stripped:
        raise PermutationParseError("empty permutation text")
    tokens = [t for t in _DELIMITED.split(stripped) if t]
    if len(tokens) == 1 and len(tokens[0]) > 1:
        token = tokens[0]
        if not token.isdigit():
            raise PermutationParseError(f"unreadable entry {token!r}")
        if len(token) > 9:
            raise PermutationParseError(
                "digit-string form is limited to n <= 9; delimit multi-digit entries"
            )
        tokens = list(token)
    values = []
    for tok in tokens:
        if not tok.isdigit():
            raise PermutationParseError(f"unreadable entry {tok!r}")
        values.append(int(tok))
    if len(values) > MAX_N:
        raise PermutationParseError(
            f"length {len(values)} exceeds the supported maximum {MAX_N}"
        )
    problem = _missing_or_bad(values)
    if problem is not None:
        raise PermutationParseError(problem)
    return Permutation._trusted(values)
