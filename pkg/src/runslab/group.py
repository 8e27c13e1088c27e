"""The commuting involutions ``c_3, c_5, ...`` and the orbits they generate.

For length ``n`` the generators sit at positions ``3, 5, ...`` up to ``n-1``
(even ``n``) or ``n-2`` (odd ``n``), giving ``m = (n-2)//2`` of them.  A group
element is a bitmask over those generators, bit ``j`` selecting the ``j``-th
position in ascending order, so the group is ``(Z/2)^m`` under XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exceptions import InvalidInputError, InvariantViolation
from .perm import MAX_N, Permutation, apply_c, run_count
from .runpoly import RunPolynomial

__all__ = [
    "GeneratorSet",
    "GroupElement",
    "Orbit",
    "apply_element",
    "generator_set",
    "is_minimal",
    "minimal_representative",
    "orbit_of",
    "orbit_polynomial",
]


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    indices: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.indices)

    @property
    def order(self) -> int:
        return 1 << len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)


def generator_set(n: int) -> GeneratorSet:
    """Generator positions for permutations of length ``n``.

    >>> generator_set(7).indices
    (3, 5)
    """
    if not 1 <= n <= MAX_N:
        raise InvalidInputError(f"length {n} outside 1..{MAX_N}")
    top = n - 1 if n % 2 == 0 else n - 2
    return GeneratorSet(n, tuple(range(3, top + 1, 2)))


@dataclass(frozen=True, order=True)
class GroupElement:
    mask: int

    def __post_init__(self):
        if self.mask < 0:
            raise InvalidInputError(f"negative group element mask {self.mask}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.mask ^ other.mask)

    def generators(self, gens: GeneratorSet) -> tuple[int, ...]:
        """Positions of the generators this element applies."""
        return tuple(i for j, i in enumerate(gens.indices) if self.mask >> j & 1)

    def label(self, gens: GeneratorSet) -> str:
        chosen = self.generators(gens)
        if not chosen:
            return "{}"
        return "{" + ",".join(f"c_{i}" for i in chosen) + "}"


def _check_dims(p: Permutation, gens: GeneratorSet) -> None:
    if len(p) != gens.n:
        raise InvalidInputError(
            f"permutation of length {len(p)} used with generators for n={gens.n}"
        )


def apply_element(g: GroupElement | int, p: Permutation, gens: GeneratorSet | None = None) -> Permutation:
    """Apply every generator selected by ``g``, in ascending position order."""
    if gens is None:
        gens = generator_set(len(p))
    _check_dims(p, gens)
    mask = g.mask if isinstance(g, GroupElement) else int(g)
    if not 0 <= mask < gens.order:
        raise InvalidInputError(f"mask {mask} is not an element of a group of order {gens.order}")
    for j, i in enumerate(gens.indices):
        if mask >> j & 1:
            p = apply_c(i, p)
    return p


@dataclass(frozen=True)
class Orbit:
    """All ``2**m`` images of a seed, indexed by group-element mask."""

    gens: GeneratorSet
    members: tuple[tuple[Permutation, int], ...]
    minimal_mask: int

    @property
    def m(self) -> int:
        return self.gens.m

    @property
    def minimal(self) -> Permutation:
        return self.members[self.minimal_mask][0]

    @property
    def minimal_runs(self) -> int:
        return self.members[self.minimal_mask][1]

    def permutations(self) -> list[Permutation]:
        return [p for p, _ in self.members]

    def run_counts(self) -> list[int]:
        return [r for _, r in self.members]

    def __len__(self) -> int:
        return len(self.members)


def orbit_of(p: Permutation, gens: GeneratorSet | None = None) -> Orbit:
    """Materialize the orbit of ``p``; raises if two masks give the same image."""
    if gens is None:
        gens = generator_set(len(p))
    _check_dims(p, gens)
    images = [apply_element(mask, p, gens) for mask in range(gens.order)]
    members = tuple((q, run_count(q)) for q in images)
    if len({q for q, _ in members}) != len(members):
        raise InvariantViolation(
            f"orbit of {p} has fewer than {gens.order} distinct members", witness=p
        )
    minimal_mask = min(range(len(members)), key=lambda k: (members[k][1], k))
    return Orbit(gens, members, minimal_mask)


def minimal_representative(
    p: Permutation, gens: GeneratorSet | None = None, *, order: str = "ascending"
) -> Permutation:
    """Greedily apply each generator exactly when it lowers the run count."""
    return minimal_representative_with_mask(p, gens, order=order)[0]


def minimal_representative_with_mask(
    p: Permutation, gens: GeneratorSet | None = None, *, order: str = "ascending"
) -> tuple[Permutation, GroupElement]:
    if gens is None:
        gens = generator_set(len(p))
    _check_dims(p, gens)
    if order not in ("ascending", "descending"):
        raise InvalidInputError(f"unknown generator order {order!r}")
    positions = list(enumerate(gens.indices))
    if order == "descending":
        positions.reverse()
    runs = run_count(p)
    mask = 0
    for j, i in positions:
        candidate = apply_c(i, p)
        candidate_runs = run_count(candidate)
        if candidate_runs < runs:
            p, runs = candidate, candidate_runs
            mask |= 1 << j
    return p, GroupElement(mask)


def is_minimal(p: Permutation, gens: GeneratorSet | None = None) -> bool:
    """True when every generator raises the run count of ``p`` by exactly one."""
    if gens is None:
        gens = generator_set(len(p))
    _check_dims(p, gens)
    target = run_count(p) + 1
    return all(run_count(apply_c(i, p)) == target for i in gens.indices)


def orbit_polynomial(orbit: Orbit) -> RunPolynomial:
    """Sum of ``z**run`` over the orbit, checked against ``z**a * (1+z)**m``."""
    total = RunPolynomial()
    for _, r in orbit.members:
        total = total.add_term(r, 1)
    a = orbit.minimal_runs
    expected = RunPolynomial.monomial(a).mul_binomial_power(orbit.m)
    if total != expected:
        raise InvariantViolation(
            f"orbit of {orbit.members[0][0]} sums to {total}, expected z^{a}(1+z)^{orbit.m}",
            witness=orbit.members[0][0],
        )
    return total


def binomial_layers(orbit: Orbit) -> list[int]:
    """Member counts at run counts ``a, a+1, ..., a+m``."""
    a = orbit.minimal_runs
    counts = [0] * (orbit.m + 1)
    for _, r in orbit.members:
        k = r - a
        if not 0 <= k <= orbit.m:
            raise InvariantViolation(
                f"orbit member with {r} runs outside {a}..{a + orbit.m}",
                witness=orbit.members[0][0],
            )
        counts[k] += 1
    return counts


def expected_layers(m: int) -> list[int]:
    return [comb(m, i) for i in range(m + 1)]


def factored_form(a: int, m: int) -> str:
    """``z^a(1+z)^m`` rendered compactly, e.g. ``z^3(1+z)^2`` or ``z``."""
    head = "1" if a == 0 else ("z" if a == 1 else f"z^{a}")
    if m == 0:
        return head
    tail = "(1+z)" if m == 1 else f"(1+z)^{m}"
    return tail if head == "1" else head + tail
