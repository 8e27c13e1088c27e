"""Exact integer polynomials in ``z`` keyed by run count.

Coefficients are Python ints, so nothing ever overflows or rounds.  Zero
coefficients are never stored, which makes ``==`` mathematical equality.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .exceptions import DivisibilityError, InvalidInputError

__all__ = ["RunPolynomial", "merge_all"]


class RunPolynomial:
    """Immutable sparse polynomial ``sum(c_k * z**k)`` with integer ``c_k``.

    >>> p = RunPolynomial({1: 2, 2: 4})
    >>> str(p)
    '2z + 4z^2'
    >>> str(p.mul_binomial_power(1))
    '2z + 6z^2 + 4z^3'
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for exp, c in items:
            exp = int(exp)
            if exp < 0:
                raise InvalidInputError(f"negative exponent {exp}")
            acc[exp] = acc.get(exp, 0) + int(c)
        self._coeffs = {e: acc[e] for e in sorted(acc) if acc[e] != 0}
        self._hash = None

    @classmethod
    def from_dense(cls, coefficients: Iterable[int]) -> "RunPolynomial":
        """Build from ``[c_0, c_1, ...]``."""
        return cls(enumerate(coefficients))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "RunPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def binomial_power(cls, m: int) -> "RunPolynomial":
        return cls.monomial(0).mul_binomial_power(m)

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        """Copy of the ``{exponent: coefficient}`` map in ascending order."""
        return dict(self._coeffs)

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        """Highest exponent; -1 for the zero polynomial."""
        return max(self._coeffs, default=-1)

    @property
    def low_degree(self) -> int:
        """Lowest exponent with a nonzero coefficient; -1 for zero."""
        return min(self._coeffs, default=-1)

    def to_dense(self) -> list[int]:
        return [self._coeffs.get(k, 0) for k in range(self.degree + 1)]

    def __iter__(self):
        return iter(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def add_term(self, exponent: int, count: int) -> "RunPolynomial":
        if exponent < 0:
            raise InvalidInputError(f"negative exponent {exponent}")
        out = dict(self._coeffs)
        out[exponent] = out.get(exponent, 0) + count
        return RunPolynomial(out)

    def merge(self, other: "RunPolynomial") -> "RunPolynomial":
        """Coefficient-wise sum; the reduction step for parallel partial results."""
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return RunPolynomial(out)

    __add__ = merge

    def __mul__(self, other: "RunPolynomial") -> "RunPolynomial":
        if not isinstance(other, RunPolynomial):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return RunPolynomial(out)

    def mul_binomial_power(self, m: int) -> "RunPolynomial":
        """Return ``self * (1+z)**m``."""
        if m < 0:
            raise InvalidInputError(f"negative binomial power {m}")
        dense = self.to_dense()
        for _ in range(m):
            # (1+z) * sum(a_k z^k): new b_k = a_k + a_{k-1}
            dense = [a + b for a, b in zip(dense + [0], [0] + dense)]
        return RunPolynomial.from_dense(dense)

    def div_binomial_power(self, m: int) -> "RunPolynomial":
        """Exactly divide by ``(1+z)**m`` via ``m`` rounds of synthetic division.

        Raises :class:`DivisibilityError` naming the first round (1-based)
        whose remainder is nonzero.
        """
        if m < 0:
            raise InvalidInputError(f"negative binomial power {m}")
        dense = self.to_dense()
        for stage in range(1, m + 1):
            dense, remainder = _divide_by_one_plus_z(dense)
            if remainder != 0:
                raise DivisibilityError(stage, remainder)
        return RunPolynomial.from_dense(dense)

    def eval_at(self, x: int) -> int:
        """Exact Horner evaluation."""
        acc = 0
        for c in reversed(self.to_dense()):
            acc = acc * x + c
        return acc

    def multiplicity_at_minus_one(self) -> int:
        """Largest ``t`` with ``(1+z)**t`` dividing this polynomial."""
        if self.is_zero():
            raise InvalidInputError("multiplicity is undefined for the zero polynomial")
        dense = self.to_dense()
        t = 0
        while True:
            quotient, remainder = _divide_by_one_plus_z(dense)
            if remainder != 0:
                return t
            dense = quotient
            t += 1

    # -- formatting / serialization ----------------------------------------

    def to_json(self) -> dict[str, str]:
        """``{"1": "2", "2": "12"}``: decimal strings keep big values lossless."""
        return {str(e): str(c) for e, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "RunPolynomial":
        return cls({int(e): int(c) for e, c in data.items()})

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self._coeffs.items():
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                power = "z" if e == 1 else f"z^{e}"
                term = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"RunPolynomial({self._coeffs!r})"


def _divide_by_one_plus_z(dense: list[int]) -> tuple[list[int], int]:
    """Synthetic division of ``sum(dense[k] z^k)`` by ``z + 1``."""
    if not dense:
        return [], 0
    quotient = [0] * (len(dense) - 1)
    carry = 0
    for k in range(len(dense) - 1, 0, -1):
        carry = dense[k] - carry
        quotient[k - 1] = carry
    remainder = dense[0] - carry
    return quotient, remainder


def merge_all(parts: Iterable[RunPolynomial]) -> RunPolynomial:
    total = RunPolynomial()
    for part in parts:
        total = total.merge(part)
    return total
