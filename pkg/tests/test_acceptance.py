"""Release gate: one test per acceptance criterion, each under its time limit.

Every criterion prints a PASS/FAIL line in the terminal summary.
"""

import time
from contextlib import contextmanager
from math import factorial

import pytest

from oracles import FROZEN_R
from runslab import (
    RunPolynomial,
    apply_c,
    complement,
    distribution_bruteforce,
    distribution_via_orbits,
    generator_set,
    parse_permutation,
    relative_complement,
    verify_property,
    vertical_complement,
)

P = parse_permutation
LINES = []


@pytest.fixture(scope="module", autouse=True)
def _report(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is None:
        return
    reporter.ensure_newline()
    reporter.write_sep("=", "acceptance criteria")
    for line in LINES:
        reporter.write_line(line)


@contextmanager
def criterion(number, title, limit_seconds):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        LINES.append(f"FAIL  {number}. {title}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed <= limit_seconds
    LINES.append(
        f"{'PASS' if ok else 'FAIL'}  {number}. {title} "
        f"({elapsed:.2f}s, limit {limit_seconds:g}s)"
    )
    assert ok, f"criterion {number} took {elapsed:.2f}s > {limit_seconds}s"


def test_1_worked_examples():
    with criterion(1, "worked examples reproduced exactly", 1):
        p = P("315462")
        assert complement(P("425613")) == P("352164")
        assert relative_complement((2, 4, 7, 8, 3)) == (8, 4, 3, 2, 7)
        assert vertical_complement({1, 4, 6}, {1, 2, 3, 4, 6, 8, 9}) == {3, 4, 9}
        assert apply_c(3, p) == P("314526")
        assert apply_c(5, p) == P("315426")
        assert apply_c(3, apply_c(5, p)) == apply_c(5, apply_c(3, p)) == P("314562")


def test_2_run_delta():
    with criterion(2, "|run(c_i p) - run(p)| = 1 for 4 <= n <= 8, 3 <= i <= n-1", 60):
        report = verify_property("run-delta", (4, 8))
        assert report.passed, report.counterexample
        assert report.checked == sum(factorial(n) * (n - 3) for n in range(4, 9))


def test_3_commutativity_and_non_fixing():
    with criterion(3, "c_i c_j = c_j c_i and c_i c_j p != p for i <= j-2, n <= 7", 60):
        for name in ("commutativity", "non-fixing"):
            report = verify_property(name, (1, 7))
            assert report.passed, report.counterexample
            assert report.checked > 0


def test_4_orbit_structure():
    with criterion(4, "orbits have 2^m members, binomial layers, z^a(1+z)^m sums, n <= 8", 120):
        size = verify_property("orbit-size", (1, 8))
        assert size.passed, size.counterexample
        for n in range(1, 9):
            assert size.notes["orbits"][str(n)] == factorial(n) // generator_set(n).order
        poly = verify_property("orbit-polynomial", (1, 8))
        assert poly.passed, poly.counterexample
        assert poly.checked == size.checked


def test_5_oracle_equality():
    with criterion(5, "brute force equals orbit method for 1 <= n <= 10, 4 workers", 120):
        for n in range(1, 11):
            brute = distribution_bruteforce(n, workers=4)
            orbit = distribution_via_orbits(n, workers=4)
            assert brute.polynomial == orbit.polynomial == RunPolynomial(FROZEN_R[n])
            assert brute.polynomial.eval_at(1) == factorial(n)


def test_6_divisibility():
    with criterion(6, "R_n divisible by (1+z)^m with multiplicity >= m, 4 <= n <= 11", 300):
        for n in range(4, 12):
            result = distribution_bruteforce(n, workers=4, force=True)
            m = (n - 2) // 2
            assert result.m == m
            quotient = result.polynomial.div_binomial_power(m)
            assert quotient.mul_binomial_power(m) == result.polynomial
            assert result.multiplicity_at_minus_one >= m
        assert result.polynomial == RunPolynomial(FROZEN_R[11])


def test_7_small_fixtures():
    with criterion(7, "R_2, R_3, R_4 fixtures, n! sums, even coefficients", 1):
        fixtures = {
            2: RunPolynomial({1: 2}),
            3: RunPolynomial({1: 2, 2: 4}),
            4: RunPolynomial({1: 2, 2: 12, 3: 10}),
        }
        for n, expected in fixtures.items():
            result = distribution_bruteforce(n, workers=1)
            assert result.polynomial == expected
        r4 = distribution_bruteforce(4, workers=1)
        assert r4.quotient == RunPolynomial({1: 2, 2: 10})
        for n in range(2, 9):
            poly = distribution_bruteforce(n, workers=1).polynomial
            assert poly.eval_at(1) == factorial(n)
            assert all(c % 2 == 0 for _, c in poly)


def test_8_determinism():
    with criterion(8, "n = 9 results identical for workers 1, 2, 7", 60):
        for method in (distribution_bruteforce, distribution_via_orbits):
            results = [method(9, workers=w) for w in (1, 2, 7)]
            assert results[0] == results[1] == results[2]
            assert results[0].polynomial == RunPolynomial(FROZEN_R[9])


def test_9_independence():
    with criterion(9, "c_j preserves the sign of c_i's run change, n <= 7", 60):
        report = verify_property("independence", (1, 7))
        assert report.passed, report.counterexample
        assert report.checked > 0
