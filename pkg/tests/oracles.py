"""Small-case oracles, independent of runslab internals.

Runs are counted by walking monotone segments, and complements are rebuilt
from sorted lists.
"""

from collections import Counter
from itertools import permutations

from runslab import Permutation

# R_n coefficients {runs: count}, produced by runs_by_segments over all n!
# permutations (n <= 9 in pure Python, n = 10, 11 in a one-off run).
FROZEN_R = {
    1: {1: 1},
    2: {1: 2},
    3: {1: 2, 2: 4},
    4: {1: 2, 2: 12, 3: 10},
    5: {1: 2, 2: 28, 3: 58, 4: 32},
    6: {1: 2, 2: 60, 3: 236, 4: 300, 5: 122},
    7: {1: 2, 2: 124, 3: 836, 4: 1852, 5: 1682, 6: 544},
    8: {1: 2, 2: 252, 3: 2766, 4: 9576, 5: 14622, 6: 10332, 7: 2770},
    9: {1: 2, 2: 508, 3: 8814, 4: 45096, 5: 103326, 6: 119964, 7: 69298, 8: 15872},
    10: {
        1: 2, 2: 1020, 3: 27472, 4: 201060, 5: 650892,
        6: 1106820, 7: 1034992, 8: 505500, 9: 101042,
    },
    11: {
        1: 2, 2: 2044, 3: 84472, 4: 866324, 5: 3821412,
        6: 8948004, 7: 12062152, 8: 9434444, 9: 3990362, 10: 707584,
    },
}


def runs_by_segments(p):
    """Count maximal monotone segments directly."""
    if len(p) < 2:
        return 1
    runs, direction = 1, None
    for a, b in zip(p, p[1:]):
        rising = b > a
        if direction is not None and rising != direction:
            runs += 1
        direction = rising
    return runs


def mirror_suffix(p, i):
    """Oracle for c_i: rebuild the suffix from its sorted values."""
    head, tail = list(p[: i - 1]), list(p[i - 1 :])
    asc = sorted(tail)
    desc = asc[::-1]
    return tuple(head + [desc[asc.index(v)] for v in tail])


def oracle_distribution(n):
    return dict(sorted(Counter(runs_by_segments(p) for p in permutations(range(1, n + 1))).items()))


def all_perms(n):
    return [Permutation(t) for t in permutations(range(1, n + 1))]


