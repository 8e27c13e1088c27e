"""Alternating runs of permutations and the (Z/2)^m action that factors R_n(z)."""

from .enumeration import (
    DistributionResult,
    distribution,
    distribution_bruteforce,
    distribution_via_orbits,
    minimal_representatives,
    partition_work,
)
from .exceptions import (
    CapExceededError,
    DivisibilityError,
    InvalidInputError,
    InvariantViolation,
    PermutationParseError,
    RunslabError,
)
from .group import (
    GeneratorSet,
    GroupElement,
    Orbit,
    apply_element,
    generator_set,
    is_minimal,
    minimal_representative,
    orbit_of,
    orbit_polynomial,
)
from .perm import (
    Permutation,
    apply_c,
    complement,
    parse_permutation,
    relative_complement,
    run_count,
    vertical_complement,
)
from .runpoly import RunPolynomial
from .verify import VerificationReport, verify_property

__version__ = "0.1.0"
