import pytest

from oracles import all_perms


@pytest.fixture(scope="session")
def perms_upto_7():
    return {n: all_perms(n) for n in range(1, 8)}
