import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from knit import cyclic_group, matched_pair  # noqa: E402


def sign_alpha(m):
    # b^j > a^x = a^(x (-1)^j)
    return [[x if j % 2 == 0 else (-x) % 3 for x in range(3)] for j in range(m)]


def shifted_beta(m, on_a, on_a2):
    """Odd powers of b move by `on_a` under a and `on_a2` under a^2; even powers are fixed."""
    return [[j, (j + on_a) % m, (j + on_a2) % m] if j % 2 else [j, j, j] for j in range(m)]


@pytest.fixture(scope="session")
def C3():
    return cyclic_group(3, "a")


@pytest.fixture(scope="session")
def C6():
    return cyclic_group(6, "b")


@pytest.fixture(scope="session")
def c3c6(C3, C6):
    """The four matched pairs on (C3, C6), transcribed by hand.

    trivial: both actions trivial; sign: b inverts a, right action trivial;
    shift2 / shift4: b inverts a, and a moves odd powers of b by 2 / by 4.
    """
    return {
        "trivial": matched_pair(C3, C6),
        "sign": matched_pair(C3, C6, sign_alpha(6), None),
        "shift2": matched_pair(C3, C6, sign_alpha(6), shifted_beta(6, 2, 4)),
        "shift4": matched_pair(C3, C6, sign_alpha(6), shifted_beta(6, 4, 2)),
    }
