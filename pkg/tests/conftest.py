import pytest

from polyspace.sampling import chamber_sample

DEFAULT_SEED = 20240611


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for randomized chamber samples")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture(scope="session")
def small_sample(seed):
    """Distinct chambers for n = 4, 5, 6."""
    return chamber_sample([4, 5, 6], per_size=25, seed=seed)


@pytest.fixture(scope="session")
def ring_sample(seed):
    """Distinct chambers for n = 4..7."""
    return chamber_sample([4, 5, 6, 7], per_size=15, seed=seed + 1)


@pytest.fixture(scope="session")
def wide_sample(seed):
    """Distinct chambers for n = 4..9."""
    return chamber_sample(range(4, 10), per_size=15, seed=seed + 2)
