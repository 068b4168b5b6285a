import numpy as np

from stabcut import from_array

# Filled by test_acceptance, printed at the end of the run by conftest.
ACCEPTANCE_LINES = []


def random_matrix(rng, n, low, high, real=False):
    if real:
        a = rng.uniform(low, high, (n, n))
    else:
        a = rng.integers(low, high + 1, (n, n))
    a = np.triu(a, 1)
    return from_array(a + a.T)


def random_suite(seed, count, n_range, low, high):
    rng = np.random.default_rng(seed)
    return [
        random_matrix(rng, int(rng.integers(n_range[0], n_range[1] + 1)), low, high)
        for _ in range(count)
    ]
