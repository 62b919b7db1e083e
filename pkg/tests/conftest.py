import math

import numpy as np
import pytest

from spherebv import WeightSequence, make_rule


@pytest.fixture(scope="session")
def gevrey2():
    return WeightSequence.gevrey(2)


@pytest.fixture(scope="session")
def factorial_seq():
    return WeightSequence.factorial()


@pytest.fixture(scope="session")
def rule3():
    return make_rule(3, 24)


def gamma_monomial_oracle(n, alpha):
    """Independent float oracle: int x^alpha dsigma by the Gamma formula.

    2 prod Gamma((a_i+1)/2) / Gamma((n+|a|)/2) for all-even alpha, else 0.
    Raw surface-measure value (not normalized).
    """
    if any(a % 2 for a in alpha):
        return 0.0
    num = 2.0
    for a in alpha:
        num *= math.gamma((a + 1) / 2.0)
    return num / math.gamma((n + sum(alpha)) / 2.0)


def direct_sup_oracle(log_m_fn, t, pmax, star=False):
    """Independent brute-force sup_p of log(t^p / M_p) (times p! if star)."""
    if t == 0.0:
        return 0.0
    best = 0.0
    lt = math.log(t)
    for p in range(pmax + 1):
        v = p * lt - log_m_fn(p)
        if star:
            v += math.lgamma(p + 1)
        best = max(best, v)
    return best


def random_unit_vectors(n, count, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(count, n))
    return x / np.linalg.norm(x, axis=1)[:, None]
