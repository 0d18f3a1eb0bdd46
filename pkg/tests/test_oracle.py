# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Unit tests for the brute-force oracle."""

import itertools
import math

import numpy as np
import pytest
from scipy.special import logsumexp

from clrbm import oracle
from clrbm.energy import marginal_energy
from clrbm.exceptions import EnumerationLimitError, OrderError
from clrbm.families import enumerate_family
from clrbm.models import RbmParams
from .factories import DatasetFactory, RbmParamsFactory


def direct_log_partition(params: RbmParams) -> float:
    states = np.array(list(itertools.product((-1.0, 1.0), repeat=params.n)))
    return float(logsumexp(-marginal_energy(params, states)))


def test_gray_code_visits_every_state_once():
    states = oracle.gray_code_states(5)

    assert len({tuple(state) for state in states}) == 32
    flips = np.abs(np.diff(states, axis=0)).sum(axis=1)
    assert np.all(flips == 2.0)


@pytest.mark.parametrize('n,m', [(1, 1), (3, 2), (6, 4), (12, 5)])
def test_log_partition_matches_direct_sum(n, m):
    params = RbmParamsFactory(n=n, m=m, scale=1.5)
    assert oracle.log_partition(params) == pytest.approx(
        direct_log_partition(params), abs=1e-9)


def test_log_partition_of_independent_units():
    params = RbmParams([0.3, -0.7, 1.1], [0.5, -2.0], np.zeros((3, 2)))
    expected = (sum(math.log(2.0 * math.cosh(a)) for a in params.alpha)
                + sum(math.log(math.cosh(b)) for b in params.beta))

    assert oracle.log_partition(params) == pytest.approx(expected)


def test_uniform_model():
    params = RbmParams.zeros(4, 2)
    data = DatasetFactory(size=3, width=4)

    assert oracle.log_partition(params) == pytest.approx(4 * math.log(2))
    assert oracle.log_likelihood_ml(params, data) == pytest.approx(
        -4 * math.log(2))


def test_enumeration_cap():
    params = RbmParams.zeros(21, 1)
    with pytest.raises(EnumerationLimitError):
        oracle.log_partition(params)
    with pytest.raises(EnumerationLimitError):
        oracle.log_partition(RbmParams.zeros(5, 1), cap=4)


def test_marginal_distribution(params):
    states, probabilities = oracle.marginal_distribution(params)

    assert states.shape == (16, 4)
    assert probabilities.sum() == pytest.approx(1.0)
    log_z = oracle.log_partition(params)
    np.testing.assert_allclose(
        np.log(probabilities), -marginal_energy(params, states) - log_z)


def test_conditional_log_prob_is_normalized(params):
    x = np.array([1.0, -1.0, 1.0, 1.0])
    total = 0.0
    for values in itertools.product((-1.0, 1.0), repeat=2):
        x[[1, 3]] = values
        total += math.exp(oracle.conditional_log_prob(params, x, (1, 3)))

    assert total == pytest.approx(1.0)


def test_conditional_on_every_unit_is_the_marginal(params):
    log_z = oracle.log_partition(params)

    for x in itertools.product((-1.0, 1.0), repeat=params.n):
        assert oracle.conditional_log_prob(
            params, x, range(params.n)) == pytest.approx(
            -marginal_energy(params, np.array(x)) - log_z, abs=1e-12)


def test_remainder_is_not_positive(params, data):
    for k in range(1, 5):
        assert oracle.remainder(params, data, enumerate_family(4, k)) <= 1e-12

    assert oracle.remainder(
        params, data, enumerate_family(4, 4)) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize('k', [1, 2, 3])
def test_remainder_difference_by_pairs(params, data, k):
    difference = oracle.remainder_difference(params, data, k)

    assert difference >= -1e-12
    assert oracle.remainder_difference_by_pairs(
        params, data, k) == pytest.approx(difference, abs=1e-10)


@pytest.mark.parametrize('k', [1, 2, 3])
def test_remainder_difference_of_uniform_model(data, k):
    params = RbmParams.zeros(4, 2)

    assert oracle.remainder(params, data, enumerate_family(4, k)) == \
        pytest.approx((k - 4) * math.log(2.0), abs=1e-12)
    assert oracle.remainder_difference(params, data, k) == pytest.approx(
        math.log(2.0), abs=1e-12)


@pytest.mark.parametrize('k', [0, 4])
def test_remainder_difference_order(params, data, k):
    with pytest.raises(OrderError):
        oracle.remainder_difference(params, data, k)
    with pytest.raises(OrderError):
        oracle.remainder_difference_by_pairs(params, data, k)


@pytest.mark.parametrize('n,m', [(2, 1), (2, 3), (3, 2), (3, 3)])
def test_gibbs_kernel_keeps_the_marginal(n, m):
    params = RbmParamsFactory(n=n, m=m, scale=1.0)
    states, kernel = oracle.gibbs_kernel(params)
    ordered, probabilities = oracle.marginal_distribution(params)

    np.testing.assert_array_equal(states, ordered)
    np.testing.assert_allclose(kernel.sum(axis=1), 1.0)
    drift = 0.5 * np.abs(probabilities @ kernel - probabilities).sum()
    assert drift < 1e-2
    assert drift == pytest.approx(0.0, abs=1e-12)
