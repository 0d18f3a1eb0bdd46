# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Unit tests for the energy functions."""

import itertools
import math

import numpy as np
import pytest
from scipy.special import logsumexp

from clrbm.energy import (
    block_members,
    cosh_term,
    hidden_fields,
    joint_log_weight,
    log_cosh,
    marginal_energy,
    restricted_energy,
    tanh_term,
    visible_fields,
)
from clrbm.exceptions import BlockError, ShapeError, StateError, \
    UnitIndexError
from clrbm.models import RbmParams
from .factories import RbmParamsFactory


def test_log_cosh_matches_numpy_where_representable():
    values = np.linspace(-20.0, 20.0, 81)
    np.testing.assert_allclose(log_cosh(values), np.log(np.cosh(values)),
                               rtol=1e-13, atol=1e-15)


def test_log_cosh_does_not_overflow():
    values = np.array([-1e4, 800.0, 1e300])
    result = log_cosh(values)

    assert np.all(np.isfinite(result))
    np.testing.assert_allclose(result, np.abs(values) - math.log(2.0))


def test_marginal_energy_sums_out_hidden_units(params):
    hidden = np.array(list(itertools.product((-1.0, 1.0), repeat=params.m)))

    for x in itertools.product((-1.0, 1.0), repeat=params.n):
        x = np.array(x)
        joint = logsumexp(joint_log_weight(params, x[None, :], hidden))
        expected = joint - params.m * math.log(2.0)
        assert -marginal_energy(params, x) == pytest.approx(expected,
                                                           abs=1e-12)


def test_marginal_energy_of_zero_params():
    params = RbmParams.zeros(3, 2)
    assert marginal_energy(params, [1, -1, 1]) == 0.0


def test_marginal_energy_is_batched(params):
    batch = np.array([[1, -1, 1, 1], [-1, -1, 1, -1]], dtype=float)
    energies = marginal_energy(params, batch)

    assert energies.shape == (2,)
    assert energies[1] == pytest.approx(marginal_energy(params, batch[1]))


def test_cosh_and_tanh_terms(params):
    x = np.array([1.0, -1.0, -1.0, 1.0])
    a = hidden_fields(params, x)

    for j in range(params.m):
        assert cosh_term(params, x, j) == pytest.approx(math.log(
            math.cosh(a[j])))
        assert tanh_term(params, x, j) == pytest.approx(math.tanh(a[j]))


@pytest.mark.parametrize('j', [-1, 3])
def test_hidden_index_out_of_range(params, j):
    with pytest.raises(UnitIndexError):
        cosh_term(params, [1, 1, 1, 1], j)
    with pytest.raises(IndexError):
        tanh_term(params, [1, 1, 1, 1], j)


def test_state_validation(params):
    with pytest.raises(ShapeError):
        marginal_energy(params, [1, 1, 1])
    with pytest.raises(StateError):
        marginal_energy(params, [1, 1, 1, 0.5])


def test_visible_fields(params):
    h = np.array([1.0, -1.0, 1.0])
    np.testing.assert_allclose(visible_fields(params, h),
                               params.alpha + params.w @ h)


def test_restricted_energy_drops_off_block_biases(params):
    x = np.array([1.0, 1.0, -1.0, 1.0])
    full = marginal_energy(params, x)
    restricted = restricted_energy(params, x, (0, 2))

    off_block = params.alpha[1] * x[1] + params.alpha[3] * x[3]
    assert restricted - full == pytest.approx(off_block)


def test_block_members_validation():
    assert block_members([0, 2], 3).tolist() == [0, 2]
    with pytest.raises(BlockError):
        block_members([0, 3], 3)


def test_single_unit_examples():
    params = RbmParams([0.1], [-0.1], [[0.2]])

    assert joint_log_weight(params, [1], [1]) == pytest.approx(0.2)
    assert marginal_energy(params, [1]) == pytest.approx(
        -0.1 - math.log(math.cosh(0.1)))
    assert tanh_term(params, [1], 0) == pytest.approx(math.tanh(0.1))


def shifted(params: RbmParams, beta=0.0, w=0.0) -> RbmParams:
    return RbmParams(params.alpha, params.beta + beta, params.w + w)


def test_cosh_term_derivatives_are_tanh_terms():
    step = 1e-5
    params = RbmParamsFactory(n=4, m=3, scale=1.0, seed=21)
    x = np.array([1.0, -1.0, 1.0, 1.0])
    analytic, numeric = [], []

    for j in range(params.m):
        up = np.zeros(params.m)
        up[j] = step
        numeric.append((cosh_term(shifted(params, beta=up), x, j)
                        - cosh_term(shifted(params, beta=-up), x, j))
                       / (2.0 * step))
        analytic.append(tanh_term(params, x, j))

        for i in range(params.n):
            up = np.zeros((params.n, params.m))
            up[i, j] = step
            numeric.append((cosh_term(shifted(params, w=up), x, j)
                            - cosh_term(shifted(params, w=-up), x, j))
                           / (2.0 * step))
            analytic.append(x[i] * tanh_term(params, x, j))

    analytic, numeric = np.array(analytic), np.array(numeric)
    assert np.linalg.norm(analytic - numeric) < \
        1e-6 * np.linalg.norm(analytic)


def test_flipping_every_unit_without_biases():
    rng = np.random.default_rng(3)
    w = rng.uniform(-1.0, 1.0, (4, 3))
    params = RbmParams(np.zeros(4), np.zeros(3), w)

    for x in itertools.product((-1.0, 1.0), repeat=4):
        x = np.array(x)
        assert marginal_energy(params, x) == pytest.approx(
            marginal_energy(params, -x), abs=1e-12)
        for j in range(3):
            assert tanh_term(params, x, j) == pytest.approx(
                -tanh_term(params, -x, j), abs=1e-15)


def test_marginal_energy_with_large_parameters():
    params = RbmParamsFactory(n=4, m=3, scale=1e4, seed=5)
    states = np.array(list(itertools.product((-1.0, 1.0), repeat=4)))

    energies = marginal_energy(params, states)
    assert np.all(np.isfinite(energies))

    fields = params.beta + states @ params.w
    log_cosh_values = np.logaddexp(fields, -fields) - math.log(2.0)
    expected = -(states @ params.alpha) - log_cosh_values.sum(axis=1)
    np.testing.assert_allclose(energies, expected, rtol=1e-12, atol=1e-8)
