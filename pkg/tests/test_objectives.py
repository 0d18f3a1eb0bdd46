# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Unit tests for composite likelihood evaluation."""

import math

import numpy as np
import pytest

from clrbm import oracle
from clrbm.exceptions import ShapeError
from clrbm.families import enumerate_family
from clrbm.models import BlockFamily, Dataset, RbmParams
from clrbm.objectives import (
    composite_likelihood,
    CompositeLikelihood,
    pseudo_likelihood,
)
from .conftest import full_cube
from .factories import DatasetFactory, RbmParamsFactory


@pytest.mark.parametrize('k', [1, 2, 3, 4])
def test_matches_enumeration_of_conditionals(params, data, k):
    family = enumerate_family(4, k)

    assert composite_likelihood(params, data, family) == pytest.approx(
        oracle.composite_likelihood_by_enumeration(params, data, family),
        abs=1e-12)


def test_irregular_family_matches_enumeration(params, data):
    family = BlockFamily.from_blocks(4, [(0, 1, 2), (2, 3), (1,)])

    assert composite_likelihood(params, data, family) == pytest.approx(
        oracle.composite_likelihood_by_enumeration(params, data, family),
        abs=1e-12)


@pytest.mark.parametrize('k', [1, 2, 3])
def test_uniform_model(k):
    # Every block conditional of the uniform model is 2^-|c|.
    params = RbmParams.zeros(3, 2)
    data = DatasetFactory(size=5, width=3)

    value = composite_likelihood(params, data, enumerate_family(3, k))
    assert value == pytest.approx(-k * math.log(2.0), abs=1e-14)


def test_full_order_equals_log_likelihood():
    params = RbmParamsFactory(n=5, m=2, scale=2.0)
    data = DatasetFactory(size=7, width=5)

    assert composite_likelihood(
        params, data, enumerate_family(5, 5)) == pytest.approx(
        oracle.log_likelihood_ml(params, data), abs=1e-10)


def test_first_order_equals_pseudo_likelihood(params, data):
    assert composite_likelihood(
        params, data, enumerate_family(4, 1)) == pytest.approx(
        pseudo_likelihood(params, data), abs=1e-12)


def test_evaluator_is_reusable(params, data):
    evaluator = CompositeLikelihood(data, enumerate_family(4, 2))
    other = RbmParamsFactory(n=4, m=3, seed=99)

    first = evaluator.value(params)
    evaluator.value(other)
    assert evaluator.value(params) == first


def test_conditionals_are_normalized(params, data):
    evaluator = CompositeLikelihood(data, enumerate_family(4, 2))

    for group in evaluator.block_conditionals(params):
        np.testing.assert_allclose(group.probabilities.sum(axis=-1), 1.0)


def test_full_cube_at_zero_parameters():
    evaluator = CompositeLikelihood(full_cube(3), enumerate_family(3, 3))
    assert evaluator.value(RbmParams.zeros(3, 1)) == pytest.approx(
        -3 * math.log(2.0))


def test_shape_mismatch(params, data):
    with pytest.raises(ShapeError):
        CompositeLikelihood(data, enumerate_family(3, 1))
    with pytest.raises(ShapeError):
        composite_likelihood(RbmParams.zeros(3, 1), data,
                             enumerate_family(4, 1))
    with pytest.raises(ShapeError):
        pseudo_likelihood(RbmParams.zeros(3, 1), data)


@pytest.mark.parametrize('family', [
    enumerate_family(4, 2),
    BlockFamily.from_blocks(4, [(0, 1, 2), (2, 3), (1,), (0, 3)]),
])
def test_invariant_under_block_and_row_order(params, data, family):
    rng = np.random.default_rng(8)
    shuffled_blocks = BlockFamily.from_blocks(4, [
        family.blocks[position]
        for position in rng.permutation(len(family))
    ])
    shuffled_rows = Dataset(data.samples[rng.permutation(data.size)])

    expected = composite_likelihood(params, data, family)
    assert composite_likelihood(
        params, shuffled_rows, shuffled_blocks) == pytest.approx(
        expected, abs=1e-12)
    assert composite_likelihood(
        params, Dataset(data.samples[::-1]),
        BlockFamily.from_blocks(4, family.blocks[::-1])) == pytest.approx(
        expected, abs=1e-12)


def test_group_masks_are_family_masks(params, data):
    family = BlockFamily.from_blocks(4, [(0, 1, 2), (2, 3), (1,)])
    evaluator = CompositeLikelihood(data, family)
    groups = list(evaluator.block_conditionals(params))

    np.testing.assert_array_equal(
        np.vstack([group.masks for group in groups]), family.masks())


def test_large_parameters_stay_finite(data):
    params = RbmParamsFactory(n=4, m=3, scale=1e4, seed=5)

    for k in (1, 2, 4):
        value = composite_likelihood(params, data, enumerate_family(4, k))
        assert np.isfinite(value)
        assert value <= 1e-6
    assert np.isfinite(pseudo_likelihood(params, data))
