# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

import itertools
import os

import numpy as np
import pytest

from clrbm.models import BlockFamily, Dataset
from .factories import DatasetFactory, RbmParamsFactory


def full_cube(n: int) -> Dataset:
    """Every visible state exactly once; all column means are zero."""
    return Dataset(list(itertools.product((-1.0, 1.0), repeat=n)))


def random_instances(count: int, seed: int = 0, scale: float = 2.0,
                     widths=(2, 3, 4, 5, 6)):
    """Yield ``(params, data)`` pairs of varying shapes."""
    rng = np.random.default_rng(seed)
    for number in range(count):
        n = int(rng.choice(widths))
        m = int(rng.integers(1, 5))
        size = int(rng.integers(1, 11))
        yield (RbmParamsFactory(n=n, m=m, scale=scale, seed=seed + number),
               DatasetFactory(size=size, width=n, seed=seed + number))


def irregular_family(n: int, rng: np.random.Generator) -> BlockFamily:
    """A random overlapping family covering every unit."""
    blocks = set()
    uncovered = set(range(n))
    while uncovered or len(blocks) < 2:
        size = int(rng.integers(1, n + 1))
        members = tuple(sorted(rng.choice(n, size=size, replace=False)))
        blocks.add(members)
        uncovered -= set(members)
    return BlockFamily.from_blocks(n, sorted(blocks))


@pytest.fixture
def params():
    """Random parameters with n=4 visible and m=3 hidden units."""
    return RbmParamsFactory(n=4, m=3, seed=7)


@pytest.fixture
def data():
    """Random dataset of 10 rows over 4 units."""
    return DatasetFactory(size=10, width=4, seed=11)


@pytest.fixture(scope='session')
def full_reproduction() -> bool:
    """Whether the long reproduction runs are enabled."""
    return os.environ.get('CLRBM_FULL_REPRODUCTION', '') == '1'
