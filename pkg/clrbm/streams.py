# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Seeded random streams for clrbm.

Every random draw in the package comes from a Philox generator, a
counter-based bit generator, created by :func:`factory` from an
explicit 64-bit seed. Independent streams (one per trial, and inside a
trial one per purpose) are obtained with :func:`derive_seed`.
"""

import numpy as np

MASK64 = (1 << 64) - 1

# Stream labels used with derive_seed inside a trial.
DATA_STREAM = 0
INIT_STREAM = 1


def mix64(value: int) -> int:
    """Finalizer of the SplitMix64 generator: a bijective 64-bit hash.

    >>> mix64(0)
    0
    >>> mix64(1) != mix64(2)
    True
    """
    value &= MASK64
    value = ((value ^ (value >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    value = ((value ^ (value >> 27)) * 0x94D049BB133111EB) & MASK64
    return value ^ (value >> 31)


def derive_seed(master: int, index: int) -> int:
    """Seed of stream ``index`` derived from ``master``.

    The rule is ``mix64((master XOR index) + golden)``; the additive
    constant keeps ``(0, 0)`` away from the fixed point of the mixer.
    """
    return mix64(((master ^ index) + 0x9E3779B97F4A7C15) & MASK64)


def factory(seed: int) -> np.random.Generator:
    """Create a :class:`numpy.random.Generator` over Philox."""
    return np.random.Generator(np.random.Philox(int(seed) & MASK64))
