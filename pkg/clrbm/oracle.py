# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Brute-force ground truth for small RBMs.

Everything here enumerates visible states explicitly and shares no
evaluation code with :mod:`clrbm.objectives` or :mod:`clrbm.gradients`
beyond the energies of :mod:`clrbm.energy`, so the two can be checked
against each other.

The full sweep visits the ``2^n`` states in Gray-code order: successive
states differ in one unit, so the hidden fields follow by an O(m)
update. The fields are re-anchored from scratch every
:data:`ANCHOR_INTERVAL` states to keep the accumulated rounding error
negligible.
"""

import itertools

import numpy as np
from scipy.special import expit, logsumexp

from .energy import block_members, hidden_fields, log_cosh, \
    marginal_energy, visible_fields
from .exceptions import EnumerationLimitError, OrderError
from .families import enumerate_family
from .models import BlockFamily, Dataset, RbmParams, as_spins

# Largest visible layer the oracle enumerates by default (2^20 states).
ENUMERATION_CAP = 20

# Number of Gray-code steps between two exact evaluations of the fields.
ANCHOR_INTERVAL = 1024


def _check_cap(n: int, cap: int):
    if n > cap:
        raise EnumerationLimitError(n, cap)


def gray_code_states(n: int) -> np.ndarray:
    """All ``2^n`` states of ``n`` units in reflected Gray-code order.

    >>> gray_code_states(2).tolist()
    [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]
    """
    codes = np.arange(2 ** n)
    gray = codes ^ (codes >> 1)
    bits = (gray[:, None] >> np.arange(n)) & 1
    return 2.0 * bits - 1.0


def _gray_code_fields(params: RbmParams, states: np.ndarray) -> np.ndarray:
    count = len(states)
    steps = np.arange(1, count)
    # Unit flipped on step t is the lowest set bit of t.
    flips = np.log2(steps & -steps).astype(np.intp)
    deltas = np.zeros((count, params.m))
    deltas[1:] = 2.0 * states[steps, flips][:, None] * params.w[flips]

    fields = np.empty((count, params.m))
    for start in range(0, count, ANCHOR_INTERVAL):
        stop = min(start + ANCHOR_INTERVAL, count)
        anchor = hidden_fields(params, states[start])
        fields[start] = anchor
        fields[start + 1:stop] = anchor + np.cumsum(
            deltas[start + 1:stop], axis=0)
    return fields


def _negative_energies(params: RbmParams, cap: int):
    _check_cap(params.n, cap)
    states = gray_code_states(params.n)
    fields = _gray_code_fields(params, states)
    return states, states @ params.alpha + log_cosh(fields).sum(axis=1)


def log_partition(params: RbmParams, cap: int = ENUMERATION_CAP) -> float:
    """``ln Z``: log-sum-exp of ``-E(x)`` over all visible states."""
    _, energies = _negative_energies(params, cap)
    return float(logsumexp(energies))


def marginal_distribution(params: RbmParams, cap: int = ENUMERATION_CAP):
    """Return every visible state with its exact probability.

    States are in Gray-code order; probabilities sum to one.
    """
    states, energies = _negative_energies(params, cap)
    return states, np.exp(energies - logsumexp(energies))


def log_likelihood_ml(params: RbmParams, data: Dataset,
                      cap: int = ENUMERATION_CAP) -> float:
    """True average log-likelihood ``<ln P(x)>_D``."""
    average = -marginal_energy(params, data.samples).mean()
    return float(average - log_partition(params, cap))


def _completions(x: np.ndarray, members: np.ndarray) -> np.ndarray:
    completions = np.repeat(x[None, :], 2 ** members.size, axis=0)
    for row, values in enumerate(
            itertools.product((-1.0, 1.0), repeat=members.size)):
        completions[row, members] = values
    return completions


def conditional_log_prob(params: RbmParams, x, block,
                         cap: int = ENUMERATION_CAP) -> float:
    """``ln P(x_c | x_rest)`` by explicit enumeration of the block."""
    _check_cap(params.n, cap)
    x = as_spins(x, params.n)
    members = block_members(block, params.n)

    completions = _completions(x, members)
    return float(-marginal_energy(params, x)
                 - logsumexp(-marginal_energy(params, completions)))


def composite_likelihood_by_enumeration(params: RbmParams, data: Dataset,
                                        family: BlockFamily,
                                        cap: int = ENUMERATION_CAP) -> float:
    """Composite likelihood assembled from :func:`conditional_log_prob`."""
    total = 0.0
    for block in family.blocks:
        total += np.mean([conditional_log_prob(params, row, block, cap)
                          for row in data.samples])
    return float(family.weight * total)


def _block_log_mass(params: RbmParams, data: Dataset, members, log_z):
    """``ln sum_{x_c} P(x)`` for every data row."""
    masses = [logsumexp(-marginal_energy(params, _completions(row, members)))
              for row in data.samples]
    return np.array(masses) - log_z


def remainder(params: RbmParams, data: Dataset, family: BlockFamily,
              cap: int = ENUMERATION_CAP) -> float:
    """Remainder ``R_F = L_ML - L_F``, never positive."""
    log_z = log_partition(params, cap)
    total = 0.0
    for block in family.blocks:
        members = block_members(block, params.n)
        total += _block_log_mass(params, data, members, log_z).mean()
    return float(family.weight * total)


def _check_difference_order(n: int, k: int):
    if not 1 <= k <= n - 1:
        raise OrderError(k, n, upper=n - 1)


def remainder_difference(params: RbmParams, data: Dataset, k: int,
                         cap: int = ENUMERATION_CAP) -> float:
    """``D_k = R_{F_(k+1)} - R_{F_k}``, never negative."""
    n = data.width
    _check_difference_order(n, k)
    return (remainder(params, data, enumerate_family(n, k + 1), cap)
            - remainder(params, data, enumerate_family(n, k), cap))


def remainder_difference_by_pairs(params: RbmParams, data: Dataset, k: int,
                                  cap: int = ENUMERATION_CAP) -> float:
    """``D_k`` from the pairwise form of the monotonicity argument.

    Each block c of F_k is paired with every unit i outside of it::

        D_k = W_k / (k - n) sum_c sum_{i not in c}
              <ln sum_{x_c} P(x) - ln sum_{x_c, x_i} P(x)>_D

    Every logarithm of a ratio is at most zero, hence ``D_k >= 0``.
    """
    n = data.width
    _check_difference_order(n, k)
    log_z = log_partition(params, cap)
    family = enumerate_family(n, k)

    total = 0.0
    for block in family.blocks:
        members = block_members(block, n)
        inner = _block_log_mass(params, data, members, log_z)
        for i in block.complement(n):
            outer = _block_log_mass(
                params, data, np.sort(np.append(members, i)), log_z)
            total += (inner - outer).mean()
    return float(family.weight * total / (k - n))


def gibbs_kernel(params: RbmParams, cap: int = ENUMERATION_CAP):
    """Exact transition matrix of one ``h|x`` then ``x|h`` sweep.

    Returns the Gray-ordered visible states and the row-stochastic
    matrix ``K[a, b] = sum_h P(h | x_a) P(x_b | h)``.
    """
    _check_cap(params.n, cap)
    _check_cap(params.m, cap)
    visible = gray_code_states(params.n)
    hidden = gray_code_states(params.m)

    def conditional(fields, states):
        # Rows: conditioning states; columns: states of the other layer.
        up = expit(2.0 * fields)
        return np.prod(np.where(states[None, :, :] > 0, up[:, None, :],
                                1.0 - up[:, None, :]), axis=-1)

    hidden_given_visible = conditional(hidden_fields(params, visible),
                                       hidden)
    visible_given_hidden = conditional(visible_fields(params, hidden),
                                       visible)
    return visible, hidden_given_visible @ visible_given_hidden
