# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Composite likelihoods of an RBM over a dataset.

For a block c and a data row x, the conditional ``P(x_c | x_rest)`` is
evaluated by clamping the off-block units to the row and enumerating
the ``2^|c|`` completions of the block. The completions depend on the
data and the family only, so :class:`CompositeLikelihood` builds them
once and re-evaluates them for every parameter set, which is what the
trainer does on each iteration.
"""

import itertools
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np
from scipy.special import logsumexp

from .energy import check_width, hidden_fields, log_cosh
from .exceptions import ShapeError
from .models import BlockFamily, Dataset, RbmParams


@lru_cache(maxsize=None)
def _assignments(size: int) -> np.ndarray:
    """All ``2^size`` block assignments, one per row."""
    table = np.array(list(itertools.product((-1.0, 1.0), repeat=size)))
    table.setflags(write=False)
    return table


class _ClampedGroup(NamedTuple):
    """Blocks of one size with their clamped completions.

    ``states`` has shape (blocks, rows, completions, n). Groups whose
    blocks cover every unit keep a single row: the completions are then
    the same for every data row.
    """

    masks: np.ndarray
    states: np.ndarray


class BlockConditionals(NamedTuple):
    """Clamped block conditionals of one group for fixed parameters."""

    masks: np.ndarray
    states: np.ndarray
    probabilities: np.ndarray
    tanh_fields: np.ndarray
    log_normalizers: np.ndarray


def _clamp(samples: np.ndarray, blocks, size: int) -> np.ndarray:
    rows, n = samples.shape
    table = _assignments(size)
    states = np.empty((len(blocks), rows, len(table), n))
    states[...] = samples[None, :, None, :]
    for position, block in enumerate(blocks):
        states[position][:, :, list(block.members)] = table
    states.setflags(write=False)
    return states


def data_moments(data: Dataset) -> np.ndarray:
    """Per-unit sample means ``<x_i>_D``.

    >>> data_moments(Dataset([[1, -1], [1, 1]]))
    array([1., 0.])
    """
    return data.samples.mean(axis=0)


class CompositeLikelihood:
    """Composite likelihood of ``data`` under the blocks of ``family``.

    The value follows the per-block decomposition::

        L_F = W sum_c sum_{i in c} alpha_i <x_i>_D + sum_j <ln C_j>_D
              - W sum_c <ln sum_{x_c} exp(-E_c(x))>_D

    with ``W = 1/|F|`` and ``E_c`` the block-restricted energy.
    """

    def __init__(self, data: Dataset, family: BlockFamily):
        if family.n != data.width:
            raise ShapeError(
                f'family covers {family.n} units, data has {data.width}')

        self.data = data
        self.family = family
        self.weight = family.weight
        self.coverage = family.coverage()
        self.mean = data_moments(data)

        by_size = {}
        for position, block in enumerate(family.blocks):
            by_size.setdefault(len(block), []).append(position)

        family_masks = family.masks()
        self._groups = []
        for size, positions in by_size.items():
            rows = data.samples[:1] if size == data.width else data.samples
            blocks = [family.blocks[position] for position in positions]
            masks = family_masks[positions]
            self._groups.append(
                _ClampedGroup(masks, _clamp(rows, blocks, size)))

    def _negative_energies(self, params: RbmParams, group: _ClampedGroup):
        fields = hidden_fields(params, group.states)
        energies = (np.einsum('brsi,bi->brs', group.states,
                              group.masks * params.alpha)
                    + log_cosh(fields).sum(axis=-1))
        return energies, fields

    def data_term(self, params: RbmParams) -> float:
        """The part of the objective that only involves data rows."""
        fields = hidden_fields(params, self.data.samples)
        return (self.weight * (self.coverage * params.alpha) @ self.mean
                + log_cosh(fields).sum(axis=1).mean())

    def value(self, params: RbmParams) -> float:
        """Evaluate the composite likelihood at ``params``."""
        check_width(params, self.data.width)

        partition = 0.0
        for group in self._groups:
            energies, _ = self._negative_energies(params, group)
            partition += logsumexp(energies, axis=-1).mean(axis=1).sum()

        return float(self.data_term(params) - self.weight * partition)

    def block_conditionals(
            self, params: RbmParams) -> Iterator[BlockConditionals]:
        """Yield the clamped conditionals of every block group."""
        check_width(params, self.data.width)

        for group in self._groups:
            energies, fields = self._negative_energies(params, group)
            log_normalizers = logsumexp(energies, axis=-1)
            probabilities = np.exp(energies - log_normalizers[..., None])
            yield BlockConditionals(group.masks, group.states, probabilities,
                                    np.tanh(fields), log_normalizers)


def composite_likelihood(params: RbmParams, data: Dataset,
                         family: BlockFamily) -> float:
    """Composite likelihood ``L_F(params)`` of ``data``."""
    return CompositeLikelihood(data, family).value(params)


def pseudo_likelihood(params: RbmParams, data: Dataset) -> float:
    """Pseudo-likelihood through single-site conditionals.

    Flipping unit i changes the hidden fields by ``-2 x_i w_i``, so the
    conditional is a logistic function of the energy gap.
    """
    check_width(params, data.width)
    x = data.samples

    fields = hidden_fields(params, x)
    flipped = fields[:, None, :] - 2.0 * x[:, :, None] * params.w[None]
    gap = (2.0 * params.alpha * x
           + log_cosh(fields).sum(axis=-1)[:, None]
           - log_cosh(flipped).sum(axis=-1))

    return float(-np.logaddexp(0.0, -gap).mean())
