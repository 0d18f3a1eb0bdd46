# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Analytic gradients of composite likelihoods.

The gradients returned here are the exact derivatives of
:func:`clrbm.objectives.composite_likelihood`. For a family F with
block weight W::

    d alpha_i = W sum_{c containing i} (<x_i>_D - <x_i>_c)
    d beta_j  = <T_j>_D - W sum_c <T_j>_c
    d w_ij    = <x_i T_j>_D - W sum_c <x_i T_j>_c

For F_k the alpha component equals ``k/n`` times the bracket
``<x_i>_D - |F_k(i)|^-1 sum_{c in F_k(i)} <x_i>_c`` because
``W |F_k(i)| = k/n``; the beta and w components need no rescaling.
"""

from typing import Callable

import numpy as np
from scipy.special import logsumexp

from .energy import block_members, hidden_fields, log_cosh, \
    restricted_energy
from .families import enumerate_family
from .models import Dataset, GradientTriple, RbmParams, as_spins
from .objectives import CompositeLikelihood

Statistic = Callable[[np.ndarray], float]


def block_expectation(params: RbmParams, row, block,
                      statistic: Statistic) -> float:
    """Expectation of ``statistic`` under the clamped block conditional.

    The units outside of ``block`` keep the values of ``row``; the
    statistic is evaluated on each of the ``2^|c|`` completions.
    """
    row = as_spins(row, params.n)
    members = block_members(block, params.n)

    completions = np.repeat(row[None, :], 2 ** members.size, axis=0)
    codes = np.arange(2 ** members.size)[:, None] >> np.arange(members.size)
    completions[:, members] = 2.0 * (codes & 1) - 1.0

    energies = -restricted_energy(params, completions, members)
    weights = np.exp(energies - logsumexp(energies))
    values = np.array([statistic(state) for state in completions],
                      dtype=np.float64)
    return float(weights @ values)


def evaluator_gradient(objective: CompositeLikelihood,
                       params: RbmParams) -> GradientTriple:
    """Gradient of a prepared :class:`CompositeLikelihood`.

    The block energies of each clamped completion are computed once and
    shared by the three statistics ``x_i``, ``T_j`` and ``x_i T_j``.
    """
    samples = objective.data.samples
    weight = objective.weight
    n, m = params.shape

    data_tanh = np.tanh(hidden_fields(params, samples))
    d_alpha = weight * objective.coverage * objective.mean
    d_beta = data_tanh.mean(axis=0)
    d_w = samples.T @ data_tanh / samples.shape[0]

    for group in objective.block_conditionals(params):
        rows = group.states.shape[1]
        probabilities = group.probabilities

        expected_x = np.einsum('brs,brsi->bi', probabilities,
                               group.states) / rows
        d_alpha = d_alpha - weight * (group.masks * expected_x).sum(axis=0)

        d_beta = d_beta - weight * np.einsum(
            'brs,brsj->j', probabilities, group.tanh_fields) / rows

        weighted = (probabilities[..., None] * group.states).reshape(-1, n)
        d_w = d_w - weight * (
            weighted.T @ group.tanh_fields.reshape(-1, m)) / rows

    return GradientTriple(d_alpha, d_beta, d_w)


def cl_gradient(params: RbmParams, data: Dataset,
                family) -> GradientTriple:
    """Exact gradient of the composite likelihood for ``family``."""
    return evaluator_gradient(CompositeLikelihood(data, family), params)


def ml_gradient(params: RbmParams, data: Dataset) -> GradientTriple:
    """Exact log-likelihood gradient, the single-block case ``F_n``.

    Costs ``2^n`` energy evaluations; the caller keeps ``n`` small.
    """
    return cl_gradient(params, data, enumerate_family(data.width,
                                                      data.width))


def pl_gradient(params: RbmParams, data: Dataset) -> GradientTriple:
    """Pseudo-likelihood gradient from single-site conditionals.

    With ``g_i`` the energy gap of flipping unit i and
    ``q_i = 1 - sigmoid(g_i)``, every component is the row average of
    ``sum_i q_i dg_i / n``.
    """
    x = data.samples
    n = x.shape[1]

    fields = hidden_fields(params, x)
    flipped = fields[:, None, :] - 2.0 * x[:, :, None] * params.w[None]
    gap = (2.0 * params.alpha * x
           + log_cosh(fields).sum(axis=-1)[:, None]
           - log_cosh(flipped).sum(axis=-1))
    q = np.exp(-np.logaddexp(0.0, gap))

    tanh = np.tanh(fields)
    tanh_flipped = np.tanh(flipped)
    change = tanh[:, None, :] - tanh_flipped

    d_alpha = (2.0 * q * x).mean(axis=0) / n
    d_beta = np.einsum('ri,rij->j', q, change) / (x.shape[0] * n)
    d_w = (np.einsum('rk,ri,rij->kj', x, q, change)
           + 2.0 * np.einsum('rk,rk,rkj->kj', q, x, tanh_flipped)
           ) / (x.shape[0] * n)

    return GradientTriple(d_alpha, d_beta, d_w)
