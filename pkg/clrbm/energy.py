# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Energy quantities of a binary RBM with -1/+1 units.

Every function here accepts a single state or a batch of states (the
unit axis is the last one) and is a pure function of its inputs. The
cosh factors of the marginal energy are always carried in the log
domain, so no quantity overflows for parameter magnitudes far beyond
what training produces.
"""

import math
from typing import Sequence, Union

import numpy as np

from .exceptions import BlockError, ShapeError, UnitIndexError
from .models import Block, RbmParams, as_spins

LN2 = math.log(2.0)


def log_cosh(values):
    """Stable ``ln cosh`` as ``|a| - ln 2 + ln(1 + exp(-2|a|))``.

    >>> float(log_cosh(0.0))
    0.0
    >>> float(log_cosh(1000.0)) == 1000.0 - LN2
    True
    """
    magnitude = np.abs(values)
    return magnitude - LN2 + np.log1p(np.exp(-2.0 * magnitude))


def hidden_fields(params: RbmParams, x) -> np.ndarray:
    """Hidden pre-activations ``a_j = beta_j + sum_i w_ij x_i``."""
    return params.beta + np.asarray(x) @ params.w


def visible_fields(params: RbmParams, h) -> np.ndarray:
    """Visible pre-activations ``b_i = alpha_i + sum_j w_ij h_j``."""
    return params.alpha + np.asarray(h) @ params.w.T


def joint_log_weight(params: RbmParams, x, h):
    """Unnormalized joint log-weight of a visible/hidden configuration."""
    x = as_spins(x, params.n)
    h = as_spins(h, params.m)
    return (x @ params.alpha + h @ params.beta
            + np.einsum('...i,ij,...j->...', x, params.w, h))


def _check_hidden_index(params: RbmParams, j: int):
    if not 0 <= j < params.m:
        raise UnitIndexError(
            f'hidden index {j} out of range for m={params.m}')


def cosh_term(params: RbmParams, x, j: int):
    """``ln C_j(x)``, the log of ``cosh(beta_j + sum_i w_ij x_i)``."""
    _check_hidden_index(params, j)
    x = as_spins(x, params.n)
    return log_cosh(params.beta[j] + x @ params.w[:, j])


def tanh_term(params: RbmParams, x, j: int):
    """``T_j(x) = tanh(beta_j + sum_i w_ij x_i)``."""
    _check_hidden_index(params, j)
    x = as_spins(x, params.n)
    return np.tanh(params.beta[j] + x @ params.w[:, j])


def marginal_energy(params: RbmParams, x):
    """Energy of visible states with the hidden layer summed out.

    ``E(x) = -sum_i alpha_i x_i - sum_j ln cosh(a_j)``; the constant
    ``m ln 2`` of the hidden sum is dropped as it cancels in every
    normalized quantity.
    """
    x = as_spins(x, params.n)
    return -(x @ params.alpha) - log_cosh(hidden_fields(params, x)).sum(-1)


def block_members(block: Union[Block, Sequence[int]], n: int) -> np.ndarray:
    """Validate ``block`` against ``n`` and return its members as indices."""
    if not isinstance(block, Block):
        block = Block(tuple(block))
    if block.members[-1] >= n:
        raise BlockError(f'block {block} refers to a unit beyond n={n}')
    return np.array(block.members, dtype=np.intp)


def restricted_energy(params: RbmParams, x, block):
    """Energy with the visible bias sum restricted to ``block``."""
    x = as_spins(x, params.n)
    members = block_members(block, params.n)
    return (-(x[..., members] @ params.alpha[members])
            - log_cosh(hidden_fields(params, x)).sum(-1))


def check_width(params: RbmParams, width: int, what: str = 'data'):
    """Raise :class:`ShapeError` unless ``width`` equals ``params.n``."""
    if width != params.n:
        raise ShapeError(
            f'{what} has {width} visible units, the model has {params.n}')
