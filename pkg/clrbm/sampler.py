# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Synthetic data generation from an RBM.

Two generation paths are available. The ``mcmc`` path runs a single
block Gibbs chain (hidden given visible, then visible given hidden per
sweep) from a uniformly random visible state, discards ``burn_in``
sweeps and keeps every ``thinning``-th visible state. The ``exact``
path draws i.i.d. rows by inverse CDF from the enumerated marginal.
"""

import logging

import numpy as np
from scipy.special import expit

from . import oracle, streams
from .energy import hidden_fields, visible_fields
from .models import Dataset, RbmParams, SamplerConfig, as_spins

log = logging.getLogger(__name__)

# Sweeps whose uniforms are drawn together by the Gibbs chain.
CHUNK_SWEEPS = 4096


def _draw_spins(fields: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Set each unit to +1 with probability ``sigmoid(2 * field)``."""
    return np.where(uniforms < expit(2.0 * fields), 1.0, -1.0)


def sample_hidden_given_visible(params: RbmParams, x,
                                rng: np.random.Generator) -> np.ndarray:
    """Draw hidden states for a visible state or a batch of them."""
    fields = hidden_fields(params, as_spins(x, params.n))
    return _draw_spins(fields, rng.random(fields.shape))


def sample_visible_given_hidden(params: RbmParams, h,
                                rng: np.random.Generator) -> np.ndarray:
    """Draw visible states for a hidden state or a batch of them."""
    fields = visible_fields(params, as_spins(h, params.m))
    return _draw_spins(fields, rng.random(fields.shape))


def _gibbs_chain(params: RbmParams, config: SamplerConfig,
                 rng: np.random.Generator) -> np.ndarray:
    n, m = params.shape
    x = np.where(rng.random(n) < 0.5, 1.0, -1.0)

    total = config.burn_in + config.num_samples * config.thinning
    samples = np.empty((config.num_samples, n))
    kept = 0

    for start in range(0, total, CHUNK_SWEEPS):
        sweeps = min(CHUNK_SWEEPS, total - start)
        hidden_uniforms = rng.random((sweeps, m))
        visible_uniforms = rng.random((sweeps, n))

        for offset in range(sweeps):
            h = _draw_spins(hidden_fields(params, x),
                            hidden_uniforms[offset])
            x = _draw_spins(visible_fields(params, h),
                            visible_uniforms[offset])

            sweep = start + offset + 1
            if sweep > config.burn_in and \
                    (sweep - config.burn_in) % config.thinning == 0:
                samples[kept] = x
                kept += 1

    return samples


def _exact_draws(params: RbmParams, config: SamplerConfig,
                 rng: np.random.Generator) -> np.ndarray:
    states, probabilities = oracle.marginal_distribution(params)
    cdf = np.cumsum(probabilities)
    picks = np.searchsorted(cdf, rng.random(config.num_samples) * cdf[-1],
                            side='right')
    return states[np.minimum(picks, len(states) - 1)]


def generate_dataset(params: RbmParams, config: SamplerConfig) -> Dataset:
    """Generate ``config.num_samples`` rows; deterministic given the seed."""
    rng = streams.factory(config.seed)

    log.debug('Sampling %d rows (%s) from %r', config.num_samples,
              config.method, params)

    if config.method == 'exact':
        samples = _exact_draws(params, config, rng)
    else:
        samples = _gibbs_chain(params, config, rng)

    return Dataset(samples)
