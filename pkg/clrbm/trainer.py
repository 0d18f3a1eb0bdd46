# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Full-batch gradient ascent on composite likelihoods."""

import logging
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import oracle, streams
from .exceptions import ConfigError, DivergenceError, OrderError, \
    ShapeError
from .families import enumerate_family
from .gradients import evaluator_gradient
from .models import (
    BlockFamily,
    Dataset,
    GradientTriple,
    RbmParams,
    TraceRecord,
    TrainConfig,
    TrainTrace,
)
from .objectives import CompositeLikelihood

log = logging.getLogger(__name__)


class _Objective(NamedTuple):
    value: Callable[[RbmParams], float]
    gradient: Callable[[RbmParams], GradientTriple]


def init_params(n: int, m: int, seed: int, scale: float) -> RbmParams:
    """Draw every parameter i.i.d. uniform on ``[-scale, scale]``."""
    if not scale > 0:
        raise ConfigError(f'init scale must be positive, got {scale}')

    rng = streams.factory(seed)
    return RbmParams(rng.uniform(-scale, scale, n),
                     rng.uniform(-scale, scale, m),
                     rng.uniform(-scale, scale, (n, m)))


def _objective(data: Dataset, family: Optional[BlockFamily],
               cap: int) -> _Objective:
    if family is None:
        evaluator = CompositeLikelihood(
            data, enumerate_family(data.width, data.width))
        return _Objective(
            lambda params: oracle.log_likelihood_ml(params, data, cap),
            lambda params: evaluator_gradient(evaluator, params))

    evaluator = CompositeLikelihood(data, family)
    return _Objective(evaluator.value,
                      lambda params: evaluator_gradient(evaluator, params))


def train(data: Dataset, config: TrainConfig,
          shape: tuple[int, int]) -> TrainTrace:
    """Maximize ``L_{F_k}`` (or the log-likelihood when ``k`` is None)."""
    n, _ = shape
    if data.width != n:
        raise ShapeError(f'data has {data.width} visible units, '
                         f'the model has {n}')

    family = None
    if not config.is_ml:
        if config.k > n:
            raise OrderError(config.k, n)
        family = enumerate_family(n, config.k)

    return train_family(data, config, shape, family)


def train_family(data: Dataset, config: TrainConfig,
                 shape: tuple[int, int],
                 family: Optional[BlockFamily]) -> TrainTrace:
    """Gradient ascent on the composite likelihood of ``family``.

    ``family=None`` maximizes the exact log-likelihood. The true
    log-likelihood is recorded next to the objective whenever ``n`` is
    within ``config.enumeration_cap``.
    """
    n, m = shape
    objective = _objective(data, family, config.enumeration_cap)
    track_likelihood = n <= config.enumeration_cap

    params = init_params(n, m, config.init_seed, config.init_scale)
    records = []

    log.debug('Training %s on %r for %d iterations', config.method, data,
              config.iterations)

    for iteration in range(1, config.iterations + 1):
        gradient = objective.gradient(params)
        if not gradient.is_finite():
            raise DivergenceError(iteration, 'non-finite gradient')

        params = params.ascend(gradient, config.learning_rate)
        if params.max_abs() > config.max_magnitude:
            raise DivergenceError(
                iteration,
                f'parameter magnitude exceeded {config.max_magnitude:g}')

        if iteration % config.record_every and \
                iteration != config.iterations:
            continue

        # Bounded finite parameters keep the objective finite, so it is only
        # evaluated on recorded iterations.
        value = objective.value(params)
        if not np.isfinite(value):
            raise DivergenceError(iteration, 'non-finite objective')

        likelihood = None
        if family is None:
            likelihood = value
        elif track_likelihood:
            likelihood = oracle.log_likelihood_ml(params, data,
                                                  config.enumeration_cap)

        records.append(TraceRecord(iteration, value, likelihood,
                                   gradient.norm()))
        log.debug('%s iteration %d: objective=%.6f', config.method,
                  iteration, value)

    log.debug('Finished %s: final objective %.6f', config.method,
              records[-1].objective)
    return TrainTrace(tuple(records), params, config)


def mean_absolute_deviation(a: RbmParams,
                            b: RbmParams) -> tuple[float, float, float]:
    """Mean absolute deviations of (alpha, beta, w) between two models."""
    if a.shape != b.shape:
        raise ShapeError(f'cannot compare {a!r} with {b!r}')

    return (float(np.mean(np.abs(a.alpha - b.alpha))),
            float(np.mean(np.abs(a.beta - b.beta))),
            float(np.mean(np.abs(a.w - b.w))))
