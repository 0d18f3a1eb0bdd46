# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Repeated-trial comparison of composite likelihood orders with ML.

Each trial draws a dataset from a fixed generator RBM, then trains one
learner per method (the requested orders and exact ML) from the same
initial parameters. Results are averaged over trials in trial order, so
the tables do not depend on how trials were scheduled over workers.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import repeat
from typing import Optional, Sequence

import numpy as np

from . import streams
from .models import Dataset, RbmParams, SamplerConfig, TrainConfig, \
    TrainTrace
from .sampler import generate_dataset
from .trainer import mean_absolute_deviation, train

log = logging.getLogger(__name__)

ML = 'ml'

# Slack allowed by the ordering check on the final log-likelihoods.
ORDERING_TOLERANCE = 0.01


@dataclass(frozen=True)
class ExperimentConfig:  # pylint: disable=too-many-instance-attributes
    """Define a full reproduction run."""

    n: int = 5
    m_learner: int = 10
    m_generator: int = 17
    generator_alpha: float = 0.1
    generator_beta: float = -0.1
    generator_weight: float = 0.2
    sampling: SamplerConfig = field(default_factory=SamplerConfig)
    training: TrainConfig = field(default_factory=TrainConfig)
    orders: tuple[int, ...] = (1, 2, 3)
    trials: int = 30
    master_seed: int = 0
    shared_dataset: bool = False

    @property
    def methods(self) -> tuple[str, ...]:
        """Method labels in table order: ML first, then the orders."""
        return (ML,) + tuple(f'cl{k}' for k in self.orders)

    def generator(self) -> RbmParams:
        return RbmParams.constant(self.n, self.m_generator,
                                  self.generator_alpha, self.generator_beta,
                                  self.generator_weight)


@dataclass(frozen=True, eq=False)
class TrialResult:
    """Traces of every method in one trial, keyed by method label."""

    index: int
    dataset: Dataset
    traces: dict[str, TrainTrace]


@dataclass(frozen=True)
class Summary:
    """Trial-averaged tables."""

    methods: tuple[str, ...]
    iterations: np.ndarray
    objective_curves: np.ndarray
    log_likelihood_curves: np.ndarray
    mad: dict[str, tuple[float, float, float]]
    final_log_likelihood: dict[str, float]


def trial_seeds(config: ExperimentConfig, index: int) -> tuple[int, int]:
    """Return the (data, init) seeds of trial ``index``."""
    trial_seed = streams.derive_seed(config.master_seed, index)
    data_owner = streams.derive_seed(config.master_seed, 0) \
        if config.shared_dataset else trial_seed
    return (streams.derive_seed(data_owner, streams.DATA_STREAM),
            streams.derive_seed(trial_seed, streams.INIT_STREAM))


def _method_config(config: ExperimentConfig, method: str,
                   init_seed: int) -> TrainConfig:
    k = None if method == ML else int(method[2:])
    return replace(config.training, k=k, init_seed=init_seed)


def run_trial(index: int, config: ExperimentConfig) -> TrialResult:
    """Generate the data of one trial and train every method on it."""
    data_seed, init_seed = trial_seeds(config, index)

    dataset = generate_dataset(config.generator(),
                               replace(config.sampling, seed=data_seed))

    traces = {}
    for method in config.methods:
        traces[method] = train(dataset,
                               _method_config(config, method, init_seed),
                               (config.n, config.m_learner))

    log.info('Trial %d done: %s', index + 1, ', '.join(
        f'{method}={trace.final.objective:.4f}'
        for method, trace in traces.items()))
    return TrialResult(index, dataset, traces)


def run_trials(config: ExperimentConfig,
               jobs: Optional[int] = None) -> list[TrialResult]:
    """Run every trial, in worker processes when ``jobs`` exceeds one."""
    jobs = jobs or os.cpu_count() or 1
    indices = range(config.trials)

    if jobs == 1 or config.trials == 1:
        return [run_trial(index, config) for index in indices]

    with ProcessPoolExecutor(max_workers=min(jobs, config.trials)) as pool:
        return list(pool.map(run_trial, indices, repeat(config)))


def summarize(config: ExperimentConfig,
              results: Sequence[TrialResult]) -> Summary:
    """Average traces and deviations over ``results`` in trial order."""
    methods = config.methods
    iterations = results[0].traces[ML].iterations

    objectives = np.array([
        [result.traces[method].objectives for method in methods]
        for result in results
    ])
    likelihoods = np.array([
        [result.traces[method].true_log_likelihoods for method in methods]
        for result in results
    ])

    mad = {}
    for method in methods[1:]:
        deviations = np.array([
            mean_absolute_deviation(result.traces[method].params,
                                    result.traces[ML].params)
            for result in results
        ])
        mad[method] = tuple(float(value)
                            for value in deviations.mean(axis=0))

    final = likelihoods[:, :, -1].mean(axis=0)
    return Summary(
        methods=methods,
        iterations=iterations,
        objective_curves=objectives.mean(axis=0).T,
        log_likelihood_curves=likelihoods.mean(axis=0).T,
        mad=mad,
        final_log_likelihood={
            method: float(value) for method, value in zip(methods, final)
        },
    )


def check_ordering(config: ExperimentConfig, summary: Summary) -> bool:
    """Check that final log-likelihoods fall from ML down the orders.

    Violations beyond :data:`ORDERING_TOLERANCE` are logged; the result
    tells whether the chain held.
    """
    chain = [ML] + [f'cl{k}' for k in sorted(config.orders, reverse=True)]
    final = summary.final_log_likelihood
    holds = True

    for better, worse in zip(chain, chain[1:]):
        if final[better] < final[worse] - ORDERING_TOLERANCE:
            log.warning(
                'Mean final log-likelihood of %s (%.4f) is below %s (%.4f)',
                better, final[better], worse, final[worse])
            holds = False

    return holds
