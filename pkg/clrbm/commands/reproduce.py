# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Compare composite likelihood orders with ML over repeated trials."""

import logging

from asdicts.dict import merge

from . import BaseCommand
from .. import experiment, schemas, storage
from ..exceptions import OrderError

log = logging.getLogger(__name__)


class Reproduce(BaseCommand):
    """Represent the ``reproduce`` command.

    Outputs, all in ``out_dir``:

    * ``objective_curves.csv``: mean objective per recorded iteration
    * ``log_likelihood_curves.csv``: mean true log-likelihood per
      recorded iteration
    * ``mad_table.csv``: mean absolute deviation of each order's final
      parameters from the ML estimate
    * ``final_log_likelihood.csv``: mean final true log-likelihoods

    Nothing is written unless every trial succeeds.
    """

    DEFAULT_OPTIONS = merge(BaseCommand.DEFAULT_OPTIONS, {
        'n': 5,
        'm_learner': 10,
        'm_generator': 17,
        'generator_alpha': 0.1,
        'generator_beta': -0.1,
        'generator_weight': 0.2,

        'num_samples': 70,
        'method': 'mcmc',
        'burn_in': 10000,
        'thinning': 100,

        'rate': 0.1,
        'iterations': 50000,
        'init_scale': 0.5,
        'record_every': 100,
        'enumeration_cap': 20,

        'orders': [1, 2, 3],
        'trials': 30,
        'master_seed': 0,
        'shared_dataset': False,

        # Worker processes; all CPUs when unset.
        'jobs': None,
    })

    OPTIONS_SCHEMA = schemas.ReproduceOptionsSchema

    OUTPUTS = (
        'objective_curves.csv',
        'log_likelihood_curves.csv',
        'mad_table.csv',
        'final_log_likelihood.csv',
    )

    def experiment_config(self) -> experiment.ExperimentConfig:
        """Build the :class:`ExperimentConfig` of this run."""
        options = self.options
        orders = tuple(sorted(set(options['orders'])))
        for k in orders:
            if k > options['n']:
                raise OrderError(k, options['n'])

        sampling = schemas.load(schemas.SamplerConfigSchema(), {
            'burn_in': options['burn_in'],
            'thinning': options['thinning'],
            'num_samples': options['num_samples'],
            'method': options['method'],
        })
        training = schemas.load(schemas.TrainConfigSchema(), {
            'learning_rate': options['rate'],
            'iterations': options['iterations'],
            'init_scale': options['init_scale'],
            'record_every': options['record_every'],
            'enumeration_cap': options['enumeration_cap'],
        })

        return experiment.ExperimentConfig(
            n=options['n'],
            m_learner=options['m_learner'],
            m_generator=options['m_generator'],
            generator_alpha=options['generator_alpha'],
            generator_beta=options['generator_beta'],
            generator_weight=options['generator_weight'],
            sampling=sampling,
            training=training,
            orders=orders,
            trials=options['trials'],
            master_seed=options['master_seed'],
            shared_dataset=options['shared_dataset'],
        )

    def run(self) -> list[str]:
        config = self.experiment_config()
        log.info('Running %d trials of %s', config.trials,
                 ', '.join(config.methods))

        results = experiment.run_trials(config, self.options['jobs'])
        summary = experiment.summarize(config, results)
        experiment.check_ordering(config, summary)

        return self.write(summary)

    def write(self, summary: experiment.Summary) -> list[str]:
        """Write the four result tables."""
        paths = [self.resolve_path(name) for name in self.OUTPUTS]
        curves_header = ('iteration',) + summary.methods

        storage.write_rows(paths[0], curves_header, (
            (int(iteration),) + tuple(float(value) for value in row)
            for iteration, row in zip(summary.iterations,
                                      summary.objective_curves)
        ))
        storage.write_rows(paths[1], curves_header, (
            (int(iteration),) + tuple(float(value) for value in row)
            for iteration, row in zip(summary.iterations,
                                      summary.log_likelihood_curves)
        ))
        storage.write_rows(paths[2], ('method', 'alpha', 'beta', 'w'), (
            (method,) + deviations
            for method, deviations in summary.mad.items()
        ))
        storage.write_rows(paths[3], ('method', 'log_likelihood'), (
            (method, summary.final_log_likelihood[method])
            for method in summary.methods
        ))

        for path in paths:
            log.info('Wrote %s', path)
        return paths
