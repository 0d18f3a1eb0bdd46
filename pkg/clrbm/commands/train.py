# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Fit an RBM to a dataset file by composite likelihood or exact ML."""

import logging

from asdicts.dict import merge

from . import BaseCommand
from .. import schemas, storage
from ..exceptions import OrderError, ShapeError
from ..trainer import train

log = logging.getLogger(__name__)


class Train(BaseCommand):
    """Represent the ``train`` command."""

    DEFAULT_OPTIONS = merge(BaseCommand.DEFAULT_OPTIONS, {
        # Dataset file to fit.
        'data': 'dataset.csv',

        # Expected visible width; taken from the data when unset.
        'n': None,
        'm_learner': 10,

        # Block order of the composite likelihood; ml selects exact ML.
        'k': 2,
        'ml': False,

        'rate': 0.1,
        'iterations': 50000,
        'seed': 0,
        'init_scale': 0.5,
        'record_every': 100,
        'enumeration_cap': 20,
    })

    OPTIONS_SCHEMA = schemas.TrainOptionsSchema

    def train_config(self):
        """Build the :class:`TrainConfig` of this run."""
        options = self.options
        return schemas.load(schemas.TrainConfigSchema(), {
            'k': None if options['ml'] else options['k'],
            'learning_rate': options['rate'],
            'iterations': options['iterations'],
            'init_seed': options['seed'],
            'init_scale': options['init_scale'],
            'record_every': options['record_every'],
            'enumeration_cap': options['enumeration_cap'],
        })

    def run(self) -> list[str]:
        options = self.options
        dataset = storage.read_dataset(options['data'])

        n = options['n'] or dataset.width
        if n != dataset.width:
            raise ShapeError(f'--n is {n} but the data has '
                             f'{dataset.width} visible units')

        config = self.train_config()
        if not config.is_ml and config.k > n:
            raise OrderError(config.k, n)

        trace = train(dataset, config, (n, options['m_learner']))
        log.info('%s finished: objective %.6f after %d iterations',
                 config.method, trace.final.objective, config.iterations)

        trace_path = self.resolve_path(f'trace_{config.method}.csv')
        model_path = self.resolve_path(f'model_{config.method}.json')
        storage.write_trace(trace_path, trace)
        storage.dump_model(model_path, trace.params)
        return [trace_path, model_path]
