# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Sample a synthetic dataset from a constant-parameter RBM."""

import logging

from asdicts.dict import merge

from . import BaseCommand
from .. import schemas, storage
from ..models import RbmParams
from ..sampler import generate_dataset

log = logging.getLogger(__name__)


class Generate(BaseCommand):
    """Represent the ``generate`` command."""

    DEFAULT_OPTIONS = merge(BaseCommand.DEFAULT_OPTIONS, {
        # Generator RBM: n visible and m_generator hidden units with one
        # shared value per parameter group.
        'n': 5,
        'm_generator': 17,
        'generator_alpha': 0.1,
        'generator_beta': -0.1,
        'generator_weight': 0.2,

        # Sampling schedule.
        'num_samples': 70,
        'seed': 0,
        'method': 'mcmc',
        'burn_in': 10000,
        'thinning': 100,

        # Dataset file name, relative to out_dir unless absolute.
        'output': 'dataset.csv',
    })

    OPTIONS_SCHEMA = schemas.GenerateOptionsSchema

    SAMPLER_OPTIONS = {'seed', 'burn_in', 'thinning', 'num_samples', 'method'}

    def generator(self) -> RbmParams:
        """Build the generator RBM from the options."""
        options = self.options
        return RbmParams.constant(options['n'], options['m_generator'],
                                  options['generator_alpha'],
                                  options['generator_beta'],
                                  options['generator_weight'])

    def run(self) -> list[str]:
        config = schemas.load(schemas.SamplerConfigSchema(),
                              self.select(self.SAMPLER_OPTIONS))
        dataset = generate_dataset(self.generator(), config)

        path = self.resolve_path(self.options['output'])
        storage.write_dataset(path, dataset)
        log.info('Wrote %d samples to %s', dataset.size, path)
        return [path]
