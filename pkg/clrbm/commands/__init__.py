# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""The top-level module for clrbm commands.

This module provides the base command class used by the command classes
behind each subcommand of the ``clrbm`` console script.
"""

import logging
import os
from abc import ABCMeta, abstractmethod
from typing import Optional

from asdicts.dict import intersect_keys, merge
from marshmallow import Schema

from .. import schemas

log = logging.getLogger(__name__)


class BaseCommand(metaclass=ABCMeta):
    """Base command class.

    Effective options are the class defaults, overridden by the options
    of a run-config file, overridden by explicitly given options. The
    result is validated by :attr:`OPTIONS_SCHEMA`.
    """

    DEFAULT_OPTIONS: dict = {
        # Directory receiving every file the command writes.
        'out_dir': '.',
    }

    OPTIONS_SCHEMA: type[Schema] = Schema

    def __init__(self, config: Optional[dict] = None, **options):
        """A :class:`BaseCommand` object holding validated options."""
        self.options = self._merge_options(config or {}, options)

    def _merge_options(self, *objects) -> dict:
        """Merge option objects over the defaults and validate the result.

        >>> from clrbm.commands.generate import Generate
        >>> Generate(num_samples=3).options['num_samples']
        3
        >>> Generate({'num_samples': 3}, num_samples=5).options['num_samples']
        5
        """
        merged = merge(self.DEFAULT_OPTIONS, *objects)
        return schemas.load(self.OPTIONS_SCHEMA(), merged)

    def select(self, keys) -> dict:
        """Select a subset of the options by name."""
        return intersect_keys(self.options, set(keys))

    def resolve_path(self, name: str) -> str:
        """Resolve ``name`` against the output directory."""
        return os.path.join(self.options['out_dir'], name)

    @abstractmethod
    def run(self) -> list[str]:
        """Execute the command and return the paths it wrote."""
