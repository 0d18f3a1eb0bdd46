# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Reading and writing of datasets, traces, models and run-configs.

Datasets are headerless CSV files with one sample per line and entries
``-1`` or ``1``. Traces and result tables are CSV files with a header
line. Floats are written with :func:`repr`, the shortest string that
reads back to the same double.
"""

import csv
import json
import logging
import math
import os
from typing import Iterable, Optional, Sequence

from marshmallow import ValidationError

from .exceptions import ConfigError, DataFormatError
from .models import Dataset, RbmParams, TrainTrace
from .schemas import RbmParamsSchema

log = logging.getLogger(__name__)

TRACE_HEADER = ('iteration', 'objective', 'true_log_likelihood', 'grad_norm')

_SPINS = {'1': 1.0, '+1': 1.0, '-1': -1.0}


def format_value(value) -> str:
    """Render a table cell.

    >>> format_value(0.1)
    '0.1'
    >>> format_value(None)
    ''
    >>> format_value(3)
    '3'
    """
    if value is None:
        return ''
    if isinstance(value, float):
        return '' if math.isnan(value) else repr(value)
    return str(value)


def _ensure_parent(path: str):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_rows(path: str, header: Optional[Sequence[str]],
               rows: Iterable[Sequence]):
    """Write a CSV file, creating the parent directory when missing."""
    _ensure_parent(path)
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        if header is not None:
            writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    log.debug('Wrote %s', path)


def write_dataset(path: str, dataset: Dataset):
    """Write ``dataset`` as a headerless CSV of -1/1 entries."""
    write_rows(path, None, dataset.samples.astype(int).tolist())


def read_dataset(path: str) -> Dataset:
    """Read a dataset file, reporting the first malformed line."""
    rows = []
    width = None

    with open(path, newline='', encoding='utf-8') as handle:
        for line, row in enumerate(csv.reader(handle), start=1):
            if not row or not ''.join(row).strip():
                continue

            try:
                values = [_SPINS[token.strip()] for token in row]
            except KeyError as exc:
                raise DataFormatError(
                    f'entries must be -1 or 1, got {exc.args[0]!r}',
                    path, line) from exc

            if width is None:
                width = len(values)
            elif len(values) != width:
                raise DataFormatError(
                    f'expected {width} entries, got {len(values)}',
                    path, line)

            rows.append(values)

    if not rows:
        raise DataFormatError('dataset is empty', path)

    log.debug('Read %d samples of %d units from %s', len(rows), width, path)
    return Dataset(rows)


def write_trace(path: str, trace: TrainTrace):
    """Write the recorded iterations of ``trace``."""
    write_rows(path, TRACE_HEADER, (
        (record.iteration, record.objective, record.true_log_likelihood,
         record.grad_norm)
        for record in trace.records
    ))


def dump_model(path: str, params: RbmParams):
    """Write ``params`` as a JSON model document."""
    _ensure_parent(path)
    document = RbmParamsSchema().dump_params(params)
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(document, handle, indent=2)
        handle.write('\n')
    log.debug('Wrote %s', path)


def _read_json(path: str):
    with open(path, encoding='utf-8') as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise DataFormatError(exc.msg, path, exc.lineno) from exc


def load_model(path: str) -> RbmParams:
    """Read a JSON model document."""
    try:
        return RbmParamsSchema().load(_read_json(path))
    except ValidationError as exc:
        raise DataFormatError(
            str(ConfigError(errors=exc.messages)), path) from exc


def load_run_config(path: str) -> dict:
    """Read the JSON object of a ``--config`` file.

    Keys are validated later against the options of the command.
    """
    document = _read_json(path)
    if not isinstance(document, dict):
        raise ConfigError(f'{path}: a run-config must be a JSON object')
    return document
