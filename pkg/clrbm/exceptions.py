# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Standard exception hierarchy for clrbm."""


class BaseError(Exception):
    """Base class for all errors in clrbm."""


class ShapeError(BaseError, ValueError):
    """Dimensions of parameters, states, data or families disagree."""


class StateError(BaseError, ValueError):
    """A unit state is not exactly -1 or +1."""


class UnitIndexError(BaseError, IndexError):
    """A visible or hidden unit index is out of range."""


class BlockError(BaseError, ValueError):
    """A block or a block family is malformed."""


class OrderError(BaseError, ValueError):
    """A block order is outside of its admissible range."""

    def __init__(self, k, n, upper=None):
        self.k = k
        self.n = n
        self.upper = n if upper is None else upper
        super().__init__(
            f'block order must satisfy 1 <= k <= {self.upper}, got k={k}')


class EnumerationLimitError(BaseError):
    """Brute-force enumeration was requested above the configured cap."""

    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(
            f'exact enumeration over 2^{n} visible states exceeds the cap '
            f'of 2^{cap}')


class DivergenceError(BaseError):
    """Gradient ascent left the finite, bounded parameter region."""

    def __init__(self, iteration, reason):
        self.iteration = iteration
        self.reason = reason
        super().__init__(
            f'training diverged at iteration {iteration}: {reason}')


class ConfigError(BaseError, ValueError):
    """Invalid option or configuration values."""

    def __init__(self, message=None, errors=None):
        self.errors = errors or {}
        self.message = message

        if message is None and self.errors:
            message = '; '.join(
                f'{key}: {_first(value)}'
                for key, value in sorted(self.errors.items())
            )

        super().__init__(message or 'invalid configuration')


class DataFormatError(BaseError, ValueError):
    """A dataset, model or configuration file is malformed."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line

        where = ''
        if path is not None:
            where = f'{path}:{line}: ' if line is not None else f'{path}: '

        super().__init__(f'{where}{message}')


class ParameterError(BaseError, ValueError):
    """Model parameters contain non-finite entries."""


class TraceError(BaseError, ValueError):
    """Recorded training iterations are not strictly increasing."""


def _first(value):
    """Return the first message of a (possibly nested) marshmallow error."""
    while isinstance(value, (list, tuple)) and value:
        value = value[0]
    if isinstance(value, dict) and value:
        key = sorted(value)[0]
        return f'{key}: {_first(value[key])}'
    return value
