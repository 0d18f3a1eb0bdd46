# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Module providing the functionality of data models.

Arrays held by the models are float64 copies flagged read-only, so a
model instance can be shared between workers without defensive copies.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .exceptions import (
    BlockError,
    ConfigError,
    ParameterError,
    ShapeError,
    StateError,
    TraceError,
)

# Sampling methods understood by the dataset generator.
SAMPLING_METHODS = ('mcmc', 'exact')


def _frozen(values) -> np.ndarray:
    """Return a read-only float64 copy of ``values``."""
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


def as_spins(values, length: Optional[int] = None) -> np.ndarray:
    """Return ``values`` as a float64 array of -1/+1 entries.

    The last axis is the unit axis; leading axes are batch axes.

    >>> as_spins([1, -1, 1])
    array([ 1., -1.,  1.])
    >>> as_spins([1, 0])
    Traceback (most recent call last):
        ...
    clrbm.exceptions.StateError: unit states must be -1 or +1
    """
    array = np.asarray(values, dtype=np.float64)
    if array.ndim == 0:
        raise ShapeError('a state must have at least one unit axis')
    if length is not None and array.shape[-1] != length:
        raise ShapeError(
            f'expected {length} units per state, got {array.shape[-1]}')
    if not np.all(np.abs(array) == 1.0):
        raise StateError('unit states must be -1 or +1')
    return array


@dataclass(frozen=True, eq=False)
class RbmParams:
    """Define the parameter triple (alpha, beta, w) of a binary RBM."""

    alpha: np.ndarray
    beta: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        alpha, beta, w = _frozen(self.alpha), _frozen(self.beta), \
            _frozen(self.w)

        if alpha.ndim != 1 or beta.ndim != 1 or w.ndim != 2:
            raise ShapeError('alpha and beta must be vectors, w a matrix')
        if alpha.size < 1 or beta.size < 1:
            raise ShapeError('an RBM needs at least one unit per layer')
        if w.shape != (alpha.size, beta.size):
            raise ShapeError(
                f'w must be {alpha.size}x{beta.size}, got '
                f'{w.shape[0]}x{w.shape[1]}')
        for name, values in (('alpha', alpha), ('beta', beta), ('w', w)):
            if not np.all(np.isfinite(values)):
                raise ParameterError(f'{name} has non-finite entries')

        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'w', w)

    @property
    def n(self) -> int:
        """Number of visible units."""
        return self.alpha.size

    @property
    def m(self) -> int:
        """Number of hidden units."""
        return self.beta.size

    @property
    def shape(self) -> tuple[int, int]:
        return self.n, self.m

    @classmethod
    def zeros(cls, n: int, m: int) -> 'RbmParams':
        """Create the all-zero parameter set (the uniform model)."""
        return cls(np.zeros(n), np.zeros(m), np.zeros((n, m)))

    @classmethod
    def constant(cls, n: int, m: int, alpha: float, beta: float,
                 weight: float) -> 'RbmParams':
        """Create parameters with one shared value per group."""
        return cls(np.full(n, alpha), np.full(m, beta),
                   np.full((n, m), weight))

    @classmethod
    def unflatten(cls, n: int, m: int, vector) -> 'RbmParams':
        """Inverse of :meth:`flatten`."""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (n + m + n * m,):
            raise ShapeError(
                f'expected {n + m + n * m} parameters, got {vector.size}')
        return cls(vector[:n], vector[n:n + m],
                   vector[n + m:].reshape(n, m))

    def flatten(self) -> np.ndarray:
        """Concatenate alpha, beta and row-major w into one vector."""
        return np.concatenate([self.alpha, self.beta, self.w.ravel()])

    def ascend(self, gradient: 'GradientTriple',
               rate: float) -> 'RbmParams':
        """Take one gradient ascent step of size ``rate``."""
        if gradient.shape != self.shape:
            raise ShapeError('gradient does not match the parameters')
        return RbmParams(self.alpha + rate * gradient.d_alpha,
                         self.beta + rate * gradient.d_beta,
                         self.w + rate * gradient.d_w)

    def max_abs(self) -> float:
        """Largest parameter magnitude."""
        return float(np.max(np.abs(self.flatten())))

    def __repr__(self):
        """Provide an easy-to-read description of the current instance."""
        return f'<{self.__class__.__name__}: n={self.n}, m={self.m}>'


@dataclass(frozen=True, eq=False)
class GradientTriple:
    """Define a gradient with respect to (alpha, beta, w)."""

    d_alpha: np.ndarray
    d_beta: np.ndarray
    d_w: np.ndarray

    def __post_init__(self):
        d_alpha, d_beta, d_w = _frozen(self.d_alpha), \
            _frozen(self.d_beta), _frozen(self.d_w)

        if d_w.shape != (d_alpha.size, d_beta.size) or d_alpha.ndim != 1:
            raise ShapeError('gradient components have inconsistent shapes')

        object.__setattr__(self, 'd_alpha', d_alpha)
        object.__setattr__(self, 'd_beta', d_beta)
        object.__setattr__(self, 'd_w', d_w)

    @property
    def shape(self) -> tuple[int, int]:
        return self.d_alpha.size, self.d_beta.size

    def flatten(self) -> np.ndarray:
        """Concatenate the components in :meth:`RbmParams.flatten` order."""
        return np.concatenate([self.d_alpha, self.d_beta, self.d_w.ravel()])

    def norm(self) -> float:
        """Euclidean norm over all components."""
        return float(np.linalg.norm(self.flatten()))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.flatten())))

    def __repr__(self):
        """Provide an easy-to-read description of the current instance."""
        n, m = self.shape
        return f'<{self.__class__.__name__}: n={n}, m={m}>'


@dataclass(frozen=True, order=True)
class Block:
    """Define a block: a strictly increasing tuple of visible indices.

    >>> Block((0, 2))
    <Block: 1,3>
    >>> str(Block.parse('2, 4'))
    '2,4'
    """

    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(int(i) for i in self.members)

        if not members:
            raise BlockError('a block must not be empty')
        if members[0] < 0:
            raise BlockError(f'negative visible index in block {members}')
        if any(a >= b for a, b in zip(members, members[1:])):
            raise BlockError(
                f'block members must be strictly increasing: {members}')

        object.__setattr__(self, 'members', members)

    @classmethod
    def parse(cls, text: str) -> 'Block':
        """Parse a comma-separated list of 1-based indices."""
        try:
            members = [int(token) - 1 for token in text.split(',')]
        except ValueError as exc:
            raise BlockError(f'malformed block {text!r}') from exc
        return cls(tuple(members))

    def complement(self, n: int) -> tuple[int, ...]:
        """Indices of ``range(n)`` outside of the block."""
        inside = set(self.members)
        return tuple(i for i in range(n) if i not in inside)

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, index):
        return index in self.members

    def __str__(self):
        return ','.join(str(i + 1) for i in self.members)

    def __repr__(self):
        """Provide an easy-to-read description of the current instance."""
        return f'<{self.__class__.__name__}: {self}>'


@dataclass(frozen=True)
class BlockFamily:
    """Define an ordered family of blocks covering ``range(n)``.

    ``order`` is set for the systematic families F_k and is ``None`` for
    irregular families built with :meth:`from_blocks`.
    """

    n: int
    blocks: tuple[Block, ...]
    order: Optional[int] = None

    def __post_init__(self):
        blocks = tuple(self.blocks)

        if self.n < 1:
            raise BlockError('a family needs at least one visible unit')
        if not blocks:
            raise BlockError('a family must contain at least one block')
        if len(set(blocks)) != len(blocks):
            raise BlockError('a family must not repeat a block')

        covered = set()
        for block in blocks:
            if block.members[-1] >= self.n:
                raise BlockError(
                    f'block {block} refers to a unit beyond n={self.n}')
            covered.update(block.members)
        if len(covered) != self.n:
            missing = sorted(set(range(self.n)) - covered)
            raise BlockError(
                'blocks must cover every visible unit, missing '
                + ','.join(str(i + 1) for i in missing))

        object.__setattr__(self, 'blocks', blocks)

    @classmethod
    def from_blocks(cls, n: int,
                    blocks: Iterable[Sequence[int]]) -> 'BlockFamily':
        """Build an arbitrary (possibly overlapping) checked family."""
        return cls(n, tuple(
            block if isinstance(block, Block) else Block(tuple(block))
            for block in blocks
        ))

    @property
    def weight(self) -> float:
        """The uniform block weight 1/|F|."""
        return 1.0 / len(self.blocks)

    def coverage(self) -> np.ndarray:
        """Count of blocks containing each visible unit, |F(i)|."""
        counts = np.zeros(self.n)
        for block in self.blocks:
            counts[list(block.members)] += 1.0
        return counts

    def masks(self) -> np.ndarray:
        """Indicator matrix of shape (|F|, n)."""
        masks = np.zeros((len(self.blocks), self.n))
        for position, block in enumerate(self.blocks):
            masks[position, list(block.members)] = 1.0
        return masks

    def __len__(self):
        return len(self.blocks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __repr__(self):
        """Provide an easy-to-read description of the current instance."""
        name = f'F_{self.order}' if self.order is not None else 'F'
        return (f'<{self.__class__.__name__}: {name}, n={self.n}, '
                f'blocks={len(self.blocks)}>')


@dataclass(frozen=True, eq=False)
class Dataset:
    """Define M observed visible configurations, one per row."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)

        if samples.ndim != 2:
            raise ShapeError('a dataset must be a two-dimensional array')
        if samples.shape[0] < 1 or samples.shape[1] < 1:
            raise ShapeError('a dataset needs at least one row and column')

        object.__setattr__(self, 'samples', _frozen(as_spins(samples)))

    @property
    def size(self) -> int:
        """Number of samples M."""
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        """Number of visible units n."""
        return self.samples.shape[1]

    def __len__(self):
        return self.size

    def __repr__(self):
        """Provide an easy-to-read description of the current instance."""
        return (f'<{self.__class__.__name__}: M={self.size}, '
                f'n={self.width}>')


@dataclass(frozen=True)
class SamplerConfig:
    """Define the schedule of the synthetic data generator."""

    seed: int = 0
    burn_in: int = 10000
    thinning: int = 100
    num_samples: int = 70
    method: str = 'mcmc'

    def __post_init__(self):
        errors = {}
        if self.burn_in < 0:
            errors['burn_in'] = ['Must be greater than or equal to 0.']
        if self.thinning < 1:
            errors['thinning'] = ['Must be greater than or equal to 1.']
        if self.num_samples < 1:
            errors['num_samples'] = ['Must be greater than or equal to 1.']
        if self.method not in SAMPLING_METHODS:
            choices = ', '.join(SAMPLING_METHODS)
            errors['method'] = [f'Must be one of: {choices}.']
        if errors:
            raise ConfigError(errors=errors)


@dataclass(frozen=True)
class TrainConfig:  # pylint: disable=too-many-instance-attributes
    """Define a gradient ascent run.

    ``k=None`` selects exact maximum likelihood estimation.
    """

    k: Optional[int] = 2
    learning_rate: float = 0.1
    iterations: int = 50000
    init_seed: int = 0
    init_scale: float = 0.5
    record_every: int = 100
    enumeration_cap: int = 20
    max_magnitude: float = 1e6

    def __post_init__(self):
        errors = {}
        if self.k is not None and self.k < 1:
            errors['k'] = ['Must be greater than or equal to 1.']
        if not self.learning_rate > 0:
            errors['learning_rate'] = ['Must be greater than 0.']
        if self.iterations < 1:
            errors['iterations'] = ['Must be greater than or equal to 1.']
        if not self.init_scale > 0:
            errors['init_scale'] = ['Must be greater than 0.']
        if self.record_every < 1:
            errors['record_every'] = ['Must be greater than or equal to 1.']
        if errors:
            raise ConfigError(errors=errors)

    @property
    def is_ml(self) -> bool:
        return self.k is None

    @property
    def method(self) -> str:
        """Short method label: ``ml`` or ``cl<k>``."""
        return 'ml' if self.k is None else f'cl{self.k}'


@dataclass(frozen=True)
class TraceRecord:
    """One recorded iteration of a training run."""

    iteration: int
    objective: float
    true_log_likelihood: Optional[float]
    grad_norm: float


@dataclass(frozen=True, eq=False)
class TrainTrace:
    """Define the recorded trajectory and the final parameters of a run."""

    records: tuple[TraceRecord, ...]
    params: RbmParams
    config: TrainConfig

    def __post_init__(self):
        records = tuple(self.records)
        iterations = [record.iteration for record in records]
        if any(a >= b for a, b in zip(iterations, iterations[1:])):
            raise TraceError('trace iterations must be strictly increasing')
        object.__setattr__(self, 'records', records)

    @property
    def iterations(self) -> np.ndarray:
        return np.array([record.iteration for record in self.records])

    @property
    def objectives(self) -> np.ndarray:
        return np.array([record.objective for record in self.records])

    @property
    def true_log_likelihoods(self) -> np.ndarray:
        """Recorded log-likelihoods, NaN where they were not computed."""
        return np.array([
            np.nan if record.true_log_likelihood is None
            else record.true_log_likelihood
            for record in self.records
        ])

    @property
    def final(self) -> TraceRecord:
        return self.records[-1]

    def __len__(self):
        return len(self.records)

    def __repr__(self):
        """Provide an easy-to-read description of the current instance."""
        return (f'<{self.__class__.__name__}: {self.config.method}, '
                f'records={len(self.records)}>')
