# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Schemas for handling (de)serialized model and option documents."""

from marshmallow import (
    fields,
    post_load,
    RAISE,
    Schema,
    validate,
    validates_schema,
    ValidationError,
)

from .exceptions import ConfigError
from .models import RbmParams, SamplerConfig, SAMPLING_METHODS, TrainConfig

_positive = validate.Range(min=0, min_inclusive=False)
_at_least_one = validate.Range(min=1)
_non_negative = validate.Range(min=0)
_seed = validate.Range(min=0, max=2 ** 64 - 1)


class RbmParamsSchema(Schema):
    """Schema for the model document {"n", "m", "alpha", "beta", "w"}."""

    class Meta:  # pylint: disable=too-few-public-methods
        """Metaclass to setup RbmParamsSchema."""

        unknown = RAISE
        ordered = True

    n = fields.Int(required=True, validate=_at_least_one)
    m = fields.Int(required=True, validate=_at_least_one)
    alpha = fields.List(fields.Float(allow_nan=False), required=True)
    beta = fields.List(fields.Float(allow_nan=False), required=True)
    w = fields.List(fields.List(fields.Float(allow_nan=False)),
                    required=True)

    @validates_schema
    def validate_shapes(self, data, **_kwargs):
        """Check the array lengths against ``n`` and ``m``."""
        n, m = data['n'], data['m']
        errors = {}

        if len(data['alpha']) != n:
            errors['alpha'] = [f'Length must be {n}.']
        if len(data['beta']) != m:
            errors['beta'] = [f'Length must be {m}.']
        if len(data['w']) != n or any(len(row) != m for row in data['w']):
            errors['w'] = [f'Shape must be {n}x{m}.']

        if errors:
            raise ValidationError(errors)

    @post_load
    def make(self, data, **_kwargs):
        """Deserialize the ``data`` to a RbmParams instance."""
        return RbmParams(data['alpha'], data['beta'], data['w'])

    def dump_params(self, params: RbmParams) -> dict:
        """Serialize ``params`` into a model document."""
        return self.dump({
            'n': params.n,
            'm': params.m,
            'alpha': params.alpha.tolist(),
            'beta': params.beta.tolist(),
            'w': params.w.tolist(),
        })


class SamplerConfigSchema(Schema):
    """Schema for the data generator schedule."""

    class Meta:  # pylint: disable=too-few-public-methods
        """Metaclass to setup SamplerConfigSchema."""

        unknown = RAISE

    seed = fields.Int(load_default=0, validate=_seed)
    burn_in = fields.Int(load_default=10000, validate=_non_negative)
    thinning = fields.Int(load_default=100, validate=_at_least_one)
    num_samples = fields.Int(load_default=70, validate=_at_least_one)
    method = fields.Str(load_default='mcmc',
                        validate=validate.OneOf(SAMPLING_METHODS))

    @post_load
    def make(self, data, **_kwargs):
        """Deserialize the ``data`` to a SamplerConfig instance."""
        return SamplerConfig(**data)


class TrainConfigSchema(Schema):
    """Schema for a gradient ascent run; ``k`` null means exact ML."""

    class Meta:  # pylint: disable=too-few-public-methods
        """Metaclass to setup TrainConfigSchema."""

        unknown = RAISE

    k = fields.Int(load_default=2, allow_none=True, validate=_at_least_one)
    learning_rate = fields.Float(load_default=0.1, validate=_positive)
    iterations = fields.Int(load_default=50000, validate=_at_least_one)
    init_seed = fields.Int(load_default=0, validate=_seed)
    init_scale = fields.Float(load_default=0.5, validate=_positive)
    record_every = fields.Int(load_default=100, validate=_at_least_one)
    enumeration_cap = fields.Int(load_default=20, validate=_at_least_one)
    max_magnitude = fields.Float(load_default=1e6, validate=_positive)

    @post_load
    def make(self, data, **_kwargs):
        """Deserialize the ``data`` to a TrainConfig instance."""
        return TrainConfig(**data)


class _OptionsSchema(Schema):
    """Options shared by every command."""

    class Meta:  # pylint: disable=too-few-public-methods
        """Metaclass to setup option schemas."""

        unknown = RAISE

    out_dir = fields.Str()


class _SamplingOptionsSchema(_OptionsSchema):
    n = fields.Int(validate=_at_least_one)
    m_generator = fields.Int(validate=_at_least_one)
    generator_alpha = fields.Float(allow_nan=False)
    generator_beta = fields.Float(allow_nan=False)
    generator_weight = fields.Float(allow_nan=False)
    num_samples = fields.Int(validate=_at_least_one)
    method = fields.Str(validate=validate.OneOf(SAMPLING_METHODS))
    burn_in = fields.Int(validate=_non_negative)
    thinning = fields.Int(validate=_at_least_one)


class _TrainingOptionsSchema(_OptionsSchema):
    m_learner = fields.Int(validate=_at_least_one)
    rate = fields.Float(validate=_positive)
    iterations = fields.Int(validate=_at_least_one)
    init_scale = fields.Float(validate=_positive)
    record_every = fields.Int(validate=_at_least_one)
    enumeration_cap = fields.Int(validate=_at_least_one)


class GenerateOptionsSchema(_SamplingOptionsSchema):
    """Schema for the options of the ``generate`` command."""

    seed = fields.Int(validate=_seed)
    output = fields.Str()


class TrainOptionsSchema(_TrainingOptionsSchema):
    """Schema for the options of the ``train`` command."""

    data = fields.Str()
    n = fields.Int(allow_none=True, validate=_at_least_one)
    k = fields.Int(validate=_at_least_one)
    ml = fields.Bool()
    seed = fields.Int(validate=_seed)


class ReproduceOptionsSchema(_SamplingOptionsSchema, _TrainingOptionsSchema):
    """Schema for the options of the ``reproduce`` command."""

    trials = fields.Int(validate=_at_least_one)
    master_seed = fields.Int(validate=_seed)
    orders = fields.List(fields.Int(validate=_at_least_one),
                         validate=validate.Length(min=1))
    jobs = fields.Int(allow_none=True, validate=_at_least_one)
    shared_dataset = fields.Bool()


def load(schema: Schema, document):
    """Load ``document`` through ``schema``, raising :class:`ConfigError`.

    >>> load(SamplerConfigSchema(), {'method': 'gibbs'})
    Traceback (most recent call last):
        ...
    clrbm.exceptions.ConfigError: method: Must be one of: mcmc, exact.
    """
    try:
        return schema.load(document)
    except ValidationError as exc:
        raise ConfigError(errors=exc.messages) from exc
