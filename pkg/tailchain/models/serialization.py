"""
Model Spec Serialization

JSON form of the three model specs: {"model": "ar" | "tarch" | "renewal", ...}.
Field names match tailchain/schemas/model_spec.schema.json.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

from tailchain.exceptions import ValidationError, format_validation_error
from tailchain.models.ar import ArSpec
from tailchain.models.innovations import IntegerPareto, innovation_from_dict
from tailchain.models.renewal import RenewalChainSpec
from tailchain.models.tarch import TarchSpec

ModelSpec = Union[ArSpec, TarchSpec, RenewalChainSpec]

MODEL_FIELDS = {
    'ar': {'model', 'phi', 'alpha', 'innovation'},
    'tarch': {'model', 'b10', 'b11', 'b20', 'b21', 'xi', 'q', 'innovation'},
    'renewal': {'model', 'beta', 'initial', 'initial_state'},
}


def spec_to_dict(spec: ModelSpec) -> Dict[str, Any]:
    """Dictionary form of any model spec."""
    if not isinstance(spec, (ArSpec, TarchSpec, RenewalChainSpec)):
        raise ValidationError(format_validation_error('spec', type(spec).__name__, 'is not a model spec'))
    return spec.to_dict()


def spec_from_dict(data: Dict[str, Any]) -> ModelSpec:
    """
    Build and validate a model spec from its dictionary form.

    Raises:
        ValidationError: Unknown model tag, unknown or missing fields
        InvalidSpecError: Parameters violate the model's conditions
    """
    if not isinstance(data, dict):
        raise ValidationError(format_validation_error('model', data, 'must be a JSON object'))
    tag = data.get('model')
    if tag not in MODEL_FIELDS:
        raise ValidationError(format_validation_error('model', tag, "must be 'ar', 'tarch' or 'renewal'"))
    unknown = set(data) - MODEL_FIELDS[tag]
    if unknown:
        raise ValidationError(format_validation_error('model', sorted(unknown), f'unknown fields for {tag}'))

    try:
        if tag == 'ar':
            innovation = innovation_from_dict(data['innovation'])
            alpha = data.get('alpha')
            return ArSpec(phi=tuple(data['phi']), innovation=innovation,
                          alpha=None if alpha is None else float(alpha))
        if tag == 'tarch':
            innovation = innovation_from_dict(data.get('innovation', {'dist': 'gaussian'}))
            kwargs = {key: float(data[key]) for key in ('b10', 'b11', 'b20', 'b21')}
            kwargs['xi'] = float(data.get('xi', 0.0))
            if 'q' in data:
                kwargs['q'] = float(data['q'])
            return TarchSpec(innovation=innovation, **kwargs)
        return RenewalChainSpec(
            z_dist=IntegerPareto(beta=float(data['beta'])),
            initial=data.get('initial', 'stationary'),
            initial_state=data.get('initial_state'),
        )
    except KeyError as e:
        raise ValidationError(f"Model '{tag}' is missing field {e}") from e


def spec_to_json(spec: ModelSpec) -> str:
    return json.dumps(spec_to_dict(spec), sort_keys=True)


def spec_from_json(text: str) -> ModelSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Model spec is not valid JSON: {e}") from e
    return spec_from_dict(data)


def load_spec(path: Union[str, Path]) -> ModelSpec:
    """Read a model spec from a JSON file."""
    return spec_from_json(Path(path).read_text(encoding='utf-8'))


__all__ = ['ModelSpec', 'MODEL_FIELDS', 'spec_to_dict', 'spec_from_dict', 'spec_to_json',
           'spec_from_json', 'load_spec']
