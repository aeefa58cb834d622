"""
Test suite for model spec serialization.
"""

import pytest

from tailchain.exceptions import InvalidSpecError, ValidationError
from tailchain.models.serialization import (
    load_spec,
    spec_from_dict,
    spec_from_json,
    spec_to_dict,
    spec_to_json,
)


class TestSpecDict:
    """Test suite for dictionary and JSON forms of model specs."""

    def test_round_trips(self, ar1_spec, tarch_spec, renewal_spec):
        """Test every model family survives a JSON round trip."""
        for spec in (ar1_spec, tarch_spec, renewal_spec):
            assert spec_from_json(spec_to_json(spec)) == spec

    def test_ar_dict_fields(self, ar1_spec):
        """Test the AR dictionary form."""
        data = spec_to_dict(ar1_spec)
        assert data['model'] == 'ar'
        assert data['phi'] == [0.7]
        assert data['innovation'] == {'dist': 'pareto', 'alpha': 2.0, 'scale': 1.0, 'signed': False}

    def test_tarch_defaults(self):
        """Test xi and the innovation default for T-ARCH."""
        spec = spec_from_dict({'model': 'tarch', 'b10': 1.0, 'b11': 1.0, 'b20': 1.0, 'b21': 1.0})
        assert spec.xi == 0.0
        assert spec.innovation.to_dict() == {'dist': 'gaussian'}

    def test_unknown_model(self):
        """Test an unknown model tag is rejected."""
        with pytest.raises(ValidationError):
            spec_from_dict({'model': 'garch'})

    def test_unknown_field(self):
        """Test unknown fields are rejected rather than ignored."""
        with pytest.raises(ValidationError, match='unknown fields'):
            spec_from_dict({'model': 'renewal', 'beta': 3.0, 'theta': 1.0})

    def test_missing_field(self):
        """Test a missing required field names the field."""
        with pytest.raises(ValidationError, match='phi'):
            spec_from_dict({'model': 'ar', 'innovation': {'dist': 'gaussian'}})

    def test_invalid_parameters(self):
        """Test parameters violating the model conditions raise InvalidSpecError."""
        with pytest.raises(InvalidSpecError):
            spec_from_dict({'model': 'ar', 'phi': [1.2], 'innovation': {'dist': 'pareto', 'alpha': 2.0}})

    def test_invalid_json(self):
        """Test malformed JSON text is a validation error."""
        with pytest.raises(ValidationError):
            spec_from_json('{"model": ')

    def test_load_spec(self, tmp_path, renewal_spec):
        """Test reading a spec from a file."""
        path = tmp_path / 'model.json'
        path.write_text(spec_to_json(renewal_spec), encoding='utf-8')
        assert load_spec(path) == renewal_spec
