"""
Tests for JSON conversion and file loading.
"""

import json
import math
import os
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from thermocat.core.catalysts import FamilyParams, optimal_pair
from thermocat.core.config import Config
from thermocat.core.exceptions import ValidationError
from thermocat.core.hamiltonians import FiniteSpectrum
from thermocat.core.spectra import ProbVec
from thermocat.utils.serialization import (
    dump_json,
    load_json_file,
    load_transform,
    pair_from_dict,
    pair_to_dict,
    to_jsonable,
)


class TestToJsonable:
    """Test cases for value conversion."""

    def test_fractions(self):
        """Test rationals as strings or floats."""
        assert to_jsonable(Fraction(3, 8)) == "3/8"
        assert to_jsonable(Fraction(4, 2)) == 2
        assert to_jsonable(Fraction(3, 8), exact=False) == 0.375

    def test_special_floats_and_numpy(self):
        """Test infinities, NaN and numpy scalars."""
        assert to_jsonable(math.inf) == "inf"
        assert to_jsonable(-math.inf) == "-inf"
        assert to_jsonable(math.nan) == "nan"
        assert to_jsonable(np.float64(0.5)) == 0.5
        assert to_jsonable(np.int64(7)) == 7
        assert to_jsonable(np.array([1.0, 2.0])) == [1.0, 2.0]

    def test_nested_structures(self):
        """Test dicts, tuples and probability vectors."""
        data = {"v": ProbVec(["1/2", "1/2"]), "pair": (Fraction(1, 3), True, None)}

        assert to_jsonable(data) == {"v": ["1/2", "1/2"], "pair": ["1/3", True, None]}
        assert to_jsonable(ProbVec(["1/4", "3/4"]), exact=False) == [0.25, 0.75]

    def test_catalyst_pair(self):
        """Test that pairs become {m, omega_in, omega_out}."""
        pair = optimal_pair(FamilyParams(2, 1))

        assert to_jsonable(pair) == {"m": 2, "omega_in": ["1", "0"], "omega_out": ["1/2", "1/2"]}

    def test_unsupported_type(self):
        """Test that unknown objects are rejected."""
        with pytest.raises(ValidationError):
            to_jsonable(object())


class TestPairs:
    """Test cases for catalyst pair dictionaries."""

    def test_pair_round_trip(self):
        """Test that pair_from_dict inverts pair_to_dict."""
        pair = optimal_pair(FamilyParams(2, 2))

        rebuilt = pair_from_dict(pair_to_dict(pair))

        assert rebuilt.system_dim == 2
        assert list(rebuilt.omega_in) == list(pair.omega_in)
        assert list(rebuilt.omega_out) == list(pair.omega_out)

    def test_pair_from_dict_errors(self):
        """Test missing and malformed fields."""
        with pytest.raises(ValidationError) as exc_info:
            pair_from_dict({"m": 2, "omega_in": ["1"]})
        assert "omega_out" in str(exc_info.value)

        with pytest.raises(ValidationError):
            pair_from_dict({"m": "two", "omega_in": ["1"], "omega_out": ["1"]})

        with pytest.raises(ValidationError):
            pair_from_dict({"m": 2, "omega_in": [], "omega_out": ["1"]})


class TestFiles:
    """Test cases for JSON files on disk."""

    def setup_method(self):
        """Set up a temporary directory and a fresh config."""
        Config.reset_singleton()
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """Clean up after each test."""
        Config.reset_singleton()
        import shutil

        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def _write(self, name, content):
        path = Path(self.temp_dir) / name
        path.write_text(content if isinstance(content, str) else json.dumps(content), encoding="utf-8")
        return path

    def test_load_json_file(self):
        """Test a well-formed file with the current schema."""
        path = self._write("ok.json", {"schema": "thermocat/1", "x": 1})
        assert load_json_file(path) == {"schema": "thermocat/1", "x": 1}

    def test_load_json_file_errors(self):
        """Test missing files, bad JSON, non-objects and foreign schemas."""
        with pytest.raises(ValidationError):
            load_json_file(os.path.join(self.temp_dir, "missing.json"))

        with pytest.raises(ValidationError) as exc_info:
            load_json_file(self._write("bad.json", "{not json"))
        assert exc_info.value.suggestion

        with pytest.raises(ValidationError):
            load_json_file(self._write("list.json", [1, 2]))

        with pytest.raises(ValidationError):
            load_json_file(self._write("old.json", {"schema": "thermocat/0"}))

    def test_load_transform(self):
        """Test reading a transformation file."""
        path = self._write(
            "t.json",
            {"p_in": ["1", "0"], "p_out": ["2/3", "1/3"], "spectrum": {"kind": "finite", "levels": [0, 0.5], "beta": 1}},
        )

        p_in, p_out, spec = load_transform(path)

        assert list(p_in) == [1, 0]
        assert list(p_out) == [Fraction(2, 3), Fraction(1, 3)]
        assert isinstance(spec, FiniteSpectrum)
        assert spec.dimension == 2

    def test_load_transform_errors(self):
        """Test missing keys, unbounded spectra and length mismatches."""
        with pytest.raises(ValidationError):
            load_transform(self._write("a.json", {"p_in": ["1"], "p_out": ["1"]}))

        unbounded = {"kind": "unbounded", "family": "harmonic", "params": {"hbar_omega": 1.0}, "beta": 1.0}
        with pytest.raises(ValidationError):
            load_transform(self._write("b.json", {"p_in": ["1"], "p_out": ["1"], "spectrum": unbounded}))

        finite = {"kind": "finite", "levels": [0, 1, 2], "beta": 1.0}
        with pytest.raises(ValidationError):
            load_transform(self._write("c.json", {"p_in": ["1", "0"], "p_out": ["1", "0"], "spectrum": finite}))

    def test_dump_json(self):
        """Test the schema tag and deterministic layout."""
        text = dump_json({"value": Fraction(1, 3)})

        assert json.loads(text) == {"schema": "thermocat/1", "value": "1/3"}
        assert text.startswith('{\n  "schema"')
        assert json.loads(dump_json([1, 2])) == [1, 2]
        assert dump_json({"value": Fraction(1, 3)}) == text
