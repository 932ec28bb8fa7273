"""Deterministic persistence helpers."""

import numpy as np
import pytest

from dilifilter.errors import DataError
from dilifilter.persist import (atomic_write_text, canonical_json,
                                fingerprint, read_json, write_json,
                                write_tsv)


class TestCanonicalJson:
    def test_sorted_keys_and_stable(self):
        a = canonical_json({"b": 1, "a": 2})
        b = canonical_json({"a": 2, "b": 1})
        assert a == b
        assert a.index('"a"') < a.index('"b"')

    def test_numpy_values_converted(self):
        payload = {"w": np.array([0.5, 1.5]), "n": np.int64(3),
                   "f": np.float64(0.25), "flag": np.bool_(True)}
        text = canonical_json(payload)
        assert '"w"' in text and "0.5" in text
        assert '"n": 3' in text

    def test_fingerprint_stable_and_sensitive(self):
        base = {"seed": 1, "nested": {"x": [1, 2, 3]}}
        assert fingerprint(base) == fingerprint(dict(base))
        changed = {"seed": 2, "nested": {"x": [1, 2, 3]}}
        assert fingerprint(base) != fingerprint(changed)


class TestFiles:
    def test_atomic_write_creates_parents(self, tmp_path):
        target = tmp_path / "deep" / "dir" / "file.txt"
        atomic_write_text(target, "payload")
        assert target.read_text() == "payload"
        assert not list(target.parent.glob(".*tmp*"))

    def test_json_round_trip(self, tmp_path):
        path = tmp_path / "doc.json"
        write_json(path, {"k": [1.5, "x"], "n": None})
        assert read_json(path) == {"k": [1.5, "x"], "n": None}

    def test_read_json_missing(self, tmp_path):
        with pytest.raises(DataError, match="not found"):
            read_json(tmp_path / "absent.json")

    def test_read_json_invalid(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{oops", encoding="utf-8")
        with pytest.raises(DataError, match="invalid JSON"):
            read_json(path)

    def test_tsv_repr_floats(self, tmp_path):
        path = tmp_path / "t.tsv"
        write_tsv(path, ("a", "b"), [(0.1, "x"), (np.float64(2.0), "y")])
        lines = path.read_text().splitlines()
        assert lines == ["a\tb", "0.1\tx", "2.0\ty"]
