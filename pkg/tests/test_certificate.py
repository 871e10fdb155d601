"""Tests for certificates and the generator cache."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from app.theorems.certificate import (
    Certificate,
    build_certificate,
    canonical_json,
    load_generators,
    manifest_path,
    parse_certificate,
    save_generators,
    write_certificate,
)
from app.theorems.report import CheckReport
from app.utils.constants import CheckStatus, G2_2_ORDER
from app.utils.errors import MissingGroupDataError


def _walk(value):
    if isinstance(value, dict):
        for v in value.values():
            yield from _walk(v)
    elif isinstance(value, list):
        for v in value:
            yield from _walk(v)
    else:
        yield value


@pytest.fixture
def passing():
    return [CheckReport(name="b-check", status=CheckStatus.PASS, cases=3), CheckReport(name="a-check", status=CheckStatus.PASS)]


class TestCertificate:
    """Test building and serializing certificates."""

    def test_fields(self, ctx2, passing):
        """Test orders, census and check ordering at q=2."""
        cert = build_certificate(ctx2, passing)
        assert (cert.algebra_order, cert.loop_order) == (256, 120)
        assert cert.census == {"1": 1, "2": 63, "3": 56}
        assert [c.name for c in cert.checks] == ["a-check", "b-check"]
        assert cert.passed

    def test_round_trip(self, ctx2, passing, tmp_path):
        """Test that a written certificate parses back to the same model."""
        cert = build_certificate(ctx2, passing, aut_order=G2_2_ORDER)
        path = write_certificate(cert, tmp_path / "out" / "cert.json")
        assert parse_certificate(path.read_text(encoding="utf-8")) == cert

    def test_canonical_json_has_no_floats(self, ctx2, passing):
        """Test that the JSON holds integers and strings only, with sorted keys."""
        text = canonical_json(build_certificate(ctx2, passing))
        data = json.loads(text)
        assert not any(isinstance(v, float) for v in _walk(data))
        assert list(data) == sorted(data)
        assert text.endswith("\n")

    def test_failing_check_fails_certificate(self, ctx2):
        """Test that one failing check sets status fail."""
        failing = CheckReport(name="x", status=CheckStatus.FAIL, witnesses=["w"])
        assert build_certificate(ctx2, [failing]).status is CheckStatus.FAIL

    def test_status_must_match_checks(self, ctx2, passing):
        """Test that a contradictory status is refused."""
        data = build_certificate(ctx2, passing).model_dump()
        data["status"] = CheckStatus.FAIL
        with pytest.raises(ValidationError):
            Certificate(**data)

    def test_checks_required(self, ctx2):
        """Test that a certificate without checks is refused."""
        with pytest.raises(ValidationError):
            build_certificate(ctx2, [])

    def test_generator_records(self, ctx2, passing):
        """Test that recorded generators carry 8x8 matrices and full permutations."""
        cert = build_certificate(ctx2, passing, generators=ctx2.generators[:7])
        assert [g.label for g in cert.generators][-1] == "sigma"
        for record in cert.generators:
            assert len(record.matrix) == 8 and all(len(row) == 8 for row in record.matrix)
            assert sorted(record.permutation) == list(range(120))


class TestGeneratorCache:
    """Test the cached generator manifest."""

    def test_save_and_load(self, ctx2, tmp_path):
        """Test that cached generators rebuild the same permutations and matrices."""
        gens = ctx2.generators[:10]
        path = save_generators(2, G2_2_ORDER, gens, tmp_path)
        assert path == manifest_path(2, tmp_path)
        loaded = load_generators(ctx2, tmp_path)
        assert [g.label for g in loaded] == [g.label for g in gens]
        for old, new in zip(gens, loaded):
            assert np.array_equal(old.perm, new.perm)
            assert new.linear.same_matrix(old.linear)

    def test_missing_manifest(self, ctx2, tmp_path):
        """Test that an empty cache raises MissingGroupDataError naming the fix."""
        with pytest.raises(MissingGroupDataError, match="aut-group"):
            load_generators(ctx2, tmp_path)

    def test_environment_directory(self, ctx2, tmp_path, monkeypatch):
        """Test that ZORNLAB_CACHE_DIR selects the cache when no directory is given."""
        monkeypatch.setenv("ZORNLAB_CACHE_DIR", str(tmp_path))
        save_generators(2, G2_2_ORDER, ctx2.generators[:2])
        assert (tmp_path / manifest_path(2, tmp_path).name).exists()
