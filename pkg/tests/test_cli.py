"""Tests for the zornlab command line."""

import json

import pytest

from app.main import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from app.theorems import runner
from app.theorems.certificate import parse_certificate
from app.theorems.report import CheckReport
from app.utils.constants import G2_2_ORDER, CheckStatus


class TestEnumerate:
    """Test the enumerate command."""

    def test_lists_loop(self, capsys):
        """Test that M*(2) is listed one element per line followed by the census on stdout."""
        assert main(["enumerate", "--q", "2"]) == EXIT_PASS
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 121
        assert lines[0] == "1;(0,0,0);(0,0,0);1"
        assert "120 elements" in lines[-1]
        assert "order 3: 56" in lines[-1]

    def test_output_file(self, tmp_path, capsys):
        """Test that --output writes the listing to a file."""
        path = tmp_path / "m3.txt"
        assert main(["enumerate", "--q", "3", "--output", str(path)]) == EXIT_PASS
        assert len(path.read_text(encoding="utf-8").splitlines()) == 1080
        assert "1080 elements" in capsys.readouterr().out

    @pytest.mark.parametrize("q", ["6", "16"])
    def test_unsupported_field(self, q, capsys):
        """Test that an unsupported order exits with a usage error."""
        assert main(["enumerate", "--q", q]) == EXIT_USAGE
        assert "unsupported field order" in capsys.readouterr().err


class TestDecompose:
    """Test the decompose command."""

    def test_element(self, capsys):
        """Test that the two summands are printed."""
        assert main(["decompose", "--q", "5", "3;(0,0,0);(0,0,0);2"]) == EXIT_PASS
        out = capsys.readouterr().out.splitlines()
        assert out == ["3;(1,0,0);(4,0,0);0", "0;(4,0,0);(1,0,0);2"]

    def test_random(self, capsys):
        """Test that --random draws and splits an element."""
        assert main(["decompose", "--q", "7", "--random", "--seed", "4"]) == EXIT_PASS
        assert len(capsys.readouterr().out.splitlines()) == 2

    def test_malformed_element(self, capsys):
        """Test that malformed element text exits with a usage error."""
        assert main(["decompose", "--q", "2", "1;(0,0);(0,0,0);1"]) == EXIT_USAGE

    def test_nothing_to_decompose(self, capsys):
        """Test that a missing element exits with a usage error."""
        assert main(["decompose", "--q", "2"]) == EXIT_USAGE


class TestVerify:
    """Test the verify command."""

    def test_field_suite_with_certificate(self, tmp_path, capsys):
        """Test that a passing suite exits 0 and writes a passing certificate."""
        path = tmp_path / "cert.json"
        assert main(["verify", "--q", "4", "--suite", "field", "--json", str(path)]) == EXIT_PASS
        cert = parse_certificate(path.read_text(encoding="utf-8"))
        assert cert.passed and cert.q == 4
        assert cert.aut_order is None
        assert "field-axioms" in capsys.readouterr().out

    def test_unknown_suite(self, capsys):
        """Test that an unknown suite exits with a usage error."""
        assert main(["verify", "--q", "2", "--suite", "nope"]) == EXIT_USAGE
        assert "unknown suite" in capsys.readouterr().err

    def test_suite_outside_orders(self, capsys):
        """Test that a q=2-only suite at q=3 exits with a usage error."""
        assert main(["verify", "--q", "3", "--suite", "main-theorem"]) == EXIT_USAGE

    def test_internal_lookup_error_exits_one(self, monkeypatch, capsys):
        """Test that a KeyError raised inside a check is a failure, not a usage error."""

        def broken(ctx, registry, name):
            raise KeyError("missing table entry")

        monkeypatch.setattr(runner, "run_check", broken)
        assert main(["verify", "--q", "2", "--suite", "field"]) == EXIT_FAIL

    def test_failing_check_exits_one(self, monkeypatch, capsys):
        """Test that a failing check gives exit code 1."""

        def broken(ctx, registry, name):
            return CheckReport(name=name, status=CheckStatus.FAIL, witnesses=["forced"])

        monkeypatch.setattr(runner, "run_check", broken)
        assert main(["verify", "--q", "2", "--suite", "field"]) == EXIT_FAIL


class TestAutGroup:
    """Test aut-group and orbits."""

    def test_odd_field_refused(self, capsys):
        """Test that aut-group outside q=2 exits with a usage error."""
        assert main(["aut-group", "--q", "3"]) == EXIT_USAGE

    def test_orbits_need_cache(self, tmp_path, capsys):
        """Test that orbits without cached generators exits with a usage error."""
        assert main(["orbits", "--q", "2", "--cache-dir", str(tmp_path)]) == EXIT_USAGE
        assert "aut-group" in capsys.readouterr().err

    def test_emit_is_deterministic_and_feeds_orbits(self, tmp_path, capsys):
        """Test that two emissions are byte-identical and orbits then runs from the cache."""
        cache = tmp_path / "cache"
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["aut-group", "--emit", str(first), "--cache-dir", str(cache)]) == EXIT_PASS
        assert main(["aut-group", "--emit", str(second), "--cache-dir", str(cache)]) == EXIT_PASS
        assert first.read_bytes() == second.read_bytes()
        data = json.loads(first.read_text(encoding="utf-8"))
        assert data["aut_order"] == G2_2_ORDER
        assert data["doubling_triple_count"] == G2_2_ORDER
        assert sorted(data["orbits"]) == ["C2", "V4"]
        assert data["orbits"]["C2"]["sizes"] == [63]
        assert sorted(data["orbits"]["V4"]["sizes"]) == [63, 252]
        assert f"aut_order {G2_2_ORDER}" in capsys.readouterr().out

        assert main(["orbits", "--structure", "V4", "--cache-dir", str(cache)]) == EXIT_PASS
        assert "V4: 2 orbits" in capsys.readouterr().out
