"""
Tests for run configurations and report rendering.
"""

import json

import pytest

from src.cli.reports import (
    EXIT_CONTRADICTION,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    FAIL,
    INCONCLUSIVE,
    PASS,
    CheckResult,
    Report,
    RunConfig,
    write_report,
)
from src.config.settings import Settings


# ============================================================================
# CONFIG TESTS
# ============================================================================


class TestRunConfig:
    """Per-command constraints."""

    def test_defaults_are_valid(self):
        RunConfig(command="coformality").validate()
        RunConfig(command="dioperad").validate()

    def test_char2_needs_f2(self):
        with pytest.raises(ValueError, match="runs over F2"):
            RunConfig(command="char2", field="q").validate()

    def test_char2_needs_even_n(self):
        with pytest.raises(ValueError, match="even n"):
            RunConfig(command="char2", field="f2", n=3).validate()

    def test_coformality_needs_rationals(self):
        with pytest.raises(ValueError, match="runs over Q"):
            RunConfig(command="coformality", field="fp:3").validate()

    def test_bad_field_tag(self):
        with pytest.raises(ValueError, match="Field must be one of"):
            RunConfig(command="dioperad", field="z").validate()

    @pytest.mark.parametrize("overrides", [{"max_legs": 8}, {"genus_bound": 7}, {"max_legs": -1}])
    def test_dioperad_bounds(self, overrides):
        with pytest.raises(ValueError, match="must be in"):
            RunConfig(command="dioperad", **overrides).validate()

    def test_unknown_command(self):
        with pytest.raises(ValueError, match="Command must be one of"):
            RunConfig(command="formality").validate()

    def test_from_settings_keeps_overrides(self):
        config = RunConfig.from_settings("char2", Settings(), n=4, field="f2", t_max=None)
        assert config.n == 4
        assert config.field == "f2"
        assert config.t_max == Settings().algebra.truncation


# ============================================================================
# REPORT TESTS
# ============================================================================


def _report(*statuses):
    results = [CheckResult(check=f"c{j}", status=s, witness={}) for j, s in enumerate(statuses)]
    return Report(config=RunConfig(command="dioperad"), results=results)


@pytest.mark.parametrize(
    "statuses,code",
    [
        ((), EXIT_OK),
        ((PASS, PASS), EXIT_OK),
        ((PASS, INCONCLUSIVE), EXIT_INCONCLUSIVE),
        ((INCONCLUSIVE, FAIL), EXIT_CONTRADICTION),
    ],
)
def test_exit_codes(statuses, code):
    assert _report(*statuses).exit_code == code


def test_result_carries_only_its_evidence():
    payload = CheckResult(check="x", status=FAIL, certificate={"y": [1]}).to_dict()
    assert payload == {"check": "x", "status": FAIL, "timing_ms": 0, "certificate": {"y": [1]}}


def test_json_is_sorted_and_stable():
    report = _report(PASS)
    text = report.to_json()
    assert text == _report(PASS).to_json()
    payload = json.loads(text)
    assert list(payload) == ["config", "results"]
    assert payload["results"][0]["status"] == PASS


def test_text_report():
    text = _report(PASS, INCONCLUSIVE).to_text()
    assert "c0" in text and "PASS" in text
    assert "INCONCLUSIVE" in text
    assert text.rstrip().endswith("exit code 2")


def test_write_report_to_file(tmp_path):
    out = tmp_path / "nested" / "report.json"
    text = write_report(_report(PASS), str(out))
    assert out.read_text(encoding="utf-8") == text


def test_write_report_to_stdout(capsys):
    write_report(_report(PASS), None)
    assert json.loads(capsys.readouterr().out)["results"][0]["check"] == "c0"
