"""
Integration tests for the acceptance suites and end-to-end CLI runs

Covers:
- Every suite passing on small instance counts
- Determinism of randomized suites under a fixed seed
- Certified violations through the CLI
- Replay documents for form-based suites

Budgets are reduced through the fast_settings fixture; the full instance
counts from config/ppforms.yaml run with ``ppforms verify``.
"""

import pytest

from ppforms.cli import EXIT_OK, EXIT_VIOLATION, run
from ppforms.gallery import alpha_a
from ppforms.positivity.generators import trusted_positive
from ppforms.serialization import form_to_json
from ppforms.suites import SUITES, describe_suites, run_suite, run_suites


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("PPFORMS_CONFIG", "PPFORMS_SAMPLES", "PPFORMS_SEED", "PPFORMS_TOL",
                 "PPFORMS_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.mark.integration
@pytest.mark.slow
class TestSuites:
    """Acceptance suites on reduced budgets"""

    @pytest.mark.parametrize("name", list(SUITES))
    def test_suite_passes(self, name, fast_settings):
        """Each suite passes on a handful of instances"""
        result = run_suite(name, fast_settings, seed=0, instances=4)
        assert result.passed, result.failure
        assert result.failure is None

    def test_uncounted_suites_run_once(self, fast_settings):
        """Deterministic suites ignore the instance count"""
        result = run_suite("eps", fast_settings, instances=50)
        assert result.instances == 1

    def test_other_seed(self, fast_settings):
        """Randomized suites pass under a different master seed"""
        results = run_suites("all", fast_settings, seed=11, instances=2)
        assert [r.name for r in results] == list(SUITES)
        assert all(r.passed for r in results), [r.failure for r in results if not r.passed]

    def test_describe(self):
        """Every suite has a description"""
        assert {d["suite"] for d in describe_suites()} == set(SUITES)
        assert all(d["description"] for d in describe_suites())


@pytest.mark.integration
@pytest.mark.slow
class TestCertifiedViolations:
    """End-to-end searches that must find a witness"""

    def test_dinew_finds_violation(self, matrix_file):
        """alpha_3 is not positive; the quadric search finds a negative value"""
        path = matrix_file("alpha3.json", alpha_a(3))
        result = run(["check", str(path), "--method", "dinew", "--samples", "5000"])
        assert result.exit_code == EXIT_VIOLATION
        assert result.payload["status"] == "violated"
        assert result.payload["min"] < 0
        assert result.payload["min"] >= -0.5 - 1e-6
        assert len(result.payload["witness"]) == 6
        details = result.payload["details"]
        assert details["scaled_value"] == pytest.approx(12 * result.payload["min"])
        assert details["scaled_value"] == pytest.approx(-6.0, abs=0.05)

    def test_dinew_accepts_boundary_form(self, matrix_file):
        """alpha_2 sits on the boundary of the positive cone"""
        path = matrix_file("alpha2.json", alpha_a(2))
        result = run(["check", str(path), "--method", "dinew", "--samples", "2000"])
        assert result.exit_code == EXIT_OK
        assert result.payload["status"] == "no_violation_found"

    def test_reduced_check_on_trusted_form(self, write_json):
        """Reduced pipeline reports no violation for a generated positive form"""
        form = trusted_positive(0, 1).form
        path = write_json("trusted.json", form_to_json(form))
        result = run(["check", str(path), "--method", "reduced", "--samples", "200"])
        assert result.exit_code == EXIT_OK


@pytest.mark.integration
@pytest.mark.slow
class TestReplay:
    """Replay documents"""

    def test_passing_replay(self, write_json):
        """A stored positive form replays cleanly"""
        trusted = trusted_positive(4, 2)
        path = write_json("replay.json", {
            "suite": "lemma",
            "seed": 4,
            "index": 2,
            "recipe": trusted.recipe,
            "form": form_to_json(trusted.form),
        })
        result = run(["verify", "--replay", str(path)])
        assert result.exit_code == EXIT_OK
        assert result.payload["results"][0]["passed"] is True

    def test_replay_regenerates_missing_form(self, write_json):
        """Without a stored form the instance is rebuilt from seed and index"""
        path = write_json("replay.json", {"suite": "thm1", "seed": 4, "index": 2})
        result = run(["verify", "--replay", str(path)])
        assert result.exit_code == EXIT_OK

    def test_replay_of_unknown_suite(self, write_json):
        """Unknown suite names are invalid input"""
        path = write_json("replay.json", {"suite": "nope", "seed": 0})
        result = run(["verify", "--replay", str(path)])
        assert result.exit_code == 2
