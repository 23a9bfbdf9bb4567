"""
Unit tests for the frame-sampling positivity search.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

import numpy as np
import pytest

from ppforms.errors import NonRealFormError
from ppforms.exterior import covector, monomial
from ppforms.positivity.frames import FramePairing, coordinate_frames, sample_frames_test
from ppforms.ppmatrix import PPMatrixForm, to_exterior


@pytest.fixture
def indefinite11():
    """i dz1∧dz̄1 - i dz2∧dz̄2 on C^2"""
    return to_exterior(PPMatrixForm.from_values(1, [[1, 0], [0, -1]]))


@pytest.mark.unit
class TestFramePairing:
    """Vectorized pairing against the exterior engine."""

    def test_matches_exterior_engine(self) -> None:
        rng = np.random.default_rng(3)
        rows = [[0] * 6 for _ in range(6)]
        for j, d in enumerate([1, 2, -1, 3, 0, 4]):
            rows[j][j] = d
        rows[0][5] = rows[5][0] = 2
        A = PPMatrixForm.from_values(2, rows)
        pairing = FramePairing(to_exterior(A))
        frames = rng.standard_normal((5, 2, 4)) + 1j * rng.standard_normal((5, 2, 4))
        values = pairing.values(frames)
        for frame, value in zip(frames, values):
            assert value == pytest.approx(pairing.recheck(frame), abs=1e-9)

    def test_coordinate_frames(self) -> None:
        frames = coordinate_frames(4, 2)
        assert frames.shape == (6, 2, 4)


@pytest.mark.unit
class TestSampleFramesTest:
    """Frame search verdicts."""

    def test_strongly_positive_form(self, identity22: PPMatrixForm) -> None:
        verdict = sample_frames_test(to_exterior(identity22), samples=1000, seed=0)
        assert not verdict.violated
        assert verdict.value >= 0
        assert verdict.samples == 6 + 1000

    def test_indefinite_form_is_violated(self, indefinite11) -> None:
        verdict = sample_frames_test(indefinite11, samples=200, seed=1)
        assert verdict.violated
        assert verdict.witness_kind == "frame"
        assert verdict.value == pytest.approx(-1.0, abs=1e-9)
        assert verdict.details["recheck_value"] == verdict.value

    def test_extra_frames_are_evaluated(self, indefinite11) -> None:
        verdict = sample_frames_test(indefinite11, samples=0, seed=0,
                                     extra_frames=[[covector([2.0, 0.5])]])
        assert verdict.violated
        assert verdict.value == pytest.approx(-3.75)
        assert verdict.samples == 2 + 1

    def test_non_real_form_rejected(self) -> None:
        with pytest.raises(NonRealFormError):
            sample_frames_test(monomial((1,), (1,), 2), samples=10)

    def test_seed_reproducibility(self, identity22: PPMatrixForm) -> None:
        f = to_exterior(identity22)
        first = sample_frames_test(f, samples=500, seed=9)
        second = sample_frames_test(f, samples=500, seed=9)
        assert first.value == second.value

    def test_workers_do_not_change_the_result(self, identity22: PPMatrixForm) -> None:
        f = to_exterior(identity22)
        single = sample_frames_test(f, samples=5000, seed=4, workers=1)
        threaded = sample_frames_test(f, samples=5000, seed=4, workers=2)
        assert single.value == threaded.value
        assert single.samples == threaded.samples
