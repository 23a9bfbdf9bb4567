"""
Unit tests for the 6x6 quadric criterion.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppforms.config import DinewSettings
from ppforms.errors import OffQuadricError
from ppforms.gallery import alpha_a, prop_witness
from ppforms.positivity.dinew import (
    dinew_residual,
    dinew_test,
    factor_bivector,
    minors_map,
    quadric_sample,
    recheck_quadric_point,
    witness_scale,
)
from ppforms.sampling import instance_rng, random_exact_scalar
from ppforms.scalars import exact

SMALL = DinewSettings(descent_steps=60, restarts=6, polish_rounds=10)


@pytest.mark.unit
class TestMinorsMap:
    """Quadric points from pairs of vectors."""

    def test_coordinate_pair(self) -> None:
        b = [exact(1), exact(0), exact(0), exact(0)]
        c = [exact(0), exact(1), exact(0), exact(0)]
        assert minors_map(b, c) == [exact(1)] + [exact(0)] * 5

    def test_signed_entry(self) -> None:
        b = [exact(0), exact(1), exact(0), exact(0)]
        c = [exact(0), exact(0), exact(0), exact(1)]
        assert minors_map(b, c)[4] == exact(-1)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_image_lies_on_quadric(self, seed: int) -> None:
        rng = instance_rng(seed)
        b = [random_exact_scalar(rng) for _ in range(4)]
        c = [random_exact_scalar(rng) for _ in range(4)]
        assert dinew_residual(minors_map(b, c)).is_zero()

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_factor_inverts_minors_map(self, seed: int) -> None:
        rng = instance_rng(seed)
        b = [random_exact_scalar(rng) for _ in range(4)]
        c = [random_exact_scalar(rng) for _ in range(4)]
        z = minors_map(b, c)
        fb, fc = factor_bivector(z)
        assert minors_map(fb, fc) == z

    def test_factor_rejects_off_quadric_point(self) -> None:
        z = [exact(1), exact(0), exact(0), exact(0), exact(0), exact(1)]
        with pytest.raises(OffQuadricError):
            factor_bivector(z)

    def test_factor_float_point(self) -> None:
        z = [complex(x) for x in quadric_sample(2, 1)[0]]
        fb, fc = factor_bivector(z, tol=1e-9)
        assert np.allclose(minors_map(fb, fc), z)


@pytest.mark.unit
class TestQuadricSample:
    """Sampled quadric points."""

    def test_float_points(self) -> None:
        points = quadric_sample(0, 101)
        assert points.shape == (101, 6)
        assert np.allclose(np.linalg.norm(points, axis=1), 1.0)
        residual = points[:, 0] * points[:, 5] + points[:, 1] * points[:, 4] + points[:, 2] * points[:, 3]
        assert np.max(np.abs(residual)) < 1e-9

    def test_first_coordinate_vanishes_across_seeds(self) -> None:
        seeds_with_zero = sum(
            bool(np.any(np.abs(quadric_sample(seed, 20)[:, 0]) < 1e-12)) for seed in range(100)
        )
        assert seeds_with_zero >= 50

    def test_every_coordinate_vanishes_somewhere(self) -> None:
        points = np.concatenate([quadric_sample(seed, 20) for seed in range(20)])
        assert np.all(np.any(np.abs(points) < 1e-12, axis=0))

    def test_exact_points(self) -> None:
        for z in quadric_sample(3, 5, exact_mode=True):
            assert dinew_residual(z).is_zero()
            assert max(max(abs(x.re), abs(x.im)) for x in z) == 1


@pytest.mark.unit
class TestDinewTest:
    """Minimization over the quadric."""

    def test_identity_is_not_violated(self) -> None:
        verdict = dinew_test(alpha_a(0), samples=400, seed=0, settings=SMALL)
        assert not verdict.violated
        assert verdict.value == pytest.approx(1.0, abs=1e-9)

    def test_boundary_member_is_not_violated(self) -> None:
        verdict = dinew_test(alpha_a(2), samples=400, seed=0, settings=SMALL)
        assert not verdict.violated
        assert verdict.value == pytest.approx(0.0, abs=1e-3)

    def test_alpha3_is_violated_at_the_known_minimum(self) -> None:
        z = np.array([complex(x) for x in prop_witness(3)])
        verdict = dinew_test(alpha_a(3), samples=400, seed=0, settings=SMALL,
                             extra_points=[list(z / np.linalg.norm(z))])
        assert verdict.violated
        assert verdict.witness_kind == "quadric"
        assert verdict.value == pytest.approx(-0.5, abs=1e-6)
        assert verdict.details["witness_scale"] == pytest.approx(12.0)
        assert verdict.details["scaled_value"] == pytest.approx(-6.0, abs=1e-5)
        assert abs(complex(dinew_residual(verdict.witness))) < 1e-6

    def test_scaled_value_matches_witness_formula(self) -> None:
        z = np.array([complex(x) for x in prop_witness(4)])
        verdict = dinew_test(alpha_a(4), samples=200, seed=1, settings=SMALL,
                             extra_points=[list(z / np.linalg.norm(z))])
        assert verdict.violated
        assert verdict.details["scaled_value"] == pytest.approx(-16.0, abs=1e-5)

    def test_witness_scale(self) -> None:
        assert witness_scale(alpha_a(0)) is None
        assert witness_scale(alpha_a(exact(3, 4))) == pytest.approx(20.0)

    def test_recheck_agrees_with_rayleigh_quotient(self) -> None:
        z = np.array([complex(x) for x in prop_witness(4)])
        assert recheck_quadric_point(alpha_a(4), list(z)) == pytest.approx(1 - 4 / 2)
