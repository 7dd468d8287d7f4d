import math

import numpy as np
import pytest

from oracles import conditioned_screen_joint
from qeraser import analysis, core
from qeraser.errors import (
    IndexOutOfRangeError,
    InvalidGeometryError,
    NonFinitePhaseError,
    ZeroProbabilityError,
)
from qeraser.marker import erasure_basis
from qeraser.twoslit import (
    ScreenGeometry,
    ScreenGrid,
    build_grid,
    default_geometry,
    default_grid,
    delayed_marker_state_at,
    marked_state,
    pattern_conditioned,
    pattern_marked_unconditioned,
    pattern_no_marker,
    visibility,
)

SQ = 1.0 / math.sqrt(2.0)

GRID = default_grid()
W = GRID.geometry.fringe_width
BINS_PER_FRINGE = 128  # 512 bins over four fringes


def bin_at(x):
    k = int(round((x - GRID.geometry.x_min) / GRID.dx))
    assert abs(GRID.positions[k] - x) < 1e-9
    return k


class TestGeometry:
    def test_fringe_width(self):
        geometry = ScreenGeometry(2.0, 1.0, 1000.0, -10.0, 10.0, 16)
        assert geometry.fringe_width == 500.0

    def test_default_geometry_spans_four_fringes(self):
        geometry = default_geometry()
        assert geometry.fringe_width == 500.0
        assert geometry.x_min == -2 * 500.0 and geometry.x_max == 2 * 500.0
        assert geometry.bins == 512

    def test_invalid_geometry_rejected(self):
        with pytest.raises(InvalidGeometryError):
            ScreenGeometry(-1.0, 1.0, 1.0, 0.0, 1.0, 8)
        with pytest.raises(InvalidGeometryError):
            ScreenGeometry(1.0, 1.0, 1.0, 1.0, 0.0, 8)
        with pytest.raises(InvalidGeometryError):
            ScreenGeometry(1.0, 1.0, 1.0, 0.0, 1.0, 1)
        with pytest.raises(InvalidGeometryError):
            ScreenGeometry(1.0, float("inf"), 1.0, 0.0, 1.0, 8)


class TestGrid:
    def test_flat_envelope_is_uniform_density(self):
        extent = GRID.geometry.x_max - GRID.geometry.x_min
        assert np.allclose(GRID.envelope**2, 1.0 / extent, rtol=1e-12)

    def test_envelope_normalized_on_grid(self):
        assert abs(float(np.sum(GRID.envelope**2)) * GRID.dx - 1.0) < 1e-10
        gauss = build_grid(default_geometry(), "gaussian", sigma=300.0)
        assert abs(float(np.sum(gauss.envelope**2)) * gauss.dx - 1.0) < 1e-10

    def test_phase_at_half_fringe_is_half_pi(self):
        k = bin_at(W / 2)
        assert GRID.theta_x[k] == pytest.approx(math.pi / 2, abs=1e-12)

    def test_phase_formula(self):
        geo = GRID.geometry
        expected = math.pi * GRID.positions * geo.d / (geo.wavelength * geo.L)
        assert np.max(np.abs(GRID.theta_x - expected)) < 1e-12

    def test_gaussian_requires_sigma(self):
        with pytest.raises(InvalidGeometryError):
            build_grid(default_geometry(), "gaussian")
        with pytest.raises(InvalidGeometryError):
            build_grid(default_geometry(), "lorentzian")


class TestPatterns:
    def test_no_marker_peaks_and_nulls(self):
        pattern = pattern_no_marker(GRID)
        center = bin_at(0.0)
        dark = bin_at(W / 2)
        assert pattern.probabilities[center] == np.max(pattern.probabilities)
        assert pattern.probabilities[dark] < 1e-12

    def test_no_marker_peak_spacing_is_fringe_width(self):
        probs = pattern_no_marker(GRID).probabilities
        peaks = [
            k
            for k in range(1, GRID.bins - 1)
            if probs[k] > probs[k - 1] and probs[k] > probs[k + 1]
        ]
        spacings = np.diff(GRID.positions[peaks])
        assert np.max(np.abs(spacings - W)) < GRID.dx

    def test_washed_pattern_is_flat_envelope(self):
        probs = pattern_marked_unconditioned(GRID).probabilities
        assert np.max(np.abs(probs - 1.0 / GRID.bins)) < 1e-12

    def test_washed_equals_weighted_branch_average(self):
        washed = pattern_marked_unconditioned(GRID).probabilities
        for theta in np.linspace(0.0, math.pi, 32, endpoint=False):
            plus, p_plus = pattern_conditioned(GRID, float(theta), "plus")
            minus, p_minus = pattern_conditioned(GRID, float(theta), "minus")
            mixed = p_plus * plus.probabilities + p_minus * minus.probabilities
            assert np.max(np.abs(mixed - washed)) < 1e-12

    def test_conditioned_maxima_on_fringe_lattice(self):
        pattern, probability = pattern_conditioned(GRID, 0.0, "plus")
        assert probability == pytest.approx(0.5, abs=1e-12)
        top = np.max(pattern.probabilities)
        for m in (-2, -1, 0, 1):
            assert pattern.probabilities[bin_at(m * W)] == pytest.approx(top, abs=1e-12)

    def test_minus_branch_is_shifted_half_fringe(self):
        plus, _ = pattern_conditioned(GRID, 0.0, "plus")
        minus, _ = pattern_conditioned(GRID, 0.0, "minus")
        assert np.max(
            np.abs(minus.probabilities - np.roll(plus.probabilities, BINS_PER_FRINGE // 2))
        ) < 1e-12

    def test_quarter_turn_shifts_quarter_fringe(self):
        base, _ = pattern_conditioned(GRID, 0.0, "plus")
        shifted, _ = pattern_conditioned(GRID, math.pi / 4, "plus")
        lag = BINS_PER_FRINGE // 4  # theta * w / pi = w / 4
        assert np.max(
            np.abs(shifted.probabilities - np.roll(base.probabilities, lag))
        ) < 1e-12
        # cross-correlation peak lands on the same lag
        correlations = [
            float(np.dot(shifted.probabilities, np.roll(base.probabilities, k)))
            for k in range(GRID.bins)
        ]
        assert int(np.argmax(correlations)) == lag

    def test_shift_property_bin_exact_for_integer_shifts(self):
        base, _ = pattern_conditioned(GRID, 0.0, "plus")
        for m in (1, 5, 64):
            theta = m * math.pi * GRID.dx / W
            shifted, _ = pattern_conditioned(GRID, theta, "plus")
            assert np.max(
                np.abs(shifted.probabilities - np.roll(base.probabilities, m))
            ) < 1e-12

    def test_conditioned_matches_closed_form(self):
        geo = GRID.geometry
        for theta in (0.0, 0.3, 2.2):
            for sign, direction in (("plus", +1), ("minus", -1)):
                pattern, probability = pattern_conditioned(GRID, theta, sign)
                joint = np.array(
                    conditioned_screen_joint(
                        GRID.positions, GRID.envelope, GRID.dx,
                        geo.d, geo.wavelength, geo.L, theta, direction,
                    )
                )
                assert abs(probability - joint.sum()) < 1e-12
                assert np.max(np.abs(pattern.probabilities - joint / joint.sum())) < 1e-12

    def test_branch_probabilities_are_half(self):
        for theta in np.linspace(0.0, math.pi, 8, endpoint=False):
            _, p_plus = pattern_conditioned(GRID, float(theta), "plus")
            _, p_minus = pattern_conditioned(GRID, float(theta), "minus")
            assert p_plus == pytest.approx(0.5, abs=1e-12)
            assert p_minus == pytest.approx(0.5, abs=1e-12)

    def test_non_finite_theta_rejected(self):
        with pytest.raises(NonFinitePhaseError):
            pattern_conditioned(GRID, float("inf"), "plus")
        with pytest.raises(ValueError):
            pattern_conditioned(GRID, 0.0, "sideways")


class TestDelayedMode:
    def test_center_bin_gives_dplus(self):
        result = delayed_marker_state_at(GRID, bin_at(0.0))
        assert result.theta_x == 0.0
        assert np.allclose(result.marker_state.vector, [SQ, SQ], atol=1e-12)
        assert result.fidelity_dplus_thetax == pytest.approx(1.0, abs=1e-12)

    def test_half_fringe_bin_is_orthogonal_to_plain_dplus(self):
        result = delayed_marker_state_at(GRID, bin_at(W / 2))
        assert result.theta_x == pytest.approx(math.pi / 2, abs=1e-12)
        # |<plus(0)|plus(pi/2)>|^2 = cos^2(pi/2) = 0
        overlap = erasure_basis(0.0).plus.squared_overlap(result.marker_state)
        assert overlap == pytest.approx(math.cos(math.pi / 2) ** 2, abs=1e-12)
        assert overlap < 1e-12
        minus_overlap = erasure_basis(0.0).minus.squared_overlap(result.marker_state)
        assert minus_overlap == pytest.approx(1.0, abs=1e-12)

    def test_every_bin_reaches_definite_state(self):
        for k in range(GRID.bins):
            result = delayed_marker_state_at(GRID, k)
            assert abs(result.fidelity_dplus_thetax - 1.0) < 1e-12
            vec = result.marker_state.vector
            rho = core.DensityOperator(np.outer(vec, vec.conj()))
            assert abs(core.purity(rho) - 1.0) < 1e-12

    def test_zero_envelope_bin_rejected(self):
        env = np.ones(512)
        env[:256] = 0.0
        env = env / math.sqrt(float(np.sum(env**2)) * GRID.dx)
        grid = ScreenGrid(GRID.geometry, GRID.positions, GRID.theta_x, env)
        with pytest.raises(ZeroProbabilityError):
            delayed_marker_state_at(grid, 0)

    def test_bin_index_bounds(self):
        with pytest.raises(IndexOutOfRangeError):
            delayed_marker_state_at(GRID, -1)
        with pytest.raises(IndexOutOfRangeError):
            delayed_marker_state_at(GRID, 512)


class TestVisibility:
    def test_full_contrast_without_marker(self):
        assert abs(visibility(pattern_no_marker(GRID)) - 1.0) < 1e-9

    def test_zero_contrast_when_marked(self):
        assert visibility(pattern_marked_unconditioned(GRID)) < 1e-12

    def test_full_contrast_when_conditioned(self):
        for theta in np.linspace(0.0, math.pi, 32, endpoint=False):
            pattern, _ = pattern_conditioned(GRID, float(theta), "plus")
            assert abs(visibility(pattern) - 1.0) < 1e-9

    def test_gaussian_envelope_correction(self):
        grid = build_grid(default_geometry(), "gaussian", sigma=400.0)
        pattern, _ = pattern_conditioned(grid, 0.0, "plus")
        assert abs(visibility(pattern) - 1.0) < 1e-9
        # the envelope correction is what makes a pure gaussian read as flat
        washed = pattern_marked_unconditioned(grid)
        assert visibility(washed) < 1e-12
        assert visibility(washed, envelope_corrected=False) > 0.5

    def test_doubling_bins_leaves_visibility_fixed(self):
        geometry = default_geometry()
        doubled = ScreenGeometry(
            geometry.d, geometry.wavelength, geometry.L,
            geometry.x_min, geometry.x_max, geometry.bins * 2,
        )
        coarse, _ = pattern_conditioned(build_grid(geometry), 0.0, "plus")
        fine, _ = pattern_conditioned(build_grid(doubled), 0.0, "plus")
        assert abs(visibility(coarse) - visibility(fine)) < 1e-6


class TestOrdering:
    def test_screen_ordering_invariance(self):
        state = marked_state(GRID)
        residual = analysis.ordering_invariance_residual(state, erasure_basis(0.7))
        assert residual < 1e-12
