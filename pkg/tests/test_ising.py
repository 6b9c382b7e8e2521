import math

import numpy as np
import pytest

from oracles import kron_ising_hamiltonian
from statetexture import (ChainSpec, ResourceLimitError, UsageError,
                          analytic_rugosity, bogoliubov_modes,
                          dispersion_ground_energy, ed_ground, ed_ground_state,
                          ed_pair_observables, ed_rugosity, pair_observables,
                          partial_trace, reduced_pair_state, rugosity_pure, scan)


class TestChainSpec:
    def test_odd_site_count_rejected(self):
        with pytest.raises(UsageError):
            ChainSpec(5, 1.0)

    def test_open_boundary_rejected(self):
        with pytest.raises(UsageError):
            ChainSpec(4, 1.0, boundary="open")

    def test_analytic_requires_zero_g(self):
        with pytest.raises(UsageError):
            analytic_rugosity(ChainSpec(4, 1.0, g=0.5))

    def test_ed_size_limit(self):
        with pytest.raises(ResourceLimitError):
            ed_ground_state(ChainSpec(22, 1.0))


class TestBogoliubovModes:
    def test_momenta_and_flat_dispersion_at_zero_field(self):
        modes = bogoliubov_modes(ChainSpec(4, 0.0))
        assert np.allclose([m.phi for m in modes], [np.pi / 4, 3 * np.pi / 4], atol=1e-15)
        assert np.allclose([m.lam for m in modes], [1.0, 1.0], atol=1e-14)

    @pytest.mark.parametrize("h", [0.0, 0.2, 1.0, 1.5, 3.0, 50.0])
    @pytest.mark.parametrize("n", [4, 12, 64])
    def test_angle_norm_and_domain(self, n, h):
        for mode in bogoliubov_modes(ChainSpec(n, h)):
            assert abs(mode.u ** 2 + mode.v_im ** 2 - 1.0) < 1e-12
            # the arccos argument, reconstructed; must sit inside [-1, 1]
            delta = math.cos(mode.phi) - h
            arg = (delta - mode.lam) / math.sqrt(2 * mode.lam * (mode.lam - delta))
            assert -1.0 - 1e-9 <= arg <= 1.0 + 1e-9
            assert math.pi / 2 <= mode.theta <= math.pi + 1e-12


class TestAnalyticRugosity:
    def test_strong_field_plateau(self):
        spec = ChainSpec(512, 50.0)
        assert abs(analytic_rugosity(spec) / 512 - math.log(2)) / math.log(2) < 0.02

    def test_zero_field_value(self):
        # even-parity ground state at h = 0 overlaps the uniform state at 1/2
        assert abs(analytic_rugosity(ChainSpec(512, 0.0)) - math.log(2)) < 1e-9
        assert analytic_rugosity(ChainSpec(512, 0.0)) / 512 <= math.log(2) / 512 + 1e-6

    @pytest.mark.parametrize("h", [0.2, 0.5, 1.0, 1.5, 3.0])
    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_matches_ed(self, n, h):
        spec = ChainSpec(n, h)
        assert abs(analytic_rugosity(spec) - ed_rugosity(spec)) < 1e-8

    def test_even_in_h(self):
        for n in (8, 512):
            for h in (0.3, 1.0, 1.7):
                diff = abs(analytic_rugosity(ChainSpec(n, h))
                           - analytic_rugosity(ChainSpec(n, -h)))
                assert diff < 1e-9


class TestPairObservables:
    def test_strong_field_limit(self):
        obs = pair_observables(ChainSpec(512, 50.0))
        assert abs(obs.c_xx) < 0.02
        assert abs(obs.pair_rugosity - math.log(4)) / math.log(4) < 0.02
        assert obs.m_z > 0.99

    @pytest.mark.parametrize("h", [0.2, 1.0, 3.0])
    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_matches_ed_partial_trace(self, n, h):
        ana = pair_observables(ChainSpec(n, h))
        ed = ed_pair_observables(ChainSpec(n, h))
        assert abs(ana.m_z - ed.m_z) < 1e-8
        assert abs(ana.c_xx - ed.c_xx) < 1e-8
        assert abs(ana.c_yy - ed.c_yy) < 1e-8
        assert abs(ana.c_zz - ed.c_zz) < 1e-8

    @pytest.mark.parametrize("h", [0.2, 1.0, 3.0])
    def test_two_rugosity_forms_agree(self, h):
        obs = pair_observables(ChainSpec(64, h))
        assert abs(obs.pair_rugosity - obs.pair_rugosity_symmetric) < 1e-10

    def test_reduced_state_is_valid(self):
        obs = pair_observables(ChainSpec(16, 0.7))
        assert obs.rho_pair.subsystem_dims == (2, 2)
        assert abs(np.trace(obs.rho_pair.matrix) - 1.0) < 1e-12


class TestEdGroundState:
    def test_two_site_ground_space(self):
        # h = g = 0: H = -sx sx (each bond counted once around the ring),
        # ground space spanned by the two symmetric Bell-like sx sx = +1 states
        res = ed_ground(ChainSpec(2, 0.0))
        assert abs(res.energy - (-1.0)) < 1e-12
        assert res.degenerate
        amp = res.state.amplitudes
        sxsx = np.zeros((4, 4))
        sxsx[0, 3] = sxsx[3, 0] = sxsx[1, 2] = sxsx[2, 1] = 1.0
        assert abs(np.real(amp @ sxsx @ amp) - 1.0) < 1e-10

    def test_strong_field_polarized(self):
        state = ed_ground_state(ChainSpec(8, 50.0))
        fidelity = abs(state.amplitudes[0]) ** 2
        assert fidelity > 0.999

    @pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
    def test_energy_matches_dispersion_sum(self, n):
        for h in (0.2, 1.0, 3.0):
            res = ed_ground(ChainSpec(n, h))
            want = dispersion_ground_energy(ChainSpec(n, h))
            assert abs(res.energy - want) <= 1e-9 * abs(want)

    def test_matches_kron_oracle(self):
        for (h, g) in [(0.7, 0.0), (0.5, 0.3), (1.2, -0.4)]:
            ham = kron_ising_hamiltonian(6, h, g)
            evals, evecs = np.linalg.eigh(ham)
            res = ed_ground(ChainSpec(6, h, g))
            assert abs(res.energy - evals[0]) < 1e-10
            overlap = abs(np.vdot(evecs[:, 0], res.state.amplitudes))
            if res.gap > 1e-8:
                assert overlap > 1.0 - 1e-9

    def test_near_degenerate_flagged_and_even(self):
        with pytest.warns(RuntimeWarning):
            res = ed_ground(ChainSpec(12, 0.2))
        assert res.degenerate
        # parity projection makes the rugosity match the analytic even state
        assert abs(rugosity_pure(res.state) - analytic_rugosity(ChainSpec(12, 0.2))) < 1e-8

    def test_canonical_sign(self):
        state = ed_ground_state(ChainSpec(6, 0.9))
        amp = state.amplitudes
        assert amp[np.argmax(np.abs(amp))].real > 0

    def test_deterministic(self):
        a = ed_ground_state(ChainSpec(12, 0.9)).amplitudes
        b = ed_ground_state(ChainSpec(12, 0.9)).amplitudes
        assert np.array_equal(a, b)


class TestEdRugosity:
    def test_negative_longitudinal_field_stays_flat(self):
        spec = ChainSpec(8, 0.5, g=-0.5)
        assert ed_rugosity(spec) / 8 < 0.02

    def test_positive_longitudinal_field_grows(self):
        base = ed_rugosity(ChainSpec(8, 0.5, g=0.0)) / 8
        plus = ed_rugosity(ChainSpec(8, 0.5, g=0.5)) / 8
        assert plus > base + 0.5
        grid = [0.2, 0.4, 0.6, 0.8, 1.0]
        vals = [ed_rugosity(ChainSpec(8, 0.5, g=g)) / 8 for g in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
    def test_matches_analytic_at_zero_g(self, n):
        for h in (0.5, 1.5):
            assert abs(ed_rugosity(ChainSpec(n, h))
                       - analytic_rugosity(ChainSpec(n, h))) < 1e-8


class TestReducedPair:
    def test_matches_partial_trace(self):
        state = ed_ground_state(ChainSpec(6, 0.8))
        ours = reduced_pair_state(state, 0).matrix
        # subsystem axis k of the packed amplitudes is chain site n-1-k
        rho = partial_trace(state.projector(), keep=[4, 5]).matrix
        assert np.max(np.abs(ours - rho)) < 1e-12

    def test_translation_invariance(self):
        state = ed_ground_state(ChainSpec(8, 1.1))
        base = reduced_pair_state(state, 0).matrix
        for site in range(1, 8):
            assert np.max(np.abs(reduced_pair_state(state, site).matrix - base)) < 1e-10


class TestScan:
    def test_grid_validation(self):
        spec = ChainSpec(8, 0.0)
        with pytest.raises(UsageError):
            scan(spec, "h", [0.0, 0.1, 0.2], method="analytic")
        with pytest.raises(UsageError):
            scan(spec, "h", [0.3, 0.2, 0.1, 0.4, 0.5], method="analytic")
        with pytest.raises(UsageError):
            scan(spec, "x", [0.1, 0.2, 0.3, 0.4, 0.5], method="analytic")

    def test_analytic_rejects_g_axis(self):
        with pytest.raises(UsageError):
            scan(ChainSpec(8, 0.5), "g", [-0.2, -0.1, 0.0, 0.1, 0.2], method="analytic")

    def test_derivative_shapes(self):
        grid = np.linspace(0.5, 1.5, 11)
        out = scan(ChainSpec(64, 0.0), "h", grid, method="analytic")
        assert out.first_derivative.size == 9
        assert out.second_derivative.size == 7
        assert out.kink_estimate is None

    def test_kink_location_h(self):
        grid = np.arange(0.0, 2.0 + 1e-12, 0.01)
        out = scan(ChainSpec(256, 0.0), "h", grid, method="analytic",
                   kink_window=(0.8, 1.2))
        assert 0.95 <= out.kink_estimate <= 1.05

    def test_kink_window_must_contain_points(self):
        grid = np.linspace(0.0, 2.0, 21)
        with pytest.raises(UsageError):
            scan(ChainSpec(64, 0.0), "h", grid, method="analytic", kink_window=(5.0, 6.0))

    def test_kink_stable_under_refinement(self):
        coarse = scan(ChainSpec(128, 0.0), "h", np.arange(0.0, 2.0 + 1e-12, 0.02),
                      method="analytic", kink_window=(0.8, 1.2))
        fine = scan(ChainSpec(128, 0.0), "h", np.arange(0.0, 2.0 + 1e-12, 0.01),
                    method="analytic", kink_window=(0.8, 1.2))
        assert abs(coarse.kink_estimate - fine.kink_estimate) <= 0.02 + 1e-12

    def test_ed_scan_over_g(self):
        grid = np.arange(-0.3, 0.3 + 1e-12, 0.1)
        out = scan(ChainSpec(6, 0.5), "g", grid, method="ed")
        assert out.points.size == 7
        assert np.all(np.isfinite(out.rugosity))

    def test_pair_observable_scan(self):
        grid = np.linspace(0.5, 1.5, 11)
        out = scan(ChainSpec(128, 0.0), "h", grid, observable="pair", method="analytic")
        want = pair_observables(ChainSpec(128, 1.0)).pair_rugosity
        k = int(np.argmin(np.abs(grid - 1.0)))
        assert abs(out.rugosity[k] - want) < 1e-12
