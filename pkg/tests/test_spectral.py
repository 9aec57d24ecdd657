"""Tests for spectral overlaps, closed forms, Schmidt sums and delay scans."""

import numpy as np
import pytest

from loolsim.spectral import (
    InterferenceSource,
    JointSpectralAmplitude,
    SpectralModel,
    coincidence_prob_entangled,
    coincidence_prob_gauss,
    coincidence_prob_schmidt,
    coincidence_prob_separable,
    coincidence_prob_sinc,
    hom_scan,
    schmidt_decompose,
    tau_grid,
    two_photon_coherence,
    visibility,
)
from loolsim.utils.errors import (
    DimensionMismatchError,
    EmptyRangeError,
    NumericalDomainError,
    UnnormalizedModelError,
)

TAUS = np.linspace(-5.0, 5.0, 100)
OMEGA = np.linspace(-10.0, 10.0, 64)


def random_low_rank_jsa(rng, rank):
    """Sum of ``rank`` products of randomly placed Gaussians."""
    amplitudes = np.zeros((OMEGA.size, OMEGA.size), dtype=complex)
    for _ in range(rank):
        phi = SpectralModel.gaussian(rng.uniform(0.8, 1.6), rng.uniform(-2.0, 2.0))
        chi = SpectralModel.gaussian(rng.uniform(0.8, 1.6), rng.uniform(-2.0, 2.0))
        weight = rng.normal() + 1j * rng.normal()
        amplitudes += weight * np.outer(phi(OMEGA), chi(OMEGA))
    return JointSpectralAmplitude(OMEGA, amplitudes).normalized()


class TestSeparable:
    """Test the separable-photon coincidence probability."""

    def test_identical_gaussians_bunch(self):
        """Test p = 0 at zero delay."""
        g = SpectralModel.gaussian(1.0)
        assert coincidence_prob_separable(g, g, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_large_delay_is_half(self):
        """Test p = 1/2 once the wave packets no longer overlap."""
        g = SpectralModel.gaussian(1.0)
        assert coincidence_prob_separable(g, g, 50.0) == pytest.approx(0.5, abs=1e-10)

    def test_mismatched_gaussians(self):
        """Test quadrature against the closed form for different widths and means."""
        phi, chi = SpectralModel.gaussian(1.0, 0.0), SpectralModel.gaussian(2.0, 0.5)
        expected = coincidence_prob_gauss(1.0, 2.0, 0.0, 0.5, 0.3)
        assert coincidence_prob_separable(phi, chi, 0.3) == pytest.approx(expected, abs=1e-8)

    def test_gauss_closed_form_on_grid(self):
        """Test the Gaussian closed form at 100 delays."""
        phi, chi = SpectralModel.gaussian(1.0, 0.0), SpectralModel.gaussian(1.5, 0.3)
        closed = coincidence_prob_gauss(1.0, 1.5, 0.0, 0.3, TAUS)
        numeric = np.array([coincidence_prob_separable(phi, chi, t) for t in TAUS])
        np.testing.assert_allclose(numeric, closed, atol=1e-6)

    def test_sinc_closed_form_on_grid(self):
        """Test the sinc closed form at 100 delays."""
        s = SpectralModel.sinc(1.0)
        taus = np.linspace(-3.0, 3.0, 100)
        closed = coincidence_prob_sinc(1.0, taus)
        numeric = np.array([coincidence_prob_separable(s, s, t) for t in taus])
        np.testing.assert_allclose(numeric, closed, atol=1e-6)

    def test_unnormalized_grid_rejected(self):
        """Test the normalization precondition."""
        bad = SpectralModel.grid(OMEGA, 2.0 * SpectralModel.gaussian(1.0)(OMEGA))
        good = SpectralModel.gaussian(1.0)
        with pytest.raises(UnnormalizedModelError):
            coincidence_prob_separable(bad, good, 0.0)

    def test_grid_axes_must_agree(self):
        """Test two grids on different axes."""
        first = SpectralModel.grid(OMEGA, SpectralModel.gaussian(1.0)(OMEGA), normalize=True)
        other = np.linspace(-8.0, 8.0, 50)
        second = SpectralModel.grid(other, SpectralModel.gaussian(1.0)(other), normalize=True)
        with pytest.raises(DimensionMismatchError):
            coincidence_prob_separable(first, second, 0.0)

    def test_even_and_bounded(self):
        """Test symmetry in tau and the [0, 1/2] range."""
        phi, chi = SpectralModel.gaussian(1.2, 0.1), SpectralModel.gaussian(0.9, -0.2)
        for tau in np.linspace(0.0, 4.0, 9):
            forward = coincidence_prob_separable(phi, chi, tau)
            backward = coincidence_prob_separable(phi, chi, -tau)
            assert forward == pytest.approx(backward, abs=1e-10)
            assert -1e-12 <= forward <= 0.5 + 1e-12


class TestClosedForms:
    """Test the closed-form expressions directly."""

    def test_gauss_equal_parameters(self):
        """Test the equal-Gaussian reduction."""
        sigma = 1.3
        for tau in (0.0, 0.4, 2.0):
            expected = 0.5 - 0.5 * np.exp(-(sigma**2) * tau**2 / 2)
            assert coincidence_prob_gauss(sigma, sigma, 0.0, 0.0, tau) == pytest.approx(expected)

    def test_gauss_detuned_floor(self):
        """Test the dip floor for detuned means."""
        delta, sigma = 0.7, 1.0
        expected = 0.5 - 0.5 * np.exp(-(delta**2) / (2 * sigma**2))
        assert coincidence_prob_gauss(sigma, sigma, 0.0, delta, 0.0) == pytest.approx(expected)

    def test_gauss_accepts_arrays(self):
        """Test vectorized evaluation."""
        values = coincidence_prob_gauss(1.0, 1.0, 0.0, 0.0, np.array([0.0, 1.0]))
        assert values.shape == (2,)

    def test_sinc_values(self):
        """Test the triangular dip."""
        width = 1.5
        assert coincidence_prob_sinc(width, 0.0) == pytest.approx(0.0)
        assert coincidence_prob_sinc(width, width) == pytest.approx(3 / 8)
        assert coincidence_prob_sinc(width, 2 * width) == pytest.approx(0.5)
        assert coincidence_prob_sinc(width, -7.0) == pytest.approx(0.5)

    def test_non_positive_widths(self):
        """Test domain errors."""
        with pytest.raises(NumericalDomainError):
            coincidence_prob_gauss(0.0, 1.0, 0.0, 0.0, 0.0)
        with pytest.raises(NumericalDomainError):
            coincidence_prob_sinc(-1.0, 0.0)
        with pytest.raises(NumericalDomainError):
            SpectralModel.gaussian(-1.0)


class TestEntangled:
    """Test joint spectral amplitudes and their Schmidt decompositions."""

    def test_symmetric_product_bunches(self):
        """Test p = 0 at zero delay for a symmetric product JSA."""
        g = SpectralModel.gaussian(1.0)
        jsa = JointSpectralAmplitude.product(g, g, OMEGA)
        assert coincidence_prob_entangled(jsa, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_product_matches_separable(self):
        """Test that a product JSA reproduces the separable closed form."""
        g = SpectralModel.gaussian(1.0)
        jsa = JointSpectralAmplitude.product(g, g, np.linspace(-10.0, 10.0, 256))
        for tau in (0.5, 1.0, 2.0):
            expected = coincidence_prob_gauss(1.0, 1.0, 0.0, 0.0, tau)
            assert coincidence_prob_entangled(jsa, tau) == pytest.approx(expected, abs=1e-6)

    def test_antisymmetric_antibunches(self):
        """Test p = 1 at zero delay for an exchange-antisymmetric JSA."""
        phi, chi = SpectralModel.gaussian(1.0, -1.5), SpectralModel.gaussian(1.0, 1.5)
        jsa = JointSpectralAmplitude.antisymmetric(phi, chi, OMEGA)
        np.testing.assert_allclose(jsa.amplitudes, -jsa.amplitudes.T)
        assert coincidence_prob_entangled(jsa, 0.0) == pytest.approx(1.0, abs=1e-6)

    def test_antisymmetric_swap_flips_sign(self):
        """Test exchange of the two photons for an antisymmetric JSA."""
        phi, chi = SpectralModel.gaussian(1.0, -1.5), SpectralModel.gaussian(1.0, 1.5)
        jsa = JointSpectralAmplitude.antisymmetric(phi, chi, OMEGA)
        np.testing.assert_allclose(jsa.swapped().amplitudes, -jsa.amplitudes)

    def test_schmidt_mode_pairs(self):
        """Test that each Schmidt mode pair holds unit-norm spectral models."""
        decomposition = schmidt_decompose(random_low_rank_jsa(np.random.default_rng(4), 3))
        pairs = decomposition.mode_pairs
        assert len(pairs) == decomposition.rank
        for first, second in pairs:
            assert first.norm_squared() == pytest.approx(1.0, abs=1e-6)
            assert second.norm_squared() == pytest.approx(1.0, abs=1e-6)

    def test_unnormalized_jsa_rejected(self):
        """Test the normalization precondition."""
        jsa = JointSpectralAmplitude(OMEGA, np.ones((64, 64)))
        with pytest.raises(UnnormalizedModelError):
            coincidence_prob_entangled(jsa, 0.0)

    def test_non_square_grid_rejected(self):
        """Test the grid shape check."""
        with pytest.raises(DimensionMismatchError):
            JointSpectralAmplitude(OMEGA, np.ones((64, 32)))

    def test_schmidt_sum_matches_direct(self):
        """Test the Schmidt-sum form on five random rank-4 JSAs."""
        rng = np.random.default_rng(11)
        for _ in range(5):
            jsa = random_low_rank_jsa(rng, 4)
            decomposition = schmidt_decompose(jsa)
            for tau in (-2.0, 0.0, 0.7, 3.0):
                direct = coincidence_prob_entangled(jsa, tau)
                assert coincidence_prob_schmidt(decomposition, tau) == pytest.approx(
                    direct, abs=1e-6
                )

    def test_schmidt_truncated_to_rank(self):
        """Test that a rank-4 JSA loses nothing when cut at four terms."""
        jsa = random_low_rank_jsa(np.random.default_rng(5), 4)
        decomposition = schmidt_decompose(jsa, rank_cutoff=4)
        assert decomposition.rank == 4
        assert decomposition.truncation_weight < 1e-12
        direct = coincidence_prob_entangled(jsa, 0.4)
        assert coincidence_prob_schmidt(decomposition, 0.4) == pytest.approx(direct, abs=1e-6)

    def test_schmidt_modes_orthonormal(self):
        """Test coefficient normalization and mode orthonormality."""
        jsa = random_low_rank_jsa(np.random.default_rng(2), 3)
        decomposition = schmidt_decompose(jsa)
        weights = jsa.weights
        assert np.sum(decomposition.coefficients**2) == pytest.approx(1.0, abs=1e-6)
        for modes in (decomposition.first_modes, decomposition.second_modes):
            gram = modes.conj().T @ (weights[:, None] * modes)
            np.testing.assert_allclose(gram, np.eye(gram.shape[0]), atol=1e-6)

    def test_schmidt_reconstruction(self):
        """Test the full-rank round trip."""
        jsa = random_low_rank_jsa(np.random.default_rng(8), 2)
        rebuilt = schmidt_decompose(jsa).reconstruct()
        np.testing.assert_allclose(rebuilt.amplitudes, jsa.amplitudes, atol=1e-6)

    def test_product_has_single_mode(self):
        """Test Schmidt number 1 for a product JSA."""
        g = SpectralModel.gaussian(1.0)
        decomposition = schmidt_decompose(JointSpectralAmplitude.product(g, g, OMEGA))
        assert decomposition.coefficients[0] == pytest.approx(1.0, abs=1e-6)
        assert decomposition.schmidt_number == pytest.approx(1.0, abs=1e-6)

    def test_double_gaussian_geometric_spectrum(self):
        """Test u_{k+1}/u_k = (s- - s+)/(s- + s+) and the Schmidt number."""
        jsa = JointSpectralAmplitude.double_gaussian(1.0, 3.0)
        u = schmidt_decompose(jsa).coefficients
        np.testing.assert_allclose(u[1:4] / u[:3], 0.5, atol=1e-3)
        assert schmidt_decompose(jsa).schmidt_number == pytest.approx(5 / 3, abs=1e-3)

    def test_equal_widths_give_product(self):
        """Test that equal pump and phase-matching widths factorize."""
        jsa = JointSpectralAmplitude.double_gaussian(2.0, 2.0)
        assert schmidt_decompose(jsa).schmidt_number == pytest.approx(1.0, abs=1e-6)


class TestScans:
    """Test delay grids, visibilities and scans."""

    def test_tau_grid(self):
        """Test the uniform delay axis and its errors."""
        np.testing.assert_allclose(tau_grid((-1.0, 1.0), 5), [-1.0, -0.5, 0.0, 0.5, 1.0])
        with pytest.raises(EmptyRangeError):
            tau_grid((-1.0, 1.0), 2)
        with pytest.raises(EmptyRangeError):
            tau_grid((1.0, 1.0), 10)

    def test_gaussian_dip(self):
        """Test an ideal Gaussian dip: visibility 1."""
        result = hom_scan(InterferenceSource.identical(SpectralModel.gaussian(1.0)), (-5, 5), 101)
        assert result.visibility.kind == "dip"
        assert result.visibility.value == pytest.approx(1.0, abs=1e-4)
        np.testing.assert_allclose(result.probability, result.probability[::-1], atol=1e-10)

    def test_partial_overlap_lowers_visibility(self):
        """Test that a spatial overlap below one gives visibility below one."""
        source = InterferenceSource.identical(SpectralModel.gaussian(1.0), mode_overlap=0.85)
        result = hom_scan(source, (-5, 5), 101)
        assert result.visibility.value < 1.0
        assert result.visibility.value == pytest.approx(0.85, abs=1e-4)

    def test_sinc_dip(self):
        """Test the triangular sinc dip."""
        result = hom_scan(InterferenceSource.identical(SpectralModel.sinc(1.0)), (-4, 4), 81)
        assert result.visibility.value == pytest.approx(1.0, abs=1e-6)
        closed = coincidence_prob_sinc(1.0, result.tau)
        np.testing.assert_allclose(result.probability, closed, atol=1e-6)

    def test_antisymmetric_bump(self):
        """Test that an antisymmetric JSA produces a bump."""
        phi, chi = SpectralModel.gaussian(1.0, -1.5), SpectralModel.gaussian(1.0, 1.5)
        source = InterferenceSource(jsa=JointSpectralAmplitude.antisymmetric(phi, chi, OMEGA))
        result = hom_scan(source, (-5, 5), 41)
        assert result.visibility.kind == "bump"
        assert result.visibility.extremum == pytest.approx(1.0, abs=1e-6)
        assert result.visibility.value == pytest.approx(1.0, abs=1e-3)

    def test_visibility_baseline(self):
        """Test the outermost-tenth baseline."""
        tau = np.linspace(-1, 1, 20)
        probability = np.full(20, 0.4)
        probability[10] = 0.1
        vis = visibility(tau, probability)
        assert vis.baseline == pytest.approx(0.4)
        assert vis.value == pytest.approx(0.75)

    def test_coherence(self):
        """Test gamma(0) = eta and gamma(inf) = 0."""
        source = InterferenceSource.identical(SpectralModel.gaussian(1.0), mode_overlap=0.9)
        assert two_photon_coherence(source, 0.0) == pytest.approx(0.9, abs=1e-10)
        assert two_photon_coherence(source, 50.0) == pytest.approx(0.0, abs=1e-10)

    def test_source_needs_one_description(self):
        """Test rejection of ambiguous sources."""
        g = SpectralModel.gaussian(1.0)
        with pytest.raises(NumericalDomainError):
            InterferenceSource()
        with pytest.raises(NumericalDomainError):
            InterferenceSource.identical(g, mode_overlap=1.2)
