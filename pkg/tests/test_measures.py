import math

import numpy as np
import pytest

from gl3hecke import klpoly, measures
from gl3hecke.measures import (
    EnvelopeError,
    MeasureSpec,
    PoleError,
    QuadratureGrid,
    SpectralPoint,
    TorusPoint,
    WeightParams,
    density,
    h_T_eval,
    integrate,
    sample,
    sample_angles,
    spec_density,
    weyl_poincare,
)

ST = MeasureSpec.sato_tate()


class TestDensity:
    def test_sato_tate_vanishes_at_coincident_angles(self):
        assert density(ST, TorusPoint(0.0, 0.0)) == 0.0

    def test_plancherel_vanishes_at_coincident_angles(self):
        assert density(MeasureSpec.plancherel(3), TorusPoint(0.0, 0.0)) == pytest.approx(0.0)

    def test_sato_tate_regular_point(self):
        # all three pairwise squared distances equal 3
        val = density(ST, TorusPoint(2 * math.pi / 3, -2 * math.pi / 3))
        assert val == pytest.approx(27.0 / (24.0 * math.pi ** 2), rel=1e-12)

    def test_weyl_invariance(self):
        t1, t2 = 0.7, 2.9
        t3 = -(t1 + t2)
        angles = (t1, t2, t3)
        for spec in (ST, MeasureSpec.plancherel(5)):
            base = density(spec, TorusPoint(t1, t2))
            for sigma, _ in klpoly.WEYL:
                perm = density(spec, TorusPoint(angles[sigma[0]], angles[sigma[1]]))
                assert abs(perm - base) <= 1e-12

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            MeasureSpec.plancherel(4)
        with pytest.raises(ValueError):
            MeasureSpec("plancherel")
        with pytest.raises(ValueError):
            MeasureSpec("sato-tate", 5)


class TestIntegrate:
    def test_sato_tate_is_probability_measure(self):
        val = integrate(ST, lambda pt: 1.0, QuadratureGrid(64))
        assert abs(val - 1.0) <= 1e-10

    def test_plancherel_masses(self):
        grid = QuadratureGrid(64)
        for p in (2, 3, 5, 7, 101):
            val = integrate(MeasureSpec.plancherel(p), lambda pt: 1.0, grid)
            assert abs(val - 1.0) <= 1e-8

    def test_schur_normalization(self):
        f = lambda pt: abs(measures.schur_on_torus(1, 0, pt.theta1, pt.theta2)) ** 2
        v64 = integrate(ST, f, QuadratureGrid(64))
        v128 = integrate(ST, f, QuadratureGrid(128))
        assert abs(v64 - 1.0) <= 1e-8
        assert abs(v64 - v128) <= 1e-10

    def test_schur_orthonormality(self):
        grid = QuadratureGrid(64)
        pairs = [(a, b) for a in range(3) for b in range(3)]
        for a, b in pairs:
            for c, d in pairs:
                f = lambda pt: measures.schur_on_torus(
                    a, b, pt.theta1, pt.theta2
                ) * np.conj(measures.schur_on_torus(c, d, pt.theta1, pt.theta2))
                val = integrate(ST, f, grid)
                expect = 1.0 if (a, b) == (c, d) else 0.0
                assert abs(val - expect) <= 1e-7

    def test_scalar_only_integrand_falls_back(self):
        # a callable that rejects array input still integrates correctly
        def f(pt):
            if not isinstance(pt.theta1, float):
                raise TypeError("scalar only")
            return 1.0

        val = integrate(ST, f, QuadratureGrid(16))
        assert abs(val - 1.0) <= 1e-10

    def test_grid_validation_and_weights(self):
        with pytest.raises(ValueError):
            QuadratureGrid(4)
        g = QuadratureGrid(16)
        assert g.cell_weight * g.resolution ** 2 == pytest.approx((2 * math.pi) ** 2)

    def test_adaptive_doubling_converges(self):
        val, k = measures.integrate_adaptive(ST, lambda pt: 1.0, tol=1e-10)
        assert abs(val - 1.0) <= 1e-10
        assert k <= 256

    def test_adaptive_raises_past_cap(self):
        # an integrand quadrature cannot stabilize on: white-noise-like values
        rng = np.random.default_rng(1)

        def f(pt):
            return float(rng.uniform(-1.0, 1.0))

        with pytest.raises(measures.QuadratureError):
            measures.integrate_adaptive(ST, f, tol=1e-14, start_resolution=8,
                                        max_resolution=16)


class TestSampling:
    def test_same_seed_identical(self):
        a = sample(MeasureSpec.plancherel(5), 500, seed=11)
        b = sample(MeasureSpec.plancherel(5), 500, seed=11)
        assert a == b

    def test_count_validation(self):
        with pytest.raises(ValueError):
            sample(ST, 0, seed=1)

    def test_plancherel_mean_matches_exact_moment(self):
        # mean of S_{1,1} under the p = 5 measure is 1/5 + 1/25
        t1, t2 = sample_angles(MeasureSpec.plancherel(5), 100_000, seed=5)
        vals = np.abs(np.exp(1j * t1) + np.exp(1j * t2) + np.exp(-1j * (t1 + t2))) ** 2 - 1.0
        stderr = float(np.std(vals)) / math.sqrt(len(vals))
        assert abs(float(np.mean(vals)) - 0.24) <= 3.0 * stderr

    def test_sato_tate_mean_of_standard_character(self):
        t1, t2 = sample_angles(ST, 100_000, seed=9)
        vals = np.exp(1j * t1) + np.exp(1j * t2) + np.exp(-1j * (t1 + t2))
        stderr = float(np.std(vals)) / math.sqrt(len(vals))
        assert abs(complex(np.mean(vals))) <= 3.0 * stderr

    def test_density_never_exceeds_envelope(self):
        k = 600
        nodes = 2 * math.pi * (np.arange(k) + 0.5) / k
        g1, g2 = np.meshgrid(nodes, nodes, indexing="ij")
        pt = TorusPoint(g1, g2)
        for spec in (ST, MeasureSpec.plancherel(2), MeasureSpec.plancherel(5),
                     MeasureSpec.plancherel(101)):
            cap = measures.envelope_ratio(spec) / (2 * math.pi) ** 2
            assert float(np.max(density(spec, pt))) <= cap * (1 + 1e-12)

    def test_sampler_ks_distance_against_quadrature_cdf(self):
        # one-sample Kolmogorov-Smirnov against the quadrature CDF of S_{1,1}
        p = 5
        t1, t2 = sample_angles(MeasureSpec.plancherel(p), 100_000, seed=123)
        vals = np.sort(
            np.abs(np.exp(1j * t1) + np.exp(1j * t2) + np.exp(-1j * (t1 + t2))) ** 2 - 1.0
        )
        k = 1024
        nodes = 2 * math.pi * (np.arange(k) + 0.5) / k
        g1, g2 = np.meshgrid(nodes, nodes, indexing="ij")
        s11 = np.abs(np.exp(1j * g1) + np.exp(1j * g2) + np.exp(-1j * (g1 + g2))) ** 2 - 1.0
        w = density(MeasureSpec.plancherel(p), TorusPoint(g1, g2)) * (2 * math.pi / k) ** 2
        order = np.argsort(s11.ravel())
        support = s11.ravel()[order]
        cdf = np.cumsum(w.ravel()[order])
        f_at_samples = np.interp(vals, support, cdf)
        n = len(vals)
        emp_hi = np.arange(1, n + 1) / n
        emp_lo = np.arange(0, n) / n
        ks = max(float(np.max(np.abs(emp_hi - f_at_samples))),
                 float(np.max(np.abs(emp_lo - f_at_samples))))
        assert ks <= 0.01

    def test_child_seed_is_deterministic_and_spread(self):
        seeds = {measures.child_seed(7, i) for i in range(16)}
        assert len(seeds) == 16
        assert measures.child_seed(7, 3) == measures.child_seed(7, 3)

    def test_chunked_sampling_is_deterministic(self):
        a1, a2 = measures.sample_chunked(MeasureSpec.plancherel(3), 1000, 5, chunks=4)
        b1, b2 = measures.sample_chunked(MeasureSpec.plancherel(3), 1000, 5, chunks=4)
        assert np.array_equal(a1, b1) and np.array_equal(a2, b2)
        assert len(a1) == 1000


class TestWeylPoincare:
    def test_at_zero_and_one(self):
        assert weyl_poincare(0) == 1
        assert weyl_poincare(1) == 6

    def test_formal_coefficients(self):
        assert weyl_poincare().coeffs == (1, 2, 2, 1)


class TestWeightFunction:
    def params(self, T=200.0):
        nu0 = SpectralPoint(0.3j, 0.45j)
        return WeightParams(T=T, nu0=nu0)

    def test_non_negative_on_tempered_points(self):
        params = self.params()
        for t1, t2 in ((0.1, 0.2), (30.0, 61.0), (55.0, 91.0), (-20.0, 13.0)):
            val = h_T_eval(SpectralPoint(1j * t1, 1j * t2), params)
            assert isinstance(val, float)
            assert val >= 0.0

    def test_weyl_invariance(self):
        params = self.params()
        nu = SpectralPoint(17.0j, 41.0j)
        base = h_T_eval(nu, params)
        alpha = nu.langlands()
        for sigma, _ in klpoly.WEYL:
            perm = (alpha[sigma[0]], alpha[sigma[1]], alpha[sigma[2]])
            # recover (nu1', nu2') from the permuted Langlands triple
            nu1p = (perm[0] - perm[1]) / 3.0
            nu2p = (perm[1] - perm[2]) / 3.0
            val = h_T_eval(SpectralPoint(nu1p, nu2p), params)
            assert val == pytest.approx(base, rel=1e-9)

    def test_gaussian_decay_off_window(self):
        params = self.params(T=200.0)
        center = params.nu0
        peak = h_T_eval(SpectralPoint(params.T * center.nu1, params.T * center.nu2), params)
        scale = params.T ** (1.0 - params.eta)
        # displace by 10 window widths along nu1
        shift = SpectralPoint(params.T * center.nu1 + 10j * scale, params.T * center.nu2)
        assert h_T_eval(shift, params) <= 1e-6 * peak

    def test_param_validation(self):
        nu0 = SpectralPoint(0.3j, 0.45j)
        with pytest.raises(ValueError):
            WeightParams(T=0.5, nu0=nu0)
        with pytest.raises(ValueError):
            WeightParams(T=10.0, nu0=nu0, eta=0.5)
        with pytest.raises(ValueError):
            WeightParams(T=10.0, nu0=SpectralPoint(0.3 + 0.1j, 0.2j))


class TestSpectralDensity:
    def test_permutation_invariance(self):
        nu = SpectralPoint(0.7j, 2.1j)
        base = spec_density(nu)
        alpha = nu.triple()
        for sigma, _ in klpoly.WEYL:
            tri = (alpha[sigma[0]], alpha[sigma[1]], alpha[sigma[2]])
            val = spec_density(SpectralPoint(tri[0], tri[1]))
            assert val == pytest.approx(base, rel=1e-12)

    def test_frozen_regression_value(self):
        # second transcription: purely imaginary nu = (i t1, i t2) turns each
        # factor into 3 t tanh(3 pi t / 2)
        got = spec_density(SpectralPoint(1j, 1j))
        t = (1.0, 1.0, -2.0)
        expected = 3.0 / (256.0 * math.pi ** 5)
        for tj in t:
            expected *= 3.0 * tj * math.tanh(1.5 * math.pi * tj)
        assert got.imag == pytest.approx(0.0, abs=1e-18)
        assert got.real == pytest.approx(expected, rel=1e-13)
        assert got.real == pytest.approx(0.002067214252950767, rel=1e-12)
        assert got.real > 0.0

    def test_pole_error(self):
        with pytest.raises(PoleError):
            spec_density(SpectralPoint(1.0 / 3.0 + 0j, 2.0j))

    def test_nu3_consistency(self):
        nu = SpectralPoint(0.25j, 0.5j)
        assert nu.nu3 == -nu.nu1 - nu.nu2
        assert sum(nu.langlands()) == 0


class TestEnvelopeGuard:
    def test_buggy_envelope_detected(self, monkeypatch):
        monkeypatch.setattr(measures, "envelope_ratio", lambda spec: 0.5)
        with pytest.raises(EnvelopeError):
            sample(ST, 100, seed=2)
