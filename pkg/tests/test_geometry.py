import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from footballs.elliptic import profile_height_agm
from footballs.geometry import (
    ConformalCoord,
    DegenerateError,
    DomainError,
    FootballParams,
    FundamentalForms,
    GeodesicCoord,
    ProfilePair,
    conformal_density,
    conformal_density_integer,
    conformal_from_geodesic,
    football_metric_G,
    fundamental_forms,
    gauss_curvature,
    geodesic_from_conformal,
    immerse,
    immerse_geodesic,
    mean_curvature,
    north_pole,
    profile_height,
    profile_heights,
    solve_profile,
    tangent_frame,
    twisted_profile_forms,
    wrap_angle,
)

PI = math.pi

# 2 E(k=1/2), from the AGM oracle (tests/test_elliptic.py pins it independently)
TWO_E_HALF = 2.9349244186788543

interior_u = st.floats(1e-6, PI - 1e-6)
angles = st.floats(-20.0, 20.0)
params = st.builds(FootballParams, B=st.floats(0.01, 0.99), lam=st.integers(1, 20))


class TestParams:
    def test_alpha_is_derived(self):
        p = FootballParams(0.25, 8)
        assert p.alpha == 2.0

    @pytest.mark.parametrize("B, lam", [(0.0, 1), (1.0, 1), (-0.5, 2), (0.5, 0), (0.5, 1.5)])
    def test_invalid(self, B, lam):
        with pytest.raises(DomainError):
            FootballParams(B, lam)

    def test_from_alpha(self):
        assert FootballParams.from_alpha(2.0, 0.125) == FootballParams(0.125, 16)
        assert FootballParams.from_alpha(0.3, 0.1).lam == 3
        with pytest.raises(DomainError):
            FootballParams.from_alpha(0.7, 0.5)

    def test_coords_wrap_theta(self):
        assert GeodesicCoord(1.0, 2 * PI + 0.5).theta == pytest.approx(0.5, abs=1e-15)
        assert 0.0 <= ConformalCoord(1.0, -1e-300).theta < 2 * PI
        assert wrap_angle(-2 * PI) == 0.0
        with pytest.raises(DomainError):
            GeodesicCoord(-0.1, 0.0)
        with pytest.raises(DomainError):
            ConformalCoord(math.inf, 0.0)


class TestCharts:
    def test_examples(self):
        assert geodesic_from_conformal(0.0) == 0.0
        assert geodesic_from_conformal(1.0) == pytest.approx(PI / 2, abs=1e-15)
        assert geodesic_from_conformal(math.tan(PI / 8)) == pytest.approx(PI / 4, abs=1e-15)
        assert conformal_from_geodesic(0.0) == 0.0
        assert conformal_from_geodesic(PI / 2) == pytest.approx(1.0, abs=1e-15)
        assert conformal_from_geodesic(PI / 3) == pytest.approx(0.5773502692, abs=1e-10)

    def test_errors(self):
        with pytest.raises(DomainError):
            geodesic_from_conformal(math.nan)
        with pytest.raises(DomainError):
            conformal_from_geodesic(PI)

    @given(st.floats(0.0, 1e6))
    def test_round_trip(self, r):
        u = geodesic_from_conformal(r)
        assert 0.0 <= u < PI
        assert abs(geodesic_from_conformal(conformal_from_geodesic(u)) - u) <= 1e-14
        # r = tan(u/2) amplifies the rounding of u by (1 + r^2) / 2
        assert abs(conformal_from_geodesic(u) - r) <= 4e-16 * (1.0 + r * r) + 1e-300

    def test_monotone(self):
        rs = np.linspace(0, 50, 1001)
        us = [geodesic_from_conformal(r) for r in rs]
        assert np.all(np.diff(us) > 0)


class TestProfileHeight:
    def test_examples(self):
        assert profile_height(0.0, 0.7) == 0.0
        assert profile_height(PI, 0.0) == PI
        assert profile_height(PI, 0.5) == pytest.approx(TWO_E_HALF, abs=1e-12)

    @pytest.mark.parametrize("B", [0.0, 0.125, 0.25, 0.5, 0.75, 0.95])
    @pytest.mark.parametrize("u", [0.1, 0.7, PI / 2, 2.0, 3.0, PI])
    def test_against_agm(self, u, B):
        assert profile_height(u, B) == pytest.approx(profile_height_agm(u, B), abs=1e-12)

    @pytest.mark.parametrize("u, B", [(-0.1, 0.5), (PI + 1e-9, 0.5), (1.0, 1.0), (1.0, -0.1)])
    def test_domain(self, u, B):
        with pytest.raises(DomainError):
            profile_height(u, B)

    @given(st.floats(0.0, PI), st.floats(0.0, PI), st.floats(0.0, 0.99))
    def test_monotone_and_bounded(self, u1, u2, B):
        u1, u2 = sorted((u1, u2))
        h1, h2 = profile_height(u1, B), profile_height(u2, B)
        if u2 - u1 > 1e-9:
            assert h1 < h2
        for u, h in ((u1, h1), (u2, h2)):
            assert u * math.sqrt(1 - B * B) - 1e-13 <= h <= u + 1e-13

    def test_vectorized_matches_scalar(self):
        us = np.linspace(0, PI, 37)
        hs = profile_heights(us, 0.3)
        np.testing.assert_allclose(hs, [profile_height(u, 0.3) for u in us], atol=1e-13, rtol=0)


class TestImmersion:
    def test_pole_images(self):
        p = FootballParams(0.5, 1)
        assert immerse_geodesic(p, GeodesicCoord(0.0, 1.3)) == (0.0, 0.0, 0.0)
        assert immerse(p, ConformalCoord(0.0, 2.0)) == (0.0, 0.0, 0.0)
        top = immerse_geodesic(p, GeodesicCoord(PI, 0.4))
        assert top == (0.0, 0.0, profile_height(PI, 0.5))
        assert north_pole(p) == top

    def test_equator_examples(self):
        h = profile_height(PI / 2, 0.5)
        assert h == pytest.approx(0.5 * TWO_E_HALF, abs=1e-12)
        x = immerse_geodesic(FootballParams(0.5, 1), GeodesicCoord(PI / 2, 0.0))
        np.testing.assert_allclose(x, (0.5, 0.0, h), atol=1e-15)
        x = immerse_geodesic(FootballParams(0.5, 4), GeodesicCoord(PI / 2, PI / 4))
        np.testing.assert_allclose(x, (-0.5, 0.0, h), atol=1e-15)
        x = immerse(FootballParams(0.5, 1), ConformalCoord(1.0, 0.0))
        np.testing.assert_allclose(x, (0.5, 0.0, h), atol=1e-15)
        x = immerse(FootballParams(0.5, 2), ConformalCoord(1.0, PI / 2))
        np.testing.assert_allclose(x, (-0.5, 0.0, h), atol=1e-15)

    def test_far_field_approaches_north_pole(self):
        p = FootballParams(0.25, 8)
        x = immerse(p, ConformalCoord(1e8, 0.3))
        np.testing.assert_allclose(x, north_pole(p), atol=1e-8)

    @settings(max_examples=50)
    @given(params, st.floats(1e-6, 1e3), angles)
    def test_conformal_matches_geodesic(self, p, r, t):
        a = immerse(p, ConformalCoord(r, t))
        b = immerse_geodesic(p, GeodesicCoord(2 * math.atan(r), t))
        assert a == b


class TestFrame:
    def test_examples(self):
        fr = tangent_frame(FootballParams(0.5, 1), PI / 2, 0.0)
        np.testing.assert_allclose(fr.normal, (-1.0, 0.0, 0.0), atol=1e-16)
        fr = tangent_frame(FootballParams(0.5, 2), PI / 3, 0.0)
        np.testing.assert_allclose(fr.d_theta, (0.0, math.sqrt(3) / 2, 0.0), atol=1e-15)

    @pytest.mark.parametrize("u", [0.0, PI])
    def test_degenerate_at_poles(self, u):
        p = FootballParams(0.5, 1)
        with pytest.raises(DegenerateError):
            tangent_frame(p, u, 0.0)
        with pytest.raises(DegenerateError):
            fundamental_forms(p, u)
        with pytest.raises(DegenerateError):
            mean_curvature(p, u)

    @given(params, interior_u, angles)
    def test_orthonormal(self, p, u, t):
        fr = tangent_frame(p, u, t)
        du, dt, n = (np.asarray(v) for v in fr)
        assert abs(n @ n - 1) <= 1e-12
        assert abs(n @ du) <= 1e-12
        assert abs(n @ dt) <= 1e-12
        assert np.linalg.norm(np.cross(du, dt)) > 0
        # the frame reproduces the first fundamental form
        ff = fundamental_forms(p, u)
        assert du @ du == pytest.approx(ff.E, abs=1e-14)
        assert dt @ dt == pytest.approx(ff.G, rel=1e-13, abs=1e-300)


class TestForms:
    def test_examples(self):
        ff = fundamental_forms(FootballParams(0.5, 2), PI / 2)
        assert (ff.E, ff.F, ff.M) == (1.0, 0.0, 0.0)
        assert ff.G == pytest.approx(1.0, abs=1e-15)
        assert ff.L == pytest.approx(0.5, abs=1e-15)
        assert ff.N == pytest.approx(2.0, abs=1e-15)
        ff = fundamental_forms(FootballParams(0.5, 1), PI / 4)
        assert ff.L == pytest.approx(1 / math.sqrt(7), abs=1e-15)

    def test_gauss_curvature_examples(self):
        assert gauss_curvature(FundamentalForms(1, 0, 1, 1, 0, 1)) == 1.0
        assert gauss_curvature(FundamentalForms(1, 0, 4, 0, 0, 0)) == 0.0
        with pytest.raises(DegenerateError):
            gauss_curvature(FundamentalForms(1, 1, 1, 1, 0, 1))

    @given(params, interior_u)
    def test_curvature_one(self, p, u):
        assert abs(gauss_curvature(fundamental_forms(p, u)) - 1.0) <= 1e-12

    @given(params, interior_u)
    def test_metric_matches_football(self, p, u):
        assert abs(fundamental_forms(p, u).G - football_metric_G(p.alpha, u)) <= 1e-14

    def test_football_metric_examples(self):
        assert football_metric_G(2.0, PI / 2) == 4.0
        assert football_metric_G(0.5, PI / 6) == pytest.approx(1 / 16, abs=1e-16)


class TestMeanCurvature:
    def test_examples(self):
        assert mean_curvature(FootballParams(0.5, 1), PI / 2) == pytest.approx(1.25, abs=1e-15)
        assert mean_curvature(FootballParams(0.5, 1), PI / 4) == pytest.approx(4 / math.sqrt(7), abs=1e-15)
        assert mean_curvature(FootballParams(0.25, 3), PI / 2) == pytest.approx(2.125, abs=1e-15)

    def test_matches_forms(self):
        # H = (L/E + N/G) / 2 when F = M = 0
        p = FootballParams(0.3, 5)
        for u in np.linspace(0.1, 3.0, 17):
            ff = fundamental_forms(p, u)
            assert mean_curvature(p, u) == pytest.approx(0.5 * (ff.L / ff.E + ff.N / ff.G), rel=1e-14)

    @given(params, interior_u)
    def test_lower_bound(self, p, u):
        H = mean_curvature(p, u)
        bound = 0.5 * (p.B + 1 / p.B)
        assert H >= bound - 1e-12
        assert H > 1.0


class TestDensities:
    def test_noninteger(self):
        assert conformal_density(0.5, ConformalCoord(1.0, 0.3)) == pytest.approx(0.25, abs=1e-16)
        assert conformal_density(0.5, ConformalCoord(1e12, 0.0)) < 1e-30
        with pytest.raises(DegenerateError):
            conformal_density(0.5, ConformalCoord(0.0, 0.0))
        with pytest.raises(DomainError):
            conformal_density(2.0, ConformalCoord(1.0, 0.0))

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.7, 2.5])
    def test_inversion_symmetry(self, alpha):
        # w = 1/z: rho_w(w) = rho(1/w) |w|^-4, and the metric is symmetric
        rho2 = conformal_density(alpha, ConformalCoord(2.0, 0.0))
        rho_half = conformal_density(alpha, ConformalCoord(0.5, 0.0))
        assert rho_half == pytest.approx(rho2 * 2.0**4, rel=1e-14)

    def test_integer_examples(self):
        for r in (0.1, 1.0, 3.0):
            assert conformal_density_integer(1, 0.0, ConformalCoord(r, 0.7)) == pytest.approx(
                4 / (1 + r * r) ** 2, rel=1e-15
            )
        assert conformal_density_integer(2, 1.0, ConformalCoord(1.0, PI / 2)) == pytest.approx(16.0, rel=1e-15)
        assert conformal_density_integer(2, 0.0, ConformalCoord(1.0, 0.0)) == pytest.approx(4.0, rel=1e-15)

    @given(st.integers(1, 6), st.floats(-3, 3), st.floats(1e-3, 1e2), angles)
    def test_integer_density_is_pullback(self, alpha, b, r, t):
        z = r * complex(math.cos(t), math.sin(t))
        w = z**alpha + b
        dw = alpha * z ** (alpha - 1)
        expected = 4 * abs(dw) ** 2 / (1 + abs(w) ** 2) ** 2
        got = conformal_density_integer(alpha, b, ConformalCoord(r, t))
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-300)


class TestTwistedProfile:
    def test_solve_profile(self):
        pp = solve_profile(0.3)
        assert pp.f(PI / 2) == 0.3
        assert pp.f(0.0) == 0.0 and pp.f(PI) == 0.0
        rng = np.random.default_rng(0)
        for u in rng.uniform(0, PI, 100):
            assert abs(pp.f_double_prime(u) + pp.f(u)) <= 1e-15
            assert abs(pp.f_prime(u) ** 2 + pp.g_prime(u) ** 2 - 1) <= 1e-15
        assert pp.g(1.0) == profile_height(1.0, 0.3)
        with pytest.raises(DomainError):
            solve_profile(1.0)

    @given(params, interior_u)
    def test_matches_closed_form(self, p, u):
        a = twisted_profile_forms(solve_profile(p.B), p.lam, u)
        b = fundamental_forms(p, u)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)

    def test_equator_L(self):
        ff = twisted_profile_forms(solve_profile(0.4), 3, PI / 2)
        assert ff.L == pytest.approx(0.4, abs=1e-16)

    def test_rejects_bad_profiles(self):
        # unit speed, but g' = cos u changes sign on the equator
        bad = ProfilePair(math.sin, math.sin, lambda u: -math.sin(u), math.cos)
        with pytest.raises(DomainError):
            twisted_profile_forms(bad, 1, 2.0)
        flat = ProfilePair(lambda u: u, lambda u: 1.0, lambda u: 0.0, lambda u: 0.0)
        with pytest.raises(ZeroDivisionError):
            twisted_profile_forms(flat, 1, 1.0)
        slow = ProfilePair(math.sin, lambda u: 0.5, lambda u: 0.0, lambda u: 0.5)
        with pytest.raises(DomainError):
            twisted_profile_forms(slow, 1, 1.0)
