import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy import stats as scs

from ehcdf.cdf_model import StepCdf, ecdf, lp_distance_step_cont, lp_distance_step_step
from ehcdf.distributions import catalog_lookup

finite_floats = st.floats(min_value=-50, max_value=50, allow_nan=False)


class TestStepCdf:
    def test_sorted_and_normalized(self):
        g = StepCdf([3.0, -1.0, 2.0], [0.2, 0.5, 0.3])
        assert list(g.locations) == [-1.0, 2.0, 3.0]
        assert_allclose(g.masses.sum(), 1.0)

    def test_tie_merging(self):
        g = StepCdf([1.0, 1.0, 2.0], [0.25, 0.25, 0.5])
        assert g.n_atoms == 2
        assert_allclose(g.masses, [0.5, 0.5])

    def test_mass_must_sum_to_one(self):
        with pytest.raises(ValueError):
            StepCdf([0.0, 1.0], [0.3, 0.3])

    def test_eval_right_continuous(self):
        g = StepCdf([0.0, 1.0], [0.4, 0.6])
        assert_allclose(g.eval([-0.5, 0.0, 0.5, 1.0, 2.0]), [0, 0.4, 0.4, 1.0, 1.0])
        assert_allclose(g.eval_left([0.0, 1.0]), [0.0, 0.4])

    def test_quantile_left_continuous_inverse(self):
        g = StepCdf([0.0, 1.0], [0.4, 0.6])
        assert_allclose(g.quantile([0.2, 0.4, 0.41, 1.0]), [0.0, 0.0, 1.0, 1.0])

    def test_csv_round_trip(self, tmp_path):
        g = StepCdf([math.pi, -1.0 / 3.0], [0.125, 0.875])
        path = tmp_path / "atoms.csv"
        g.to_csv(path)
        h = StepCdf.from_csv(path)
        assert_allclose(h.locations, g.locations, rtol=0, atol=0)
        assert_allclose(h.masses, g.masses, rtol=0, atol=0)

    def test_ecdf(self):
        g = ecdf([3.0, 1.0, 1.0, 2.0])
        assert_allclose(g.locations, [1.0, 2.0, 3.0])
        assert_allclose(g.masses, [0.5, 0.25, 0.25])

    @given(st.lists(finite_floats, min_size=1, max_size=30))
    @settings(max_examples=60, deadline=None)
    def test_ecdf_is_valid_cdf(self, xs):
        g = ecdf(xs)
        vals = g.eval(np.sort(np.asarray(xs)))
        assert np.all(np.diff(vals) >= 0)
        assert_allclose(g.eval(max(xs)), 1.0)


class TestStepStepDistance:
    def test_known_l1(self):
        g = StepCdf([0.0], [1.0])
        h = StepCdf([1.0], [1.0])
        assert_allclose(lp_distance_step_step(g, h, 1.0), 1.0)
        assert_allclose(lp_distance_step_step(g, h, float("inf")), 1.0)

    def test_brute_force_grid(self):
        rng = np.random.default_rng(3)
        g = ecdf(rng.normal(size=13))
        h = ecdf(rng.normal(size=7))
        grid = np.linspace(-6, 6, 400001)
        diff = np.abs(g.eval(grid) - h.eval(grid))
        for p in (1.0, 2.0, 3.0):
            brute = (np.trapezoid(diff**p, grid)) ** (1 / p)
            assert_allclose(lp_distance_step_step(g, h, p), brute, atol=2e-3)

    def test_identical_is_zero(self):
        g = ecdf([0.0, 1.5, 2.0])
        assert lp_distance_step_step(g, g, 2.0) == 0.0

    @given(
        st.lists(finite_floats, min_size=1, max_size=12),
        st.lists(finite_floats, min_size=1, max_size=12),
        st.lists(finite_floats, min_size=1, max_size=12),
    )
    @settings(max_examples=40, deadline=None)
    def test_triangle_inequality_l1(self, a, b, c):
        ga, gb, gc = ecdf(a), ecdf(b), ecdf(c)
        d = lambda u, v: lp_distance_step_step(u, v, 1.0)
        assert d(ga, gc) <= d(ga, gb) + d(gb, gc) + 1e-9


class TestStepContDistance:
    def test_against_brute_normal(self):
        f = catalog_lookup("normal", [0.0, 1.0])
        rng = np.random.default_rng(11)
        g = ecdf(rng.normal(size=40))
        grid = np.linspace(-10, 10, 2000001)
        diff = np.abs(g.eval(grid) - scs.norm.cdf(grid))
        for p in (1.0, 2.0):
            brute = (np.trapezoid(diff**p, grid)) ** (1 / p)
            assert_allclose(lp_distance_step_cont(g, f, p), brute, atol=1e-5)

    def test_sup_exact_at_jumps(self):
        f = catalog_lookup("uniform", [0.0, 1.0])
        g = StepCdf([0.5], [1.0])
        # just left of the atom: |0 - 0.5| = 0.5; from the right it is also 0.5
        assert_allclose(lp_distance_step_cont(g, f, float("inf")), 0.5)

    def test_sup_against_ks_statistic(self):
        f = catalog_lookup("normal", [0.0, 1.0])
        rng = np.random.default_rng(5)
        x = rng.normal(size=60)
        got = lp_distance_step_cont(ecdf(x), f, float("inf"))
        want = scs.kstest(x, "norm").statistic
        assert_allclose(got, want, rtol=1e-10)

    def test_heavy_tail_l1_file_tail_handling(self):
        # t2 tails decay like x^-2: the tail pieces carry real mass
        f = catalog_lookup("student_t", [2.0])
        g = StepCdf([0.0], [1.0])
        # ||1{x>=0} - F||_1 = 2 * int_0^inf (1 - F) dx = E|X| = sqrt(2) for t2
        assert_allclose(lp_distance_step_cont(g, f, 1.0), math.sqrt(2.0), rtol=1e-6)

    def test_discrete_reference_atoms(self):
        f = catalog_lookup("binomial", [4, 0.5])
        g = ecdf([0.0, 1.0, 2.0, 3.0, 4.0])
        got = lp_distance_step_cont(g, f, float("inf"))
        atoms = np.arange(5.0)
        want = max(
            np.max(np.abs(g.eval(atoms) - f.cdf(atoms))),
            np.max(np.abs(g.eval_left(atoms) - f.cdf_minus(atoms))),
        )
        assert_allclose(got, want, rtol=1e-12)
