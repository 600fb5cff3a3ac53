"""
tests for the svd, tikhonov solver, and alpha selection



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from hypothesis import given, settings, strategies as st
import numpy as np
from numpy.testing import \
    assert_allclose, \
    assert_array_equal, \
    assert_equal
import os
import pytest

from lensless.calibration.calibrate import calibrate
from lensless.simulation.forward_model import render_scene
from lensless.data_structures.patterns import make_pattern
from lensless.solver.alpha_selection import \
    add_alpha_strategy, \
    alpha_grid, \
    lcurve_norms, \
    select_alpha
from lensless.solver.svd import \
    condition_number, \
    filter_factors, \
    svd
from lensless.solver.tikhonov import \
    Reconstructor, \
    build_reconstructor, \
    load_reconstructor, \
    read_reconstructor_header, \
    reconstruct, \
    save_reconstructor, \
    tikhonov_solve
from lensless.utilities.exceptions import \
    BadMagic, \
    DimensionMismatch, \
    LenslessConfigError, \
    LenslessNumericalError, \
    NonFiniteData
from lensless.utilities.testing import \
    TempDirTest, \
    small_config

def normal_equations(A, b, alpha):
    """
    Tikhonov solution from (A^T A + alpha^2 I) x = A^T b.
    """
    n = A.shape[1]
    return np.linalg.solve(A.T @ A + alpha**2 * np.eye(n), A.T @ b)

def augmented_lstsq(A, b, alpha):
    """
    Tikhonov solution from the stacked system [A; alpha I] x = [b; 0].
    """
    n = A.shape[1]
    M = np.vstack([A, alpha * np.eye(n)])
    rhs = np.concatenate([b, np.zeros(n)])
    return np.linalg.lstsq(M, rhs, rcond=None)[0]

def test_matches_normal_equations():
    rng = np.random.default_rng(1)
    for _ in range(50):
        A = rng.uniform(0, 1, size=(30, 12))
        b = rng.uniform(0, 1, size=30)
        f = svd(A)
        for alpha in (0.01, 0.1, 1.):
            x = tikhonov_solve(f, b, alpha)
            expected = normal_equations(A, b, alpha)
            assert np.linalg.norm(x - expected) <= 1e-8 * np.linalg.norm(expected)
            assert_allclose(x, augmented_lstsq(A, b, alpha), rtol=1e-8, atol=1e-10)

def test_alpha_monotonicity():
    rng = np.random.default_rng(2)
    for _ in range(20):
        A = rng.uniform(0, 1, size=(30, 12))
        b = rng.uniform(0, 1, size=30)
        f = svd(A)
        alphas = alpha_grid(f, n=20)
        xnorm = [np.linalg.norm(tikhonov_solve(f, b, a)) for a in alphas]
        rnorm = [np.linalg.norm(A @ tikhonov_solve(f, b, a) - b) for a in alphas]
        assert np.all(np.diff(xnorm) <= 1e-12 * xnorm[0])
        assert np.all(np.diff(rnorm) >= -1e-12 * rnorm[-1])

        rho, eta = lcurve_norms(f, b, alphas)
        assert_allclose(eta, xnorm, rtol=1e-10)
        assert_allclose(rho, rnorm, rtol=1e-8)

def test_diagonal_examples():
    f = svd(np.diag([2., 1.]))
    assert_allclose(tikhonov_solve(f, [2., 1.], 1.), [0.8, 0.5])
    assert_allclose(tikhonov_solve(f, [2., 1.], 0.), [1., 1.])
    assert_allclose(filter_factors(f, 1.), [0.8, 0.5])
    with pytest.raises(ValueError):
        tikhonov_solve(f, [2., 1.], -1.)
    with pytest.raises(DimensionMismatch):
        tikhonov_solve(f, [2., 1., 0.], 1.)
    with pytest.raises(NonFiniteData):
        tikhonov_solve(f, [np.inf, 1.], 1.)

def test_svd_identity():
    f = svd(np.eye(2))
    assert_array_equal(f.S, [1., 1.])
    assert condition_number(f) == 1.
    assert_equal(f.rank, 2)

def test_svd_sign_convention():
    rng = np.random.default_rng(3)
    for _ in range(10):
        A = rng.normal(size=(20, 8))
        f = svd(A)
        assert np.all(np.diff(f.S) <= 0)
        assert_allclose(f.matrix(), A, atol=1e-12)
        for i in range(f.rank):
            v = f.V[:, i]
            assert v[np.abs(v).argmax()] > 0
        # the flip does not depend on the sign of the input
        g = svd(-A)
        assert_allclose(g.V, f.V, atol=1e-12)
        assert_allclose(g.U, -f.U, atol=1e-12)

@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 8), seed=st.integers(0, 2**16))
def test_svd_rank_truncation(n, seed):
    rng = np.random.default_rng(seed)
    col = rng.uniform(0.1, 1, size=3 * n)
    A = np.outer(col, np.ones(n))
    f = svd(A)
    assert_equal(f.rank, 1)
    assert_equal(f.V.shape, (n, 1))

def test_svd_errors():
    with pytest.raises(LenslessNumericalError):
        svd(np.zeros((4, 3)))
    with pytest.raises(NonFiniteData):
        svd(np.array([[1., np.nan], [0., 1.]]))
    with pytest.raises(DimensionMismatch):
        svd(np.ones(4))

def test_calibration_factors():
    A = calibrate(small_config())
    f = A.factors
    assert f is A.factors
    assert f.calibration is A
    assert_equal((f.n_pixels, f.n_sources), (480, 16))

def test_reconstructor():
    rng = np.random.default_rng(4)
    A = rng.uniform(0, 1, size=(40, 9))
    f = svd(A)
    R = build_reconstructor(f, 0.05)
    assert_equal(R.M.shape, (9, 40))
    for _ in range(5):
        b = rng.uniform(0, 1, size=40)
        assert_allclose(reconstruct(R, b), tikhonov_solve(f, b, 0.05),
                        rtol=1e-10, atol=1e-12)
    with pytest.raises(DimensionMismatch):
        reconstruct(R, np.zeros(39))
    assert R.calibration_hash == bytes(32)
    with pytest.raises(ValueError):
        Reconstructor(R.M, -1.)

def test_alpha_strategies():
    rng = np.random.default_rng(5)
    A = rng.uniform(0, 1, size=(30, 10))
    b = rng.uniform(0, 1, size=30)
    f = svd(A)
    assert select_alpha(f, b) == 0.01 * f.S[0]
    assert select_alpha(f, b, "fixed-fraction(0.1)") == 0.1 * f.S[0]
    assert select_alpha(f, b, "fixed(0.5)") == 0.5
    assert select_alpha(f, b, "fixed(0)") == 0.
    for strategy in ("fixed-fraction(-1)", "fixed(-1)", "smiley",
                     "l-curve(", "fixed(1, 2)", "discrepancy(-1)"):
        with pytest.raises(LenslessConfigError):
            select_alpha(f, b, strategy)

def test_l_curve_identity():
    f = svd(np.eye(12))
    b = np.linspace(1, 2, 12)
    alpha = select_alpha(f, b, "l-curve")
    grid = alpha_grid(f)
    # no regularization needed: lowest decade of the grid
    assert grid[0] <= alpha < 10 * grid[0]

def test_l_curve_zero_measurement():
    f = svd(np.diag([3., 2., 1.]))
    alpha = select_alpha(f, np.zeros(3), "l-curve")
    assert alpha == alpha_grid(f)[0]

def test_discrepancy():
    f = svd(np.eye(12))
    b = np.linspace(1, 2, 12)
    grid = alpha_grid(f)
    rho, _ = lcurve_norms(f, b, grid)
    alpha = select_alpha(f, b, f"discrepancy({float(rho[20])!r})")
    assert alpha == grid[20]

def test_add_alpha_strategy():
    def smallest(f, b):
        return f.S[-1]
    add_alpha_strategy("smallest", smallest)
    f = svd(np.diag([3., 2., 1.]))
    assert select_alpha(f, np.ones(3), "smallest") == 1.

class ReconstructorFileTest(TempDirTest):

    def setUp(self):
        super().setUp()
        cfg = small_config()
        self.A = calibrate(cfg)
        self.f = self.A.factors
        self.b = render_scene(make_pattern("single(1, 1)", cfg.grid), cfg).vector
        self.R = build_reconstructor(self.f, select_alpha(self.f, self.b))

    def test_round_trip(self):
        save_reconstructor(self.R, "r.lrec")
        R = load_reconstructor("r.lrec")
        assert R == self.R
        assert R.calibration_hash == self.A.digest
        assert_equal(os.path.getsize("r.lrec"), 54 + 8 * 16 * 480)
        assert_array_equal(reconstruct(R, self.b), reconstruct(self.R, self.b))

    def test_header(self):
        save_reconstructor(self.R, "r.lrec")
        header = read_reconstructor_header("r.lrec")
        assert_equal(header["n_sources"], 16)
        assert_equal(header["n_pixels"], 480)
        assert_equal(header["alpha"], self.R.alpha)
        assert header["calibration_hash"] == self.A.digest.hex()

    def test_bad_files(self):
        save_reconstructor(self.R, "r.lrec")
        with open("r.lrec", mode="rb") as f:
            buff = f.read()
        with open("bad.lrec", mode="wb") as f:
            f.write(b"LCAL1" + buff[5:])
        with pytest.raises(BadMagic):
            load_reconstructor("bad.lrec")
        with open("long.lrec", mode="wb") as f:
            f.write(buff + bytes(8))
        with pytest.raises(DimensionMismatch):
            load_reconstructor("long.lrec")
