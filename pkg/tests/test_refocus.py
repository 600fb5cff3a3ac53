"""
tests for refocusing over a calibration stack



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np
from numpy.testing import assert_equal
import pytest

from lensless.analysis.quality import random_binary_scene
from lensless.analysis.still import measure_scene
from lensless.calibration.calibrate import calibrate_stack
from lensless.data_structures.calibration_matrix import CalibrationStack
from lensless.data_structures.frame import Frame
from lensless.data_structures.optics_config import desk_scale_config
from lensless.data_structures.patterns import make_pattern
from lensless.simulation.forward_model import render_scene
from lensless.solver.refocus import \
    refocus, \
    relative_residual
from lensless.utilities.exceptions import DimensionMismatch
from lensless.utilities.testing import \
    noiseless_desk_config, \
    small_config

stack_distances = [85., 165., 242., 343., 497.]

def test_relative_residual():
    A = np.eye(3)
    assert relative_residual(A, np.ones(3), np.ones(3)) == 0.
    assert relative_residual(A, np.zeros(3), np.zeros(3)) == 0.
    assert relative_residual(A, np.zeros(3), np.ones(3)) == 1.

def test_refocus_noiseless():
    cfg = noiseless_desk_config()
    stack = calibrate_stack(cfg, stack_distances)
    rng = np.random.default_rng(17)
    for D in stack_distances:
        for _ in range(5):
            truth = random_binary_scene(cfg.grid, 20, rng)
            b = render_scene(truth, cfg.with_distance(D))
            result = refocus(stack, b, alpha_strategy="fixed-fraction(1e-6)")
            assert result.distance_mm == D
            residuals = dict(result.residuals)
            others = [r for d, r in residuals.items() if d != D]
            assert residuals[D] < min(others)
            assert_equal(result.values.size, cfg.grid.size)

def test_refocus_noisy():
    cfg = desk_scale_config()
    stack = calibrate_stack(cfg, stack_distances, rng_seed=2)
    rng = np.random.default_rng(23)
    correct = 0
    for D in stack_distances:
        for k in range(5):
            truth = random_binary_scene(cfg.grid, 20, rng)
            b = measure_scene(truth, cfg.with_distance(D), rng_seed=2, k=k)
            result = refocus(stack, b, alpha_strategy="fixed-fraction(1e-3)")
            correct += result.distance_mm == D
    assert correct >= 24

def test_refocus_report():
    cfg = small_config().noiseless()
    stack = calibrate_stack(cfg, [343., 85.])
    b = render_scene(make_pattern("single(1, 2)", cfg.grid), cfg)
    result = refocus(stack, b, alpha_strategy="fixed(0)")
    assert result.distance_mm == 343.
    assert [D for D, _ in result.residuals] == [85., 343.]
    assert_equal(len(result.alphas), 2)
    data = result.to_dict()
    assert data["distance_mm"] == 343.
    assert data["residuals"][0]["distance_mm"] == 85.

def test_refocus_ties():
    cfg = small_config().noiseless()
    A = calibrate_stack(cfg, [343.])[0]
    stack = CalibrationStack([A.with_meta(distance_mm=500.), A])
    b = render_scene(make_pattern("full-on", cfg.grid), cfg)
    result = refocus(stack, b)
    # identical matrices: the nearer distance wins
    assert result.distance_mm == 343.
    assert result.residuals[0][1] == result.residuals[1][1]

    result = refocus(stack, np.zeros(A.n_pixels))
    assert result.distance_mm == 343.
    assert all(r == 0 for _, r in result.residuals)

def test_refocus_mismatch():
    cfg = small_config().noiseless()
    stack = calibrate_stack(cfg, [343., 497.])
    with pytest.raises(DimensionMismatch):
        refocus(stack, Frame(4, 4, np.zeros((4, 4))))
