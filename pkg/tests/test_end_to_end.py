"""
end-to-end tests: calibrate, invert, and score simulated scenes



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np
from numpy.testing import assert_array_equal, assert_equal
import pytest
import time

from lensless.analysis.ablation import \
    Ablation, \
    ablated_calibration, \
    run_ablation
from lensless.analysis.diagnostics import correlation_map
from lensless.analysis.quality import random_binary_scene
from lensless.analysis.still import \
    measure_scene, \
    render_and_invert
from lensless.calibration.calibrate import \
    calibrate, \
    measurement_vector
from lensless.calibration.io import encode_calibration
from lensless.data_structures.optics_config import desk_scale_config
from lensless.data_structures.patterns import \
    make_pattern, \
    make_video
from lensless.solver.svd import condition_number
from lensless.solver.tikhonov import \
    build_reconstructor, \
    reconstruct
from lensless.utilities.testing import \
    noiseless_desk_config

def test_letter_t_identity():
    cfg = noiseless_desk_config()
    A = calibrate(cfg)
    truth = make_pattern("letter-T", cfg.grid)
    result = render_and_invert(A, cfg, truth)
    assert result.report.pixel_accuracy == 1.
    assert_array_equal(result.binary, truth.values)

def test_noise_robustness():
    cfg = desk_scale_config()
    n_avg = 100
    A = calibrate(cfg, n_avg=n_avg, rng_seed=1)
    rng = np.random.default_rng(8)
    accuracy = []
    for k in range(20):
        truth = random_binary_scene(cfg.grid, rng.integers(15, 41), rng)
        result = render_and_invert(A, cfg, truth, n_avg=n_avg, rng_seed=1, k=k,
                                   alpha_strategy="fixed-fraction(1e-3)")
        accuracy.append(result.report.pixel_accuracy)
    assert np.mean(accuracy) >= 0.98

    truth = make_pattern("letter-T", cfg.grid)
    result = render_and_invert(A, cfg, truth, n_avg=n_avg, rng_seed=1, k=20)
    assert_array_equal(result.binary, truth.values)

@pytest.mark.timing
def test_video_latency():
    cfg = noiseless_desk_config()
    A = calibrate(cfg)
    R = build_reconstructor(A.factors, 1e-4 * A.factors.S[0])
    video = make_video("jumping-stickman", cfg.grid, 76)
    frames = [measurement_vector(A, measure_scene(x, cfg)) for x in video]
    for b in frames[:3]:
        reconstruct(R, b)
    times = []
    for b in frames:
        t0 = time.perf_counter()
        reconstruct(R, b)
        times.append(time.perf_counter() - t0)
    assert np.mean(times) < 0.01

def test_correlation_ablation():
    cfg = noiseless_desk_config()
    _, A = ablated_calibration(cfg, Ablation())
    _, Aab = ablated_calibration(
        cfg, Ablation(no_scatterers=True, no_texture=True))
    for line in ("h", "v"):
        base = correlation_map(A, line)
        ablated = correlation_map(Aab, line)
        assert base.max_off_diagonal <= 0.999
        assert ablated.mean_off_diagonal > base.mean_off_diagonal
    assert condition_number(Aab.factors) > condition_number(A.factors)

def test_ablation_report():
    cfg = noiseless_desk_config()
    report = run_ablation(cfg, Ablation(no_scatterers=True, no_texture=True),
                          alpha_strategy="fixed-fraction(1e-3)")
    assert report["ablation"]["no_texture"]
    assert report["ablated"]["condition_number"] > report["baseline"]["condition_number"]

    report = run_ablation(cfg, Ablation(), alpha_strategy="fixed-fraction(1e-3)")
    assert report["ablated"] == report["baseline"]

def test_mask_ablation():
    cfg = noiseless_desk_config()
    report = run_ablation(cfg, Ablation(mask_shadows=True),
                          alpha_strategy="fixed-fraction(1e-6)")
    base = report["baseline"]
    masked = report["ablated"]
    assert masked["n_pixels"] < base["n_pixels"]
    assert masked["pixel_accuracy"] >= 0.9
    # the shadow pixels carry information the rest cannot fit
    assert masked["residual_rel"] > base["residual_rel"]

def test_determinism():
    cfg = desk_scale_config()
    b1 = encode_calibration(calibrate(cfg, rng_seed=11))
    b2 = encode_calibration(calibrate(cfg, rng_seed=11))
    assert b1 == b2
    assert_equal(len(b1), 62 + 8 * 6912 * 256)
