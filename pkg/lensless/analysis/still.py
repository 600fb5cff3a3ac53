"""
render-and-invert experiments on still scenes



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import dataclass
import numpy as np

from lensless.analysis.diagnostics import \
    threshold
from lensless.analysis.quality import \
    score
from lensless.calibration.calibrate import \
    measurement_vector
from lensless.data_structures.frame import \
    Frame
from lensless.data_structures.optics_config import \
    scene_exposure_peak
from lensless.simulation.forward_model import \
    render_scene
from lensless.simulation.sensor_model import \
    capture_averaged, \
    default_n_avg
from lensless.solver.alpha_selection import \
    default_alpha_strategy, \
    select_alpha
from lensless.solver.tikhonov import \
    tikhonov_solve
from lensless.utilities.exceptions import \
    DegenerateHistogram

def measurement_seed(rng_seed, grid, k=0):
    """
    Seed of the k-th scene measurement.

    Calibration column j uses (rng_seed, j), so scene measurements
    are numbered after the last source.
    """
    return (int(rng_seed), grid.size + int(k))

def measure_scene(x, cfg, n_avg=default_n_avg, rng_seed=0, k=0):
    """
    Capture a scene with the same sensor and averaging as the
    calibration.

    Scenes brighter than scene_exposure_peak of full scale are taken
    with a shorter exposure and rescaled to calibration units.

    Returns
    -------
    Frame
    """
    return capture_averaged(x, cfg, n_frames=n_avg,
                            rng_seed=measurement_seed(rng_seed, cfg.grid, k),
                            max_peak=scene_exposure_peak)

def clean_measurement(x, cfg):
    """
    A noise-free capture of a scene, in the same units as a
    calibration recorded with cfg.
    """
    clean = render_scene(x, cfg)
    if cfg.sensor.is_noiseless:
        return clean
    return Frame(clean.width_px, clean.height_px, clean.data * cfg.exposure)

@dataclass
class StillResult:
    """
    Reconstruction of one still measurement.
    """

    values: np.ndarray
    binary: np.ndarray
    alpha: float
    measurement: np.ndarray
    report: object = None

def invert(A, b, alpha_strategy=default_alpha_strategy, method="otsu", truth=None):
    """
    Reconstruct and threshold a measurement with a calibration.

    Parameters
    ----------
    A : CalibrationMatrix
    b : Frame or array_like
        Full sensor frame or masked measurement vector.
    alpha_strategy : optional, str
    method : optional, str
        Threshold method.
    truth : optional, SceneVector
        If given, the result is scored against it.

    Returns
    -------
    StillResult
    """
    bvec = measurement_vector(A, b)
    f = A.factors
    alpha = select_alpha(f, bvec, alpha_strategy)
    values = tikhonov_solve(f, bvec, alpha)
    try:
        binary = threshold(values, method)
    except DegenerateHistogram:
        binary = np.zeros(values.size)
    report = None
    if truth is not None:
        report = score(values, truth, A, bvec)
    return StillResult(values=values, binary=binary, alpha=alpha,
                       measurement=bvec, report=report)

def render_and_invert(A, cfg, truth, n_avg=default_n_avg, rng_seed=0, k=0,
                      alpha_strategy=default_alpha_strategy, method="otsu"):
    """
    Capture a known scene and reconstruct it: the self-test loop.
    """
    frame = measure_scene(truth, cfg, n_avg=n_avg, rng_seed=rng_seed, k=k)
    return invert(A, frame, alpha_strategy=alpha_strategy, method=method,
                  truth=truth)
