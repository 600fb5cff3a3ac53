"""
sensor noise, saturation, and quantization



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from more_itertools import always_iterable
import numpy as np

from lensless.data_structures.frame import \
    Frame
from lensless.simulation.forward_model import \
    render_scene
from lensless.utilities.logger import \
    lenslessLogger as mylog

# frames averaged per capture unless told otherwise
default_n_avg = 100

# electrons-equivalent per gray level for shot noise
well_per_level = 10

def make_rng(rng_seed):
    """
    A numpy Generator from an int or a tuple of ints.

    Tuples give independent streams, so (seed, k) can be used
    for frame k of an averaged capture.
    """
    if rng_seed is None:
        return np.random.default_rng()
    return np.random.default_rng(list(always_iterable(rng_seed)))

def expose(clean, spec, exposure_scale, rng_seed, warn_saturation=True):
    """
    Turn a noiseless frame into a captured one.

    The clean intensity is scaled by the exposure and clipped to
    full scale, then optionally given Poisson shot noise and
    Gaussian read noise, clipped again, and quantized.

    Parameters
    ----------
    clean : Frame
        Noiseless rendered intensity.
    spec : SensorSpec
    exposure_scale : float
        Factor applied to the clean intensity.
    rng_seed : int or tuple of ints
    warn_saturation : optional, bool
        Log a warning if any pixel is clipped at full scale.
        Default: True

    Returns
    -------
    Frame
    """

    if not exposure_scale > 0:
        raise ValueError(f"exposure_scale must be positive: {exposure_scale}.")

    rng = make_rng(rng_seed)
    image = np.clip(clean.data * exposure_scale, 0, 1)
    nsat = int((image >= 1).sum())
    if nsat and warn_saturation:
        mylog.warning(f"{nsat} of {image.size} pixels saturated.")

    if spec.shot_noise:
        well = 2**spec.bit_depth * well_per_level
        image = rng.poisson(image * well) / well
    if spec.read_noise_sigma > 0:
        image = image + rng.normal(0, spec.read_noise_sigma, size=image.shape)
    image = np.clip(image, 0, 1)
    if spec.quantize:
        image = np.rint(image * spec.levels) / spec.levels
    return Frame(spec.width_px, spec.height_px, image)

def scene_exposure(clean, cfg, max_peak=None):
    """
    The calibration exposure, shortened if needed so the brightest
    clean pixel stays at or below max_peak of full scale.
    """
    exposure = cfg.exposure
    if max_peak is None:
        return exposure
    peak = float(clean.data.max()) * exposure
    if peak > max_peak:
        exposure *= max_peak / peak
    return exposure

def capture_averaged(x, cfg, spec=None, n_frames=1, rng_seed=0,
                     max_peak=None):
    """
    Mean of n_frames independent captures of a scene.

    Frame k is exposed with the seed (rng_seed, k). For a noiseless
    sensor the clean rendered frame is returned unchanged.

    If max_peak is given, a scene too bright for the calibration
    exposure is captured with a shorter one and the mean is scaled
    back by the exposure ratio, so the result stays in the units of
    a calibration recorded with cfg.

    Parameters
    ----------
    x : SceneVector
    cfg : OpticsConfig
    spec : optional, SensorSpec
        Defaults to cfg.sensor.
    n_frames : optional, int
        Number of frames to average.
        Default: 1
    rng_seed : int or tuple of ints
    max_peak : optional, float
        Ceiling on the brightest clean pixel, as a fraction of full
        scale.

    Returns
    -------
    Frame
    """

    if int(n_frames) < 1:
        raise ValueError(f"n_frames must be at least 1: {n_frames}.")
    if spec is None:
        spec = cfg.sensor

    clean = render_scene(x, cfg)
    if spec.is_noiseless:
        return clean

    exposure = scene_exposure(clean, cfg, max_peak=max_peak)
    if exposure != cfg.exposure:
        mylog.debug(f"Exposure shortened by {cfg.exposure / exposure:.3g}.")

    base = tuple(always_iterable(rng_seed))
    total = np.zeros(spec.shape)
    for k in range(int(n_frames)):
        total += expose(clean, spec, exposure, base + (k,),
                        warn_saturation=(k == 0)).data
    total *= cfg.exposure / exposure
    return Frame(spec.width_px, spec.height_px, total / int(n_frames))
