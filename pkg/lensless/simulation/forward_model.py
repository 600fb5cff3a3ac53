"""
bare-sensor forward model



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from functools import lru_cache
import numpy as np
from scipy.ndimage import gaussian_filter

from lensless.data_structures.frame import \
    Frame
from lensless.data_structures.scene import \
    coords_of, \
    source_position_mm
from lensless.utilities.exceptions import \
    GridMismatch

# smoothing length of the texture field, in pixels
texture_sigma_px = 2.

def pixel_coordinates(sensor):
    """
    Lateral (x, y) pixel-center positions in mm, each of shape
    (height_px, width_px), with the sensor centered at (0, 0) and
    row 0 at +y.
    """
    return _pixel_coordinates(sensor.width_px, sensor.height_px,
                              sensor.pixel_pitch_mm)

@lru_cache(maxsize=8)
def _pixel_coordinates(width, height, pitch):
    x = (np.arange(width) - (width - 1) / 2) * pitch
    y = ((height - 1) / 2 - np.arange(height)) * pitch
    X, Y = np.meshgrid(x, y)
    X.setflags(write=False)
    Y.setflags(write=False)
    return X, Y

def mm_to_pixel(x_mm, y_mm, sensor):
    """
    Fractional (row, col) pixel coordinates of a lateral position.
    """
    p = sensor.pixel_pitch_mm
    col = x_mm / p + (sensor.width_px - 1) / 2
    row = (sensor.height_px - 1) / 2 - y_mm / p
    return row, col

def shadow_center(p, s_mm, D):
    """
    Center of the shadow a dust particle casts on the pixel plane.

    The particle at height h is projected from a point source at
    lateral position s and height D:
    center = pos + (pos - s) * h / (D - h).

    Parameters
    ----------
    p : DustScatterer
    s_mm : tuple of float
        Source lateral position.
    D : float
        Source height above the pixel plane, in mm.

    Returns
    -------
    (x_mm, y_mm)
    """
    h = p.height_mm
    if not D > h:
        raise ValueError(
            f"Source distance ({D} mm) must exceed the particle height ({h} mm).")
    f = h / (D - h)
    return (p.pos_mm[0] + (p.pos_mm[0] - s_mm[0]) * f,
            p.pos_mm[1] + (p.pos_mm[1] - s_mm[1]) * f)

def shadow_radius(p, D):
    """
    Radius in mm of the projected particle shadow.
    """
    return p.radius_mm * D / (D - p.height_mm)

def texture_field(cfg):
    """
    The static multiplicative texture T in [1 - a, 1 + a].

    The field depends only on the sensor shape, texture_seed, and
    texture_amplitude, so it is shared by every source.
    """
    return _texture_field(cfg.sensor.shape, cfg.texture_seed,
                          cfg.texture_amplitude)

@lru_cache(maxsize=8)
def _texture_field(shape, seed, amplitude):
    if amplitude == 0:
        field = np.ones(shape)
    else:
        rng = np.random.default_rng(seed)
        noise = gaussian_filter(rng.standard_normal(shape),
                                sigma=texture_sigma_px, mode="reflect")
        noise /= np.abs(noise).max()
        field = 1 + amplitude * noise
    field.setflags(write=False)
    return field

def envelope(s_mm, cfg):
    """
    Radiometric falloff (1 / D**2) * cos(theta)**k of a point
    source over the sensor.
    """
    X, Y = pixel_coordinates(cfg.sensor)
    D = cfg.distance_mm
    r2 = (X - s_mm[0])**2 + (Y - s_mm[1])**2
    cos_theta = D / np.sqrt(D**2 + r2)
    return cos_theta**cfg.envelope_exponent / D**2

def acceptance(s_mm, cfg):
    """
    Angular response of the pixels to a source at lateral position s.

    Each pixel accepts light in a Gaussian cone of width w around
    its chief ray, which tilts toward a pupil point at height z_p
    above the sensor center. For a pixel at x the ray from the
    source arrives at an angle (s - x) / D and the chief ray points
    along -x / z_p, so the response is

        exp(-|(s - x) / D + x / z_p|**2 / (2 * w**2)).

    A source lights a patch of width about w * z_p centered at
    -s * z_p / (D - z_p). At small D the patches of neighboring
    sources fall off the sensor.
    """
    X, Y = pixel_coordinates(cfg.sensor)
    D = cfg.distance_mm
    zp = cfg.pupil_distance_mm
    w = cfg.acceptance_width_rad
    dx = (s_mm[0] - X) / D + X / zp
    dy = (s_mm[1] - Y) / D + Y / zp
    return np.exp(-(dx**2 + dy**2) / (2 * w**2))

def shadow_factor(p, s_mm, cfg):
    """
    Dimming factor 1 - opacity * w of one particle, where w is 1
    inside the projected disk and falls to 0 over one pixel at
    the rim.
    """
    X, Y = pixel_coordinates(cfg.sensor)
    D = cfg.distance_mm
    pitch = cfg.sensor.pixel_pitch_mm
    cx, cy = shadow_center(p, s_mm, D)
    R = shadow_radius(p, D) / pitch
    d = np.sqrt((X - cx)**2 + (Y - cy)**2) / pitch
    w = np.clip(R - d + 0.5, 0, 1)
    return 1 - p.opacity * w

def render_psf(source_index, cfg):
    """
    Render the noiseless sensor image of a single source.

    The image is the product of the radiometric envelope, the
    static texture field, the pixel acceptance if one is set, and
    one shadow factor per particle. Sources in blocked rows render
    as all-zero frames.

    Parameters
    ----------
    source_index : int
        Flattened source index.
    cfg : OpticsConfig

    Returns
    -------
    Frame
    """

    coords_of(source_index, cfg.grid)
    sensor = cfg.sensor
    if cfg.grid.is_blocked(source_index):
        return Frame(sensor.width_px, sensor.height_px,
                     np.zeros(sensor.shape))

    s = source_position_mm(source_index, cfg.grid)
    image = envelope(s, cfg) * texture_field(cfg)
    if cfg.acceptance_width_rad is not None:
        image = image * acceptance(s, cfg)
    for p in cfg.scatterers:
        image = image * shadow_factor(p, s, cfg)
    return Frame(sensor.width_px, sensor.height_px, image)

def render_scene(x, cfg):
    """
    Render the noiseless sensor image of a scene as the
    intensity-weighted sum of the single-source images.

    Parameters
    ----------
    x : SceneVector
    cfg : OpticsConfig

    Returns
    -------
    Frame
    """

    if not x.grid.same_layout(cfg.grid):
        raise GridMismatch(str(cfg.grid), str(x.grid))
    image = np.zeros(cfg.sensor.shape)
    for i in np.flatnonzero(x.values):
        image += x.values[i] * render_psf(int(i), cfg).data
    return Frame(cfg.sensor.width_px, cfg.sensor.height_px, image)

def psf_matrix(cfg):
    """
    All noiseless single-source images as columns of an
    (n_pixels, n_sources) array.
    """
    A = np.empty((cfg.sensor.n_pixels, cfg.grid.size))
    for j in range(cfg.grid.size):
        A[:, j] = render_psf(j, cfg).vector
    return A

def shadow_fov(cfg):
    """
    Sources whose particle shadows all land entirely on the sensor.

    These are the sources whose position-encoding shadows are
    recorded. Blocked sources are never included.

    Returns
    -------
    list of int
    """

    sensor = cfg.sensor
    half_w = sensor.width_px * sensor.pixel_pitch_mm / 2
    half_h = sensor.height_px * sensor.pixel_pitch_mm / 2
    D = cfg.distance_mm
    indices = []
    for j in range(cfg.grid.size):
        if cfg.grid.is_blocked(j):
            continue
        s = source_position_mm(j, cfg.grid)
        inside = True
        for p in cfg.scatterers:
            cx, cy = shadow_center(p, s, D)
            R = shadow_radius(p, D)
            if abs(cx) + R > half_w or abs(cy) + R > half_h:
                inside = False
                break
        if inside:
            indices.append(j)
    return indices
