"""
tests for the forward model and sensor model



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import replace
from hypothesis import given, settings, strategies as st
import numpy as np
from numpy.testing import \
    assert_allclose, \
    assert_array_equal, \
    assert_equal
import pytest
from unittest import mock

from lensless.data_structures.frame import Frame
from lensless.data_structures.optics_config import \
    DustScatterer, \
    OpticsConfig, \
    SensorSpec, \
    desk_scale_config, \
    full_scale_config
from lensless.data_structures.patterns import make_pattern
from lensless.data_structures.scene import \
    SceneVector, \
    SourceGrid, \
    index_of, \
    source_position_mm
from lensless.simulation.forward_model import \
    acceptance, \
    envelope, \
    pixel_coordinates, \
    render_psf, \
    render_scene, \
    shadow_center, \
    shadow_fov, \
    texture_field
from lensless.simulation.sensor_model import \
    capture_averaged, \
    expose, \
    scene_exposure
from lensless.utilities.exceptions import \
    GridMismatch, \
    LenslessConfigError
from lensless.utilities.testing import \
    assert_rel_equal, \
    small_config

def ray_plane_intersection(source, particle):
    """
    Where the ray from a source through a particle meets z = 0.
    """
    source = np.asarray(source, dtype=np.float64)
    particle = np.asarray(particle, dtype=np.float64)
    t = source[2] / (source[2] - particle[2])
    return source[:2] + t * (particle[:2] - source[:2])

@settings(max_examples=1000, deadline=None)
@given(px=st.floats(-1, 1), py=st.floats(-1, 1),
       h=st.floats(0.05, 2), sx=st.floats(-60, 60), sy=st.floats(-60, 60),
       D=st.floats(10, 1000))
def test_shadow_center_geometry(px, py, h, sx, sy, D):
    p = DustScatterer(pos_mm=(px, py), height_mm=h, radius_mm=0.01)
    expected = ray_plane_intersection((sx, sy, D), (px, py, h))
    assert_allclose(shadow_center(p, (sx, sy), D), expected, rtol=0, atol=1e-9)

def test_shadow_center_too_close():
    p = DustScatterer(pos_mm=(0, 0), height_mm=1., radius_mm=0.01)
    with pytest.raises(ValueError):
        shadow_center(p, (0, 0), 1.)

def test_linearity():
    cfg = small_config()
    rng = np.random.default_rng(11)
    for _ in range(20):
        x = SceneVector(cfg.grid, rng.uniform(0, 1, cfg.grid.size))
        y = SceneVector(cfg.grid, rng.uniform(0, 1, cfg.grid.size))
        a, b = (float(v) for v in rng.uniform(0, 2, 2))
        combined = render_scene(a * x + b * y, cfg).data
        separate = a * render_scene(x, cfg).data + b * render_scene(y, cfg).data
        assert_rel_equal(combined, separate, 1e-12)

def test_one_hot_renders_psf():
    cfg = small_config()
    for j in (0, 5, 15):
        x = SceneVector.one_hot(cfg.grid, j)
        assert render_scene(x, cfg) == render_psf(j, cfg)

def test_render_grid_mismatch():
    cfg = small_config()
    with pytest.raises(GridMismatch):
        render_scene(make_pattern("full-on", SourceGrid(3, 3, 6.1)), cfg)

def test_envelope_inverse_square():
    sensor = SensorSpec(1, 1)
    for D in (85., 343., 497.):
        cfg = OpticsConfig(sensor=sensor, grid=SourceGrid(1, 1, 6.1),
                           distance_mm=D)
        assert_allclose(envelope((0., 0.), cfg), 1 / D**2, rtol=1e-14)

def test_envelope_falloff():
    cfg = small_config(texture_amplitude=0., scatterers=())
    center = render_psf(5, cfg)
    corner = render_psf(0, cfg)
    # farther from the axis, dimmer
    assert corner.data.mean() < center.data.mean()

def test_texture_bounds():
    cfg = desk_scale_config()
    T = texture_field(cfg)
    a = cfg.texture_amplitude
    assert_equal(T.shape, cfg.sensor.shape)
    assert T.min() >= 1 - a - 1e-12
    assert T.max() <= 1 + a + 1e-12
    assert_allclose(np.abs(T - 1).max(), a, rtol=1e-12)
    assert_array_equal(texture_field(cfg.without_texture()), 1)

def test_shadows_dim_pixels():
    cfg = small_config()
    clean = small_config(scatterers=())
    ratio = render_psf(6, cfg).data / render_psf(6, clean).data
    assert ratio.max() == 1
    opacity = cfg.scatterers[0].opacity
    assert_allclose(ratio.min(), 1 - opacity)

def test_blocked_rows():
    cfg = small_config(grid=SourceGrid(4, 4, 6.1, blocked_rows=1))
    for j in range(4):
        assert_array_equal(render_psf(j, cfg).data, 0)
    assert render_psf(4, cfg).data.min() > 0

def test_shadow_fov_grows_with_distance():
    cfg = desk_scale_config()
    fovs = [set(shadow_fov(cfg.with_distance(D))) for D in (85., 165., 343., 497.)]
    for near, far in zip(fovs[:-1], fovs[1:]):
        assert near <= far
    assert len(fovs[0]) < len(fovs[-1])

def test_shadow_fov_blocked():
    cfg = desk_scale_config(grid=SourceGrid(16, 16, 6.1, blocked_rows=3))
    assert min(shadow_fov(cfg)) >= 48

def test_config_validation():
    with pytest.raises(LenslessConfigError):
        small_config(distance_mm=0.5)
    with pytest.raises(LenslessConfigError):
        small_config(texture_amplitude=0.6)
    with pytest.raises(LenslessConfigError):
        SensorSpec(8, 8, bit_depth=10)
    with pytest.raises(LenslessConfigError):
        SensorSpec.from_dict({"width_px": 8, "height_px": 8, "gain": 2})
    with pytest.raises(LenslessConfigError):
        DustScatterer(pos_mm=(0, 0, 0), height_mm=1., radius_mm=0.1)
    with pytest.raises(LenslessConfigError):
        small_config(acceptance_width_rad=0.)
    with pytest.raises(LenslessConfigError):
        small_config(pupil_distance_mm=-1.)

def test_config_json():
    cfg = desk_scale_config()
    assert OpticsConfig.from_json(cfg.to_json()) == cfg
    assert cfg.digest == desk_scale_config().digest
    assert cfg.digest != cfg.with_distance(85.).digest
    assert cfg.digest != cfg.without_acceptance().digest
    assert OpticsConfig.from_json(small_config().to_json()) == small_config()
    with pytest.raises(LenslessConfigError):
        OpticsConfig.from_json("{")

def test_default_configs():
    desk = desk_scale_config()
    assert_equal(desk.sensor.shape, (72, 96))
    assert_equal(desk.grid.shape, (16, 16))
    assert_equal(len(desk.scatterers), 3)
    full = full_scale_config()
    assert_equal(full.sensor.shape, (480, 640))
    assert_equal(full.grid.shape, (32, 32))
    assert full.scatterers == desk.scatterers
    assert full_scale_config(distance_mm=85.).distance_mm == 85.

def test_auto_exposure():
    cfg = desk_scale_config()
    assert_allclose(cfg.exposure, 0.9 * 343.**2 / 1.05)
    assert replace(cfg, exposure_scale=3.).exposure == 3.

def test_noiseless_capture():
    cfg = small_config().noiseless()
    x = make_pattern("full-on", cfg.grid)
    frame = capture_averaged(x, cfg, n_frames=10, rng_seed=3)
    assert frame == render_scene(x, cfg)

def test_capture_deterministic():
    cfg = small_config()
    x = make_pattern("single(1, 2)", cfg.grid)
    f1 = capture_averaged(x, cfg, n_frames=3, rng_seed=(4, 1))
    f2 = capture_averaged(x, cfg, n_frames=3, rng_seed=(4, 1))
    f3 = capture_averaged(x, cfg, n_frames=3, rng_seed=(4, 2))
    assert f1 == f2
    assert f1 != f3

def test_quantization():
    cfg = small_config()
    x = make_pattern("single(1, 2)", cfg.grid)
    frame = capture_averaged(x, cfg, rng_seed=0)
    levels = frame.data * cfg.sensor.levels
    assert_allclose(levels, np.rint(levels), atol=1e-9)

def test_read_noise_std():
    spec = SensorSpec(200, 100, read_noise_sigma=0.01, quantize=False)
    clean = Frame(200, 100, np.full((100, 200), 0.25))
    frame = expose(clean, spec, 2., rng_seed=1)
    assert_allclose((frame.data - 0.5).std(), 0.01, rtol=0.05)
    assert_allclose(frame.data.mean(), 0.5, atol=1e-3)

def test_saturation():
    spec = SensorSpec(4, 4, read_noise_sigma=0., quantize=False)
    clean = Frame(4, 4, np.full((4, 4), 0.8))
    assert_array_equal(expose(clean, spec, 2., rng_seed=0).data, 1)
    with pytest.raises(ValueError):
        expose(clean, spec, 0., rng_seed=0)

def test_shot_noise():
    spec = SensorSpec(200, 100, read_noise_sigma=0., shot_noise=True, quantize=False)
    clean = Frame(200, 100, np.full((100, 200), 0.5))
    frame = expose(clean, spec, 1., rng_seed=2)
    well = 2**spec.bit_depth * 10
    assert_allclose(frame.data.std(), np.sqrt(0.5 * well) / well, rtol=0.05)

def test_averaging_reduces_noise():
    cfg = replace(small_config(), sensor=replace(
        small_config().sensor, quantize=False, read_noise_sigma=0.01))
    x = make_pattern("single(1, 2)", cfg.grid)
    clean = render_scene(x, cfg).data * cfg.exposure
    one = capture_averaged(x, cfg, n_frames=1, rng_seed=5).data - clean
    many = capture_averaged(x, cfg, n_frames=16, rng_seed=5).data - clean
    ratio = many.std() / one.std()
    assert 0.18 < ratio < 0.32

def test_acceptance_on_axis():
    cfg = desk_scale_config()
    X, Y = pixel_coordinates(cfg.sensor)
    D, zp, w = cfg.distance_mm, cfg.pupil_distance_mm, cfg.acceptance_width_rad
    expected = np.exp(-(X**2 + Y**2) * (1 / zp - 1 / D)**2 / (2 * w**2))
    assert_allclose(acceptance((0., 0.), cfg), expected, rtol=1e-12)

def test_acceptance_spot_position():
    cfg = desk_scale_config()
    X, Y = pixel_coordinates(cfg.sensor)
    D, zp = cfg.distance_mm, cfg.pupil_distance_mm
    pitch = cfg.sensor.pixel_pitch_mm
    for r, c in ((0, 0), (3, 12), (15, 9)):
        s = source_position_mm(index_of(r, c, cfg.grid), cfg.grid)
        peak = np.unravel_index(np.argmax(acceptance(s, cfg)), X.shape)
        assert abs(X[peak] + s[0] * zp / (D - zp)) <= pitch / 2 + 1e-12
        assert abs(Y[peak] + s[1] * zp / (D - zp)) <= pitch / 2 + 1e-12

def test_acceptance_in_render():
    cfg = desk_scale_config()
    for j in (0, 100, 255):
        s = source_position_mm(j, cfg.grid)
        assert_allclose(render_psf(j, cfg).data,
                        render_psf(j, cfg.without_acceptance()).data * acceptance(s, cfg),
                        rtol=1e-12)

def test_acceptance_narrows_with_distance():
    # at small D neighboring sources land on different pixels
    cfg = desk_scale_config(scatterers=(), texture_amplitude=0.)
    a, b = index_of(8, 7, cfg.grid), index_of(8, 8, cfg.grid)
    overlaps = []
    for D in (85., 343.):
        pa = render_psf(a, cfg.with_distance(D)).vector
        pb = render_psf(b, cfg.with_distance(D)).vector
        overlaps.append(pa @ pb / np.linalg.norm(pa) / np.linalg.norm(pb))
    assert overlaps[0] < overlaps[1] < 1

def test_saturation_warning():
    spec = SensorSpec(4, 4, read_noise_sigma=0., quantize=False)
    with mock.patch("lensless.simulation.sensor_model.mylog") as log:
        expose(Frame(4, 4, np.full((4, 4), 0.2)), spec, 2., rng_seed=0)
        log.warning.assert_not_called()
        expose(Frame(4, 4, np.full((4, 4), 0.8)), spec, 2., rng_seed=0)
        log.warning.assert_called_once()

    cfg = small_config()
    with mock.patch("lensless.simulation.sensor_model.mylog") as log:
        capture_averaged(make_pattern("full-on", cfg.grid), cfg, n_frames=4)
        log.warning.assert_called_once()

def test_scene_exposure():
    cfg = small_config()
    dim = render_scene(0.5 * make_pattern("single(2, 2)", cfg.grid), cfg)
    assert scene_exposure(dim, cfg, max_peak=0.8) == cfg.exposure
    assert scene_exposure(dim, cfg) == cfg.exposure

    bright = render_scene(make_pattern("full-on", cfg.grid), cfg)
    exposure = scene_exposure(bright, cfg, max_peak=0.8)
    assert exposure < cfg.exposure
    assert_allclose(bright.data.max() * exposure, 0.8)

def test_bright_scene_capture():
    cfg = replace(small_config(), sensor=replace(
        small_config().sensor, quantize=False, read_noise_sigma=0.01))
    x = make_pattern("full-on", cfg.grid)
    clean = render_scene(x, cfg).data * cfg.exposure
    assert clean.max() > 1

    # the calibration exposure clips; the shortened one does not
    clipped = capture_averaged(x, cfg, n_frames=16, rng_seed=6)
    assert clipped.data.max() <= 1
    frame = capture_averaged(x, cfg, n_frames=16, rng_seed=6, max_peak=0.8)
    assert_allclose(frame.data, clean, rtol=0.05)

    noiseless = cfg.noiseless()
    assert capture_averaged(x, noiseless, max_peak=0.8) == render_scene(x, noiseless)
