"""
SensorSpec, DustScatterer, and OpticsConfig classes



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import dataclass, field, replace
import hashlib
import json
from more_itertools import always_iterable

from lensless.data_structures.scene import \
    SourceGrid
from lensless.utilities.exceptions import \
    LenslessConfigError

# the distances of the reference distance sweep, in mm
default_distances = (85., 165., 242., 343., 497.)

# fraction of full scale reached by a single on-axis source
# when the calibration exposure is chosen automatically
auto_exposure_peak = 0.9

# ceiling on the brightest clean pixel of a scene capture
scene_exposure_peak = 0.8

def _check_keys(data, allowed, where):
    if not isinstance(data, dict):
        raise LenslessConfigError(f"expected an object, got {type(data).__name__}",
                                  key=where)
    unknown = set(data) - set(allowed)
    if unknown:
        raise LenslessConfigError(f"unknown keys {sorted(unknown)}", key=where)

@dataclass(frozen=True)
class SensorSpec:
    """
    Geometry, digitization, and noise of the bare image sensor.

    Parameters
    ----------
    width_px, height_px : int
        Sensor dimensions in pixels.
    pixel_pitch_um : float
        Pixel size in micrometers.
    bit_depth : int
        One of 8, 12, or 16.
    read_noise_sigma : float
        Standard deviation of Gaussian read noise, as a fraction
        of full scale.
    shot_noise : bool
        Add Poisson photon noise.
    quantize : bool
        Round captured values to the bit_depth levels.
    """

    width_px: int
    height_px: int
    pixel_pitch_um: float = 6.0
    bit_depth: int = 8
    read_noise_sigma: float = 0.005
    shot_noise: bool = False
    quantize: bool = True

    def __post_init__(self):
        if int(self.width_px) < 1 or int(self.height_px) < 1:
            raise LenslessConfigError(
                f"{self.width_px}x{self.height_px} must be at least 1x1", key="sensor")
        if not self.pixel_pitch_um > 0:
            raise LenslessConfigError(
                f"{self.pixel_pitch_um} must be positive", key="pixel_pitch_um")
        if self.bit_depth not in (8, 12, 16):
            raise LenslessConfigError(
                f"{self.bit_depth} is not one of 8, 12, 16", key="bit_depth")
        if not self.read_noise_sigma >= 0:
            raise LenslessConfigError(
                f"{self.read_noise_sigma} must be nonnegative", key="read_noise_sigma")
        object.__setattr__(self, "width_px", int(self.width_px))
        object.__setattr__(self, "height_px", int(self.height_px))
        object.__setattr__(self, "pixel_pitch_um", float(self.pixel_pitch_um))
        object.__setattr__(self, "read_noise_sigma", float(self.read_noise_sigma))

    @property
    def n_pixels(self):
        return self.width_px * self.height_px

    @property
    def shape(self):
        return (self.height_px, self.width_px)

    @property
    def pixel_pitch_mm(self):
        return self.pixel_pitch_um / 1000

    @property
    def levels(self):
        return 2**self.bit_depth - 1

    @property
    def is_noiseless(self):
        return self.read_noise_sigma == 0 and \
          not self.shot_noise and not self.quantize

    def noiseless(self):
        return replace(self, read_noise_sigma=0., shot_noise=False, quantize=False)

    def to_dict(self):
        return {"width_px": self.width_px, "height_px": self.height_px,
                "pixel_pitch_um": self.pixel_pitch_um,
                "bit_depth": self.bit_depth,
                "read_noise_sigma": self.read_noise_sigma,
                "shot_noise": self.shot_noise,
                "quantize": self.quantize}

    @classmethod
    def from_dict(cls, data):
        _check_keys(data, cls.__dataclass_fields__, "sensor")
        try:
            return cls(**data)
        except TypeError as err:
            raise LenslessConfigError(str(err), key="sensor")

@dataclass(frozen=True)
class DustScatterer:
    """
    An opaque particle on the cover glass.

    Parameters
    ----------
    pos_mm : tuple of float
        Lateral (x, y) position relative to the sensor center.
    height_mm : float
        Height of the particle above the pixel plane.
    radius_mm : float
        Particle radius.
    opacity : float
        Fraction of light blocked, in (0, 1].
    """

    pos_mm: tuple
    height_mm: float
    radius_mm: float
    opacity: float = 0.8

    def __post_init__(self):
        pos = tuple(float(v) for v in always_iterable(self.pos_mm))
        if len(pos) != 2:
            raise LenslessConfigError(f"{self.pos_mm} is not an (x, y) pair",
                                      key="pos_mm")
        object.__setattr__(self, "pos_mm", pos)
        if not self.height_mm > 0:
            raise LenslessConfigError(f"{self.height_mm} must be positive",
                                      key="height_mm")
        if not self.radius_mm > 0:
            raise LenslessConfigError(f"{self.radius_mm} must be positive",
                                      key="radius_mm")
        if not 0 < self.opacity <= 1:
            raise LenslessConfigError(f"{self.opacity} must be in (0, 1]",
                                      key="opacity")

    def to_dict(self):
        return {"pos_mm": list(self.pos_mm), "height_mm": self.height_mm,
                "radius_mm": self.radius_mm, "opacity": self.opacity}

    @classmethod
    def from_dict(cls, data):
        _check_keys(data, cls.__dataclass_fields__, "scatterers")
        try:
            return cls(**data)
        except TypeError as err:
            raise LenslessConfigError(str(err), key="scatterers")

@dataclass(frozen=True)
class OpticsConfig:
    """
    The complete simulated setup: sensor, object-plane grid, object
    distance, dust particles, and the static texture field.

    Parameters
    ----------
    sensor : SensorSpec
    grid : SourceGrid
    distance_mm : float
        Object distance D from the pixel plane.
    scatterers : tuple of DustScatterer
    texture_seed : int
        Seed of the static multiplicative texture field.
    texture_amplitude : float
        Texture strength a, in [0, 0.5].
    envelope_exponent : float
        Power k of the cos(theta)**k radiometric falloff.
    exposure_scale : optional, float
        Factor applied to the rendered intensity at calibration. If
        None, the exposure places a single on-axis source at 90%
        of full scale.
    acceptance_width_rad : optional, float
        Angular width of the pixel response. None gives pixels that
        accept light from every direction.
    pupil_distance_mm : float
        Height above the pixel plane of the point the microlens
        chief rays aim at.
    """

    sensor: SensorSpec
    grid: SourceGrid
    distance_mm: float
    scatterers: tuple = field(default_factory=tuple)
    texture_seed: int = 7
    texture_amplitude: float = 0.05
    envelope_exponent: float = 4.
    exposure_scale: float = None
    acceptance_width_rad: float = None
    pupil_distance_mm: float = 1.7

    def __post_init__(self):
        object.__setattr__(self, "scatterers", tuple(self.scatterers))
        object.__setattr__(self, "distance_mm", float(self.distance_mm))
        hmax = max([p.height_mm for p in self.scatterers], default=0.)
        if not self.distance_mm > hmax:
            raise LenslessConfigError(
                f"{self.distance_mm} must exceed the largest scatterer height ({hmax})",
                key="distance_mm")
        if not 0 <= self.texture_amplitude <= 0.5:
            raise LenslessConfigError(
                f"{self.texture_amplitude} is not in [0, 0.5]", key="texture_amplitude")
        if self.exposure_scale is not None and not self.exposure_scale > 0:
            raise LenslessConfigError(
                f"{self.exposure_scale} must be positive", key="exposure_scale")
        if self.acceptance_width_rad is not None and \
          not self.acceptance_width_rad > 0:
            raise LenslessConfigError(
                f"{self.acceptance_width_rad} must be positive",
                key="acceptance_width_rad")
        if not self.pupil_distance_mm > 0:
            raise LenslessConfigError(
                f"{self.pupil_distance_mm} must be positive", key="pupil_distance_mm")

    @property
    def exposure(self):
        if self.exposure_scale is not None:
            return self.exposure_scale
        return auto_exposure_peak * self.distance_mm**2 / \
          (1 + self.texture_amplitude)

    def with_distance(self, distance_mm):
        return replace(self, distance_mm=distance_mm)

    def without_scatterers(self):
        return replace(self, scatterers=())

    def without_acceptance(self):
        return replace(self, acceptance_width_rad=None)

    def without_texture(self):
        return replace(self, texture_amplitude=0.)

    def noiseless(self):
        return replace(self, sensor=self.sensor.noiseless())

    def to_dict(self):
        return {"sensor": self.sensor.to_dict(),
                "grid": self.grid.to_dict(),
                "distance_mm": self.distance_mm,
                "scatterers": [p.to_dict() for p in self.scatterers],
                "texture_seed": self.texture_seed,
                "texture_amplitude": self.texture_amplitude,
                "envelope_exponent": self.envelope_exponent,
                "exposure_scale": self.exposure_scale,
                "acceptance_width_rad": self.acceptance_width_rad,
                "pupil_distance_mm": self.pupil_distance_mm}

    @classmethod
    def from_dict(cls, data):
        _check_keys(data, cls.__dataclass_fields__, "optics")
        data = dict(data)
        for key in ("sensor", "grid", "distance_mm"):
            if key not in data:
                raise LenslessConfigError("missing", key=f"optics.{key}")
        data["sensor"] = SensorSpec.from_dict(data["sensor"])
        _check_keys(data["grid"], SourceGrid.__dataclass_fields__, "grid")
        try:
            data["grid"] = SourceGrid(**data["grid"])
        except (TypeError, ValueError) as err:
            raise LenslessConfigError(str(err), key="grid")
        data["scatterers"] = tuple(
            DustScatterer.from_dict(p) for p in data.get("scatterers", ()))
        return cls(**data)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise LenslessConfigError(f"not valid JSON ({err})")
        return cls.from_dict(data)

    @property
    def digest(self):
        """
        Hex SHA-256 of the canonical JSON form, used as provenance.
        """
        text = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

# Placeholder particles: sizes and heights are not measured values.
# Their shadows land on a 96x72 sensor for every source at
# D = 343 mm.
placeholder_scatterers = (
    DustScatterer(pos_mm=(-0.080, -0.024), height_mm=0.45,
                  radius_mm=0.036, opacity=0.85),
    DustScatterer(pos_mm=(0.090, 0.030), height_mm=0.35,
                  radius_mm=0.030, opacity=0.7),
    DustScatterer(pos_mm=(0.010, 0.060), height_mm=0.55,
                  radius_mm=0.042, opacity=0.9),
)

def desk_scale_config(**kwargs):
    """
    The default simulation: 96x72 sensor of 6 um pixels, 16x16 grid
    of 6.1 mm pitch at D = 343 mm, three dust particles, 5% texture,
    and pixels with a 0.03 rad acceptance.

    Keyword arguments replace fields of the returned OpticsConfig.
    """
    cfg = OpticsConfig(
        sensor=SensorSpec(96, 72, pixel_pitch_um=6., bit_depth=8,
                          read_noise_sigma=0.005),
        grid=SourceGrid(16, 16, 6.1),
        distance_mm=343.,
        scatterers=placeholder_scatterers,
        texture_seed=7,
        texture_amplitude=0.05,
        acceptance_width_rad=0.03,
        pupil_distance_mm=1.7)
    return replace(cfg, **kwargs)

def full_scale_config(**kwargs):
    """
    The full-size setup: 640x480 sensor and a 32x32 grid.
    """
    cfg = desk_scale_config(
        sensor=SensorSpec(640, 480, pixel_pitch_um=6., bit_depth=8,
                          read_noise_sigma=0.005),
        grid=SourceGrid(32, 32, 6.1))
    return replace(cfg, **kwargs)
