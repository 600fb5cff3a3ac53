"""
CalibrationMatrix, CalibrationStack, and PixelMask classes



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import dataclass, field, replace
import numpy as np

from lensless.data_structures.scene import \
    SourceGrid
from lensless.utilities.exceptions import \
    DimensionMismatch, \
    LenslessDataError, \
    MaskError, \
    NonFiniteData

@dataclass(frozen=True)
class PixelMask:
    """
    Pixel rectangles to exclude from a calibration and its
    measurements.

    Parameters
    ----------
    rects : tuple of (x0, y0, width, height)
        Rectangles in pixel units, x0 counting columns from the
        left and y0 counting rows from the top.
    """

    rects: tuple = ()

    def __post_init__(self):
        rects = []
        for rect in self.rects:
            rect = tuple(int(v) for v in rect)
            if len(rect) != 4:
                raise MaskError(f"{rect} is not (x0, y0, width, height)")
            if rect[2] < 1 or rect[3] < 1 or rect[0] < 0 or rect[1] < 0:
                raise MaskError(f"{rect} has negative origin or empty size")
            rects.append(rect)
        object.__setattr__(self, "rects", tuple(rects))

    @property
    def is_empty(self):
        return len(self.rects) == 0

    def check_bounds(self, width, height):
        for x0, y0, w, h in self.rects:
            if x0 + w > width or y0 + h > height:
                raise MaskError(
                    f"rectangle {(x0, y0, w, h)} exceeds the {width}x{height} sensor")

    def keep_map(self, width, height):
        """
        Boolean (height, width) array, True for pixels that are kept.
        """
        self.check_bounds(width, height)
        keep = np.ones((height, width), dtype=bool)
        for x0, y0, w, h in self.rects:
            keep[y0:y0+h, x0:x0+w] = False
        return keep

    def union(self, other):
        return PixelMask(self.rects + tuple(
            rect for rect in other.rects if rect not in self.rects))

    def to_list(self):
        return [list(rect) for rect in self.rects]

@dataclass(frozen=True)
class CalibrationMeta:
    """
    Acquisition metadata of a calibration matrix.

    The created_from provenance string is not stored in LCAL1 files
    and does not take part in comparisons.
    """

    distance_mm: float
    grid_rows: int
    grid_cols: int
    pitch_mm: float
    sensor_w: int
    sensor_h: int
    pixel_pitch_um: float
    n_avg: int = 1
    mask: PixelMask = field(default_factory=PixelMask)
    created_from: str = field(default="external", compare=False)

    @property
    def grid(self):
        return SourceGrid(self.grid_rows, self.grid_cols, self.pitch_mm)

    @property
    def n_sources(self):
        return self.grid_rows * self.grid_cols

    @property
    def n_pixels(self):
        keep = self.mask.keep_map(self.sensor_w, self.sensor_h)
        return int(keep.sum())

    def same_geometry(self, other):
        """
        True if grid and sensor match, ignoring distance.
        """
        keys = ("grid_rows", "grid_cols", "pitch_mm",
                "sensor_w", "sensor_h", "pixel_pitch_um")
        return all(getattr(self, key) == getattr(other, key) for key in keys)

    def to_dict(self):
        return {"distance_mm": self.distance_mm,
                "grid_rows": self.grid_rows, "grid_cols": self.grid_cols,
                "pitch_mm": self.pitch_mm,
                "sensor_w": self.sensor_w, "sensor_h": self.sensor_h,
                "pixel_pitch_um": self.pixel_pitch_um,
                "n_avg": self.n_avg, "mask": self.mask.to_list(),
                "created_from": self.created_from}

    @classmethod
    def from_config(cls, cfg, n_avg=1, created_from=None):
        if created_from is None:
            created_from = f"sim:{cfg.digest}"
        return cls(distance_mm=cfg.distance_mm,
                   grid_rows=cfg.grid.rows, grid_cols=cfg.grid.cols,
                   pitch_mm=cfg.grid.pitch_mm,
                   sensor_w=cfg.sensor.width_px, sensor_h=cfg.sensor.height_px,
                   pixel_pitch_um=cfg.sensor.pixel_pitch_um,
                   n_avg=int(n_avg), created_from=created_from)

class CalibrationMatrix:
    """
    The calibration matrix A: column j holds the flattened,
    averaged sensor image of source j.

    Parameters
    ----------
    data : array_like
        Array of shape (n_pixels, n_sources).
    meta : CalibrationMeta
    """
    def __init__(self, data, meta):
        data = np.array(data, dtype=np.float64)
        if data.ndim != 2:
            raise DimensionMismatch("2-D array", data.shape, what="calibration data")
        expected = (meta.n_pixels, meta.n_sources)
        if data.shape != expected:
            raise DimensionMismatch(expected, data.shape, what="calibration data")
        if not np.isfinite(data).all():
            raise NonFiniteData("calibration data")
        if (data < 0).any():
            raise LenslessDataError("Calibration entries must be nonnegative.")
        data.setflags(write=False)
        self.data = data
        self.meta = meta
        self._factors = None

    @property
    def n_pixels(self):
        return self.data.shape[0]

    @property
    def n_sources(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def grid(self):
        return self.meta.grid

    @property
    def distance_mm(self):
        return self.meta.distance_mm

    def column(self, index):
        return self.data[:, index]

    def column_image(self, index):
        """
        Column as a (sensor_h, sensor_w) image, with masked pixels
        set to zero.
        """
        keep = self.meta.mask.keep_map(self.meta.sensor_w, self.meta.sensor_h)
        image = np.zeros(keep.shape)
        image[keep] = self.data[:, index]
        return image

    def with_meta(self, **kwargs):
        return CalibrationMatrix(self.data, replace(self.meta, **kwargs))

    @property
    def factors(self):
        """
        SVD factors, computed on first access.
        """
        if self._factors is None:
            from lensless.solver.svd import svd
            self._factors = svd(self)
        return self._factors

    @property
    def digest(self):
        """
        SHA-256 of the LCAL1 serialization (32 bytes).
        """
        from lensless.calibration.io import calibration_digest
        return calibration_digest(self)

    def __eq__(self, other):
        if not isinstance(other, CalibrationMatrix):
            return NotImplemented
        return self.meta == other.meta and \
          np.array_equal(self.data, other.data)

    def __repr__(self):
        return (f"CalibrationMatrix({self.n_pixels}x{self.n_sources}, "
                f"D={self.distance_mm} mm)")

class CalibrationStack:
    """
    Calibration matrices of one setup at several object distances.

    Entries are kept in order of increasing distance.

    Parameters
    ----------
    entries : list of CalibrationMatrix
    """
    def __init__(self, entries):
        entries = sorted(entries, key=lambda A: A.distance_mm)
        if len(entries) == 0:
            raise LenslessDataError("A calibration stack needs at least one entry.")
        distances = [A.distance_mm for A in entries]
        if len(set(distances)) != len(distances):
            raise LenslessDataError(
                f"Calibration stack distances must be distinct: {distances}.")
        first = entries[0]
        for A in entries[1:]:
            if not A.meta.same_geometry(first.meta) or A.shape != first.shape:
                raise DimensionMismatch(
                    first.shape, A.shape,
                    what=f"calibration stack entry at {A.distance_mm} mm")
        self.entries = tuple(entries)

    @property
    def distances(self):
        return [A.distance_mm for A in self.entries]

    @property
    def grid(self):
        return self.entries[0].grid

    @property
    def meta(self):
        return self.entries[0].meta

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def at_distance(self, distance_mm):
        for A in self.entries:
            if A.distance_mm == distance_mm:
                return A
        raise KeyError(f"No calibration at {distance_mm} mm.")

    def __repr__(self):
        return f"CalibrationStack(D={self.distances})"
