"""
calibration acquisition, masking, and field of view



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

from lensless.data_structures.calibration_matrix import \
    CalibrationMatrix, \
    CalibrationMeta, \
    CalibrationStack, \
    PixelMask
from lensless.data_structures.frame import \
    Frame
from lensless.data_structures.scene import \
    SceneVector, \
    source_position_mm
from lensless.simulation.forward_model import \
    mm_to_pixel, \
    shadow_center, \
    shadow_radius
from lensless.simulation.sensor_model import \
    capture_averaged, \
    default_n_avg
from lensless.utilities.exceptions import \
    DimensionMismatch, \
    MaskError
from lensless.utilities.io import \
    progress_bar
from lensless.utilities.logger import \
    lenslessLogger as mylog
from lensless.utilities.parallel import \
    parallel_sources

def calibrate(cfg, spec=None, n_avg=default_n_avg, rng_seed=0, njobs=0, dynamic=False):
    """
    Record the calibration matrix of a simulated setup.

    Column j is the average of n_avg captures of source j alone,
    exposed with the base seed (rng_seed, j). Sources are divided
    among processors with yt's parallel_objects when running under
    MPI; the result does not depend on the process count.

    Parameters
    ----------
    cfg : OpticsConfig
    spec : optional, SensorSpec
        Sensor used for the captures. Defaults to cfg.sensor.
    n_avg : optional, int
        Frames averaged per source. Default: 100.
    rng_seed : optional, int
        Default: 0.
    njobs, dynamic : optional
        Passed to parallel_objects.

    Returns
    -------
    CalibrationMatrix
    """

    if int(n_avg) < 1:
        raise ValueError(f"n_avg must be at least 1: {n_avg}.")
    if spec is not None:
        cfg = replace(cfg, sensor=spec)

    grid = cfg.grid
    n = grid.size
    data = np.empty((cfg.sensor.n_pixels, n))

    pbar = progress_bar(f"Calibrating {n} sources at D = {cfg.distance_mm:g} mm", n)
    loop = parallel_sources(n, njobs=njobs, dynamic=dynamic)
    done = 0
    for store, j in loop:
        frame = capture_averaged(SceneVector.one_hot(grid, j), cfg,
                                 n_frames=n_avg, rng_seed=(rng_seed, j))
        store.result = frame.vector
        done += 1
        pbar.update(done)
    pbar.finish()

    for j in range(n):
        data[:, j] = loop.results[j]

    meta = CalibrationMeta.from_config(cfg, n_avg=n_avg)
    return CalibrationMatrix(data, meta)

def calibrate_stack(cfg, distances, spec=None, n_avg=default_n_avg, rng_seed=0, **kwargs):
    """
    Calibrate the same setup at several object distances.

    Returns
    -------
    CalibrationStack
    """
    entries = []
    for D in distances:
        mylog.info(f"Calibrating at D = {D:g} mm.")
        entries.append(calibrate(cfg.with_distance(D), spec=spec, n_avg=n_avg,
                                 rng_seed=rng_seed, **kwargs))
    return CalibrationStack(entries)

def apply_mask(target, mask):
    """
    Delete masked pixels from a calibration matrix or a frame.

    Parameters
    ----------
    target : CalibrationMatrix or Frame
    mask : PixelMask

    Returns
    -------
    CalibrationMatrix with the masked rows deleted and the mask
    recorded in its metadata, or the reduced measurement vector
    of a Frame.
    """

    if isinstance(target, Frame):
        keep = mask.keep_map(target.width_px, target.height_px)
        if not keep.any():
            raise MaskError("mask covers every pixel")
        return target.vector[keep.reshape(-1)]

    if not isinstance(target, CalibrationMatrix):
        raise TypeError(f"Cannot apply a mask to {type(target).__name__}.")

    meta = target.meta
    old_keep = meta.mask.keep_map(meta.sensor_w, meta.sensor_h)
    combined = meta.mask.union(mask)
    new_keep = combined.keep_map(meta.sensor_w, meta.sensor_h)
    if not new_keep.any():
        raise MaskError("mask covers every pixel")
    rows = new_keep[old_keep]
    return CalibrationMatrix(target.data[rows], replace(meta, mask=combined))

def measurement_vector(A, b):
    """
    The measurement b as a vector matching the rows of A.

    Parameters
    ----------
    A : CalibrationMatrix
    b : Frame or array_like
        A full sensor frame, which is checked against the sensor
        dimensions and reduced by the mask of A, or a vector of
        length A.n_pixels.
    """

    meta = A.meta
    if isinstance(b, Frame):
        if (b.width_px, b.height_px) != (meta.sensor_w, meta.sensor_h):
            raise DimensionMismatch(
                f"{meta.sensor_w}x{meta.sensor_h}",
                f"{b.width_px}x{b.height_px}", what="measurement frame")
        if meta.mask.is_empty:
            return b.vector
        return apply_mask(b, meta.mask)

    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if b.size != A.n_pixels:
        raise DimensionMismatch(A.n_pixels, b.size, what="measurement vector")
    return b

def shadow_mask(cfg, margin_px=2):
    """
    Rectangles covering the particle shadows of every source.

    One rectangle per particle bounds its shadow as the source
    moves over the whole grid. Each is padded by margin_px and
    clipped to the sensor. Blocked sources are skipped.

    Returns
    -------
    PixelMask
    """

    sensor = cfg.sensor
    D = cfg.distance_mm
    sources = [source_position_mm(j, cfg.grid) for j in range(cfg.grid.size)
               if not cfg.grid.is_blocked(j)]
    rects = []
    for p in cfg.scatterers:
        R = shadow_radius(p, D) / sensor.pixel_pitch_mm + margin_px
        centers = np.array([mm_to_pixel(*shadow_center(p, s, D), sensor)
                            for s in sources])
        if centers.size == 0:
            continue
        rows, cols = centers[:, 0], centers[:, 1]
        x0 = max(int(np.floor(cols.min() - R)), 0)
        x1 = min(int(np.ceil(cols.max() + R)), sensor.width_px - 1)
        y0 = max(int(np.floor(rows.min() - R)), 0)
        y1 = min(int(np.ceil(rows.max() + R)), sensor.height_px - 1)
        if x1 < x0 or y1 < y0:
            continue
        rects.append((x0, y0, x1 - x0 + 1, y1 - y0 + 1))
    return PixelMask(tuple(rects))

@dataclass
class FOVReport:
    """
    Per-source PSF extents of a calibration matrix.

    Attributes
    ----------
    tau : float
        Threshold fraction of each column's maximum.
    boxes : dict
        Source index to inclusive (x0, y0, x1, y1) pixel box, or
        None for all-zero columns.
    flagged : list of int
        Sources with all-zero columns.
    in_fov : list of int
        Sources whose box does not touch the sensor border.
    """

    tau: float
    boxes: dict = field(default_factory=dict)
    flagged: list = field(default_factory=list)
    in_fov: list = field(default_factory=list)

    @property
    def n_in_fov(self):
        return len(self.in_fov)

    def to_dict(self):
        return {"tau": self.tau,
                "boxes": {str(j): None if box is None else list(box)
                          for j, box in self.boxes.items()},
                "flagged": list(self.flagged),
                "in_fov": list(self.in_fov),
                "n_in_fov": self.n_in_fov}

def estimate_fov(A, tau=0.01):
    """
    Estimate the field of view from the extent of each PSF.

    For each source, the box bounding all pixels at or above tau
    times the column maximum is found. Sources whose box stays
    clear of the sensor border form the nominal field of view.

    Parameters
    ----------
    A : CalibrationMatrix
    tau : optional, float
        Threshold fraction, 0 < tau < 1. Default: 0.01.

    Returns
    -------
    FOVReport
    """

    if not 0 < tau < 1:
        raise ValueError(f"tau must be between 0 and 1: {tau}.")

    W, H = A.meta.sensor_w, A.meta.sensor_h
    report = FOVReport(tau=tau)
    for j in range(A.n_sources):
        image = A.column_image(j)
        peak = image.max()
        if peak <= 0:
            report.boxes[j] = None
            report.flagged.append(j)
            continue
        sel = image >= tau * peak
        rows = np.flatnonzero(sel.any(axis=1))
        cols = np.flatnonzero(sel.any(axis=0))
        box = (int(cols[0]), int(rows[0]), int(cols[-1]), int(rows[-1]))
        report.boxes[j] = box
        if box[0] > 0 and box[1] > 0 and box[2] < W - 1 and box[3] < H - 1:
            report.in_fov.append(j)

    if report.flagged:
        mylog.warning(f"{len(report.flagged)} sources have all-zero calibration columns.")
    return report
