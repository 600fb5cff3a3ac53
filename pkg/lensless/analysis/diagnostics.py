"""
calibration diagnostics and binarization



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

from lensless.data_structures.frame import \
    Frame
from lensless.data_structures.patterns import \
    line_indices
from lensless.data_structures.scene import \
    SceneVector
from lensless.utilities.exceptions import \
    DegenerateHistogram, \
    DimensionMismatch, \
    NonFiniteData, \
    UndefinedCorrelation
from lensless.utilities.io import \
    write_csv
from lensless.utilities.misc import \
    parse_operator_id

otsu_bins = 256

def singular_decay(f):
    """
    Normalized singular-value spectrum.

    Returns
    -------
    list of (index, S_i / S_0), starting at (0, 1.0)
    """
    ratio = f.S / f.S[0]
    return [(i, float(r)) for i, r in enumerate(ratio)]

def decay_index(f, level=1e-2):
    """
    First index at which S_i / S_0 drops below level, or the rank
    if it never does.
    """
    ratio = f.S / f.S[0]
    below = np.flatnonzero(ratio < level)
    return int(below[0]) if below.size else int(ratio.size)

def save_decay(f, filename):
    return write_csv(filename, ["index", "s_over_s0"], singular_decay(f))

def pearson(u, v):
    """
    Pearson correlation coefficient of two vectors.

    Raises UndefinedCorrelation if either input is constant.

    Examples
    --------
    >>> pearson([1, 2, 3, 4], [1, 3, 2, 4])
    0.8
    """
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if u.size != v.size or u.size < 2:
        raise DimensionMismatch(u.size, v.size, what="correlation inputs")
    du = u - u.mean()
    dv = v - v.mean()
    denom = np.sqrt(np.dot(du, du) * np.dot(dv, dv))
    if denom == 0:
        raise UndefinedCorrelation()
    return float(np.clip(np.dot(du, dv) / denom, -1, 1))

@dataclass
class CorrelationMap:
    """
    Pairwise Pearson coefficients between calibration columns along
    a line of sources.
    """

    line: str
    position: int
    indices: list
    values: np.ndarray

    @property
    def off_diagonal(self):
        n = len(self.indices)
        return self.values[~np.eye(n, dtype=bool)]

    @property
    def max_off_diagonal(self):
        return float(self.off_diagonal.max())

    @property
    def mean_off_diagonal(self):
        return float(self.off_diagonal.mean())

    def save(self, filename):
        header = ["source"] + [str(j) for j in self.indices]
        rows = [[j] + list(row) for j, row in zip(self.indices, self.values)]
        return write_csv(filename, header, rows)

def correlation_map(A, line, position=None):
    """
    Pearson correlation map of calibration columns along a line.

    Parameters
    ----------
    A : CalibrationMatrix
    line : "h", "v", or "diag"
    position : optional, int
        Row of a horizontal line, column of a vertical line, or
        column offset of a diagonal. Defaults to the center.

    Returns
    -------
    CorrelationMap
    """
    indices = line_indices(A.grid, line, position=position)
    n = len(indices)
    values = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            values[i, j] = values[j, i] = pearson(
                A.column(indices[i]), A.column(indices[j]))
    return CorrelationMap(line=line, position=position,
                          indices=indices, values=values)

def _clamped(values):
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if not np.isfinite(values).all():
        raise NonFiniteData("values to threshold")
    return np.clip(values, 0, None)

def _otsu_level(values):
    vmax = values.max()
    if values.min() == vmax:
        raise DegenerateHistogram()
    bins = np.minimum((values / vmax * otsu_bins).astype(int), otsu_bins - 1)
    p = np.bincount(bins, minlength=otsu_bins) / values.size
    levels = np.arange(otsu_bins)
    w0 = np.cumsum(p)[:-1]
    mu = np.cumsum(p * levels)[:-1]
    muT = np.sum(p * levels)
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma_b = (muT * w0 - mu)**2 / (w0 * (1 - w0))
    sigma_b[~np.isfinite(sigma_b)] = -1
    # the middle of a plateau of equal maxima
    best = np.flatnonzero(sigma_b == sigma_b.max())
    k = int(best[len(best) // 2])
    return k, bins, vmax

def otsu_threshold(values):
    """
    Otsu threshold of the clamped values over a 256-bin histogram.

    Values in bins above the returned level are classified as on.
    """
    k, _, vmax = _otsu_level(_clamped(values))
    return (k + 1) * vmax / otsu_bins

def threshold(values, method="otsu", grid=None):
    """
    Binarize a raw reconstruction.

    Negative values are clamped to 0 first.

    Parameters
    ----------
    values : array_like
    method : optional, str
        "otsu" or "fixed(t)", which keeps values above t times the
        maximum. Default: "otsu".
    grid : optional, SourceGrid
        If given, a SceneVector is returned.

    Returns
    -------
    array of 0s and 1s, or SceneVector
    """

    clamped = _clamped(values)
    name, args = parse_operator_id(method)
    if name == "otsu":
        k, bins, _ = _otsu_level(clamped)
        binary = (bins > k).astype(np.float64)
    elif name == "fixed":
        if len(args) != 1:
            raise ValueError(f"fixed threshold needs one argument: {method}.")
        binary = (clamped > args[0] * clamped.max()).astype(np.float64)
    else:
        raise ValueError(f"Unknown threshold method: {method}.")

    if grid is not None:
        return SceneVector(grid, binary)
    return binary

def scene_frame(values, grid):
    """
    A raw reconstruction as a (rows, cols) Frame scaled to [0, 1],
    with negative values clamped, for saving as an image.
    """
    image = _clamped(values)
    peak = image.max()
    if peak > 0:
        image = image / peak
    return Frame(grid.cols, grid.rows, image)
