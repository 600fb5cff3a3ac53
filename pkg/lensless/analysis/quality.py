"""
reconstruction quality scoring



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
from lensless.data_structures.patterns import \
    line_cells, \
    make_pattern
from lensless.data_structures.scene import \
    SceneVector
from lensless.solver.refocus import \
    relative_residual
from lensless.utilities.exceptions import \
    DegenerateHistogram, \
    GridMismatch
from lensless.utilities.logger import \
    lenslessLogger as mylog

# scene values are binary, so the PSNR peak is 1
psnr_peak = 1.

INF_SENTINEL = "+inf"

@dataclass
class QualityReport:
    """
    Scores of a reconstruction against its ground truth.

    Attributes
    ----------
    psnr_db : float
        PSNR of the raw reconstruction, inf for an exact match.
    pixel_accuracy : float
        Fraction of sources classified correctly after Otsu
        thresholding.
    residual_rel : float
        |Ax - b| / |b|, 0 when b = 0.
    """

    psnr_db: float
    pixel_accuracy: float
    residual_rel: float

    def to_dict(self):
        psnr = INF_SENTINEL if np.isinf(self.psnr_db) else self.psnr_db
        return {"psnr_db": psnr,
                "pixel_accuracy": self.pixel_accuracy,
                "residual_rel": self.residual_rel}

    @classmethod
    def from_dict(cls, data):
        psnr = data["psnr_db"]
        if psnr == INF_SENTINEL:
            psnr = np.inf
        return cls(float(psnr), float(data["pixel_accuracy"]),
                   float(data["residual_rel"]))

def psnr(values, truth):
    mse = np.mean((np.asarray(values, dtype=np.float64) - truth)**2)
    if mse == 0:
        return np.inf
    return float(10 * np.log10(psnr_peak**2 / mse))

def score(values, truth, A, b):
    """
    Score a raw reconstruction.

    Parameters
    ----------
    values : array_like
        Raw reconstruction of length n_sources.
    truth : SceneVector
        Binary ground truth.
    A : CalibrationMatrix
    b : array_like
        Measurement vector matching the rows of A.

    Returns
    -------
    QualityReport
    """

    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if values.size != truth.grid.size:
        raise GridMismatch(truth.grid.size, values.size)
    if not A.grid.same_layout(truth.grid):
        raise GridMismatch(str(A.grid), str(truth.grid))

    try:
        binary = threshold(values, "otsu")
    except DegenerateHistogram:
        mylog.warning("Degenerate reconstruction histogram: classifying all sources as dark.")
        binary = np.zeros(values.size)

    return QualityReport(
        psnr_db=psnr(values, truth.values),
        pixel_accuracy=float(np.mean(binary == truth.values)),
        residual_rel=relative_residual(A, values, b))

def random_binary_scene(grid, n_lit, rng):
    """
    A scene with n_lit sources chosen at random switched on.
    """
    values = np.zeros(grid.size)
    values[rng.choice(grid.size, size=int(n_lit), replace=False)] = 1
    return SceneVector(grid, values)

def longest_recovered_line(grid, line, measure, solve, method="otsu"):
    """
    Length of the longest centered line that is recovered exactly.

    Lines of decreasing length are measured, reconstructed, and
    thresholded until one matches its pattern exactly.

    Parameters
    ----------
    grid : SourceGrid
    line : "h", "v", or "diag"
    measure : callable
        Maps a SceneVector to a measurement vector.
    solve : callable
        Maps a measurement vector to a raw reconstruction.

    Returns
    -------
    int, 0 if no line is recovered
    """
    nmax = len(line_cells(grid, line))
    for length in range(nmax, 0, -1):
        truth = make_pattern(f"line-{line}({length})", grid)
        values = solve(measure(truth))
        try:
            binary = threshold(values, method)
        except DegenerateHistogram:
            continue
        if np.array_equal(binary, truth.values):
            return length
    return 0
