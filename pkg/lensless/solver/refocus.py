"""
computational refocusing over a calibration stack



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import dataclass, field
import numpy as np

from lensless.calibration.calibrate import \
    measurement_vector
from lensless.data_structures.calibration_matrix import \
    CalibrationMatrix
from lensless.solver.alpha_selection import \
    default_alpha_strategy, \
    select_alpha
from lensless.solver.tikhonov import \
    tikhonov_solve
from lensless.utilities.logger import \
    lenslessLogger as mylog

def relative_residual(A, x, b):
    """
    |Ax - b| / |b|, defined as 0 when b = 0.
    """
    data = A.data if isinstance(A, CalibrationMatrix) else \
      np.asarray(A, dtype=np.float64)
    bnorm = np.linalg.norm(b)
    if bnorm == 0:
        return 0.
    return float(np.linalg.norm(data @ x - b) / bnorm)

@dataclass
class RefocusResult:
    """
    Outcome of refocusing a measurement.

    Attributes
    ----------
    distance_mm : float
        Distance of the best-fitting calibration.
    values : array
        Raw scene estimate at that distance.
    residuals : list of (distance_mm, relative residual)
        In order of increasing distance.
    alphas : list of float
        Regularization parameter used at each distance.
    """

    distance_mm: float
    values: np.ndarray
    residuals: list = field(default_factory=list)
    alphas: list = field(default_factory=list)

    def to_dict(self):
        return {"distance_mm": self.distance_mm,
                "residuals": [{"distance_mm": D, "residual_rel": r}
                              for D, r in self.residuals],
                "alphas": list(self.alphas)}

def refocus(stack, b, alpha_strategy=default_alpha_strategy):
    """
    Find the object distance that best explains a measurement.

    The measurement is inverted with each calibration in the stack
    and the distance with the smallest relative residual wins.
    Ties go to the smallest distance.

    Parameters
    ----------
    stack : CalibrationStack
    b : Frame or array_like
        The measurement.
    alpha_strategy : optional, str
        Strategy passed to select_alpha at each distance.

    Returns
    -------
    RefocusResult
    """

    best = None
    residuals = []
    alphas = []
    for A in stack:
        bvec = measurement_vector(A, b)
        f = A.factors
        alpha = select_alpha(f, bvec, alpha_strategy)
        x = tikhonov_solve(f, bvec, alpha)
        r = relative_residual(A, x, bvec)
        mylog.debug(f"Refocus D = {A.distance_mm:g} mm: residual {r:.6g}.")
        residuals.append((A.distance_mm, r))
        alphas.append(alpha)
        if best is None or r < best[1]:
            best = (A.distance_mm, r, x)

    return RefocusResult(distance_mm=best[0], values=best[2],
                         residuals=residuals, alphas=alphas)
