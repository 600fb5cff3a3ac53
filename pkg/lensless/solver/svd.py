"""
singular value decomposition of the calibration matrix



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np

from lensless.data_structures.calibration_matrix import \
    CalibrationMatrix
from lensless.utilities.exceptions import \
    DimensionMismatch, \
    LenslessNumericalError, \
    NonFiniteData
from lensless.utilities.logger import \
    lenslessLogger as mylog

# singular values below rcond * S[0] are dropped
default_rcond = 1e-12

# condition numbers above this mark an ill-posed system
ill_posed_threshold = 1e3

class SVDFactors:
    """
    Thin SVD A = U diag(S) V^T restricted to the numerical rank.

    Attributes
    ----------
    U : array, (n_pixels, r)
    S : array, (r,)
        Nonincreasing and positive.
    V : array, (n_sources, r)
    calibration : CalibrationMatrix or None
        The decomposed matrix, if it was a CalibrationMatrix.
    """
    def __init__(self, U, S, V, calibration=None):
        for arr in (U, S, V):
            arr.setflags(write=False)
        self.U = U
        self.S = S
        self.V = V
        self.calibration = calibration

    @property
    def rank(self):
        return self.S.size

    @property
    def n_pixels(self):
        return self.U.shape[0]

    @property
    def n_sources(self):
        return self.V.shape[0]

    def matrix(self):
        """
        The product U diag(S) V^T.
        """
        return (self.U * self.S) @ self.V.T

    def project(self, b):
        """
        Coefficients u_i^T b, checking the length of b.
        """
        b = np.asarray(b, dtype=np.float64).reshape(-1)
        if b.size != self.n_pixels:
            raise DimensionMismatch(self.n_pixels, b.size, what="measurement vector")
        if not np.isfinite(b).all():
            raise NonFiniteData("measurement vector")
        return self.U.T @ b

    def __repr__(self):
        return (f"SVDFactors({self.n_pixels}x{self.n_sources}, rank {self.rank}, "
                f"condition {condition_number(self):.4g})")

def svd(A, rcond=default_rcond):
    """
    Thin SVD of a calibration matrix.

    Singular values below rcond * S[0] are dropped. Signs are fixed
    so the largest-magnitude entry of each column of V is positive,
    which makes the factors deterministic.

    Parameters
    ----------
    A : CalibrationMatrix or 2-D array
    rcond : optional, float
        Relative cutoff. Default: 1e-12.

    Returns
    -------
    SVDFactors
    """

    calibration = A if isinstance(A, CalibrationMatrix) else None
    data = A.data if calibration is not None else np.asarray(A, dtype=np.float64)
    if data.ndim != 2 or data.size == 0:
        raise DimensionMismatch("nonempty 2-D array", data.shape, what="matrix")
    if not np.isfinite(data).all():
        raise NonFiniteData("matrix to decompose")

    U, S, Vt = np.linalg.svd(data, full_matrices=False)
    if S[0] == 0:
        raise LenslessNumericalError("Cannot decompose an all-zero matrix.")
    r = int((S >= rcond * S[0]).sum())
    U = U[:, :r].copy()
    S = S[:r].copy()
    V = Vt[:r].T.copy()

    imax = np.abs(V).argmax(axis=0)
    signs = np.sign(V[imax, np.arange(r)])
    signs[signs == 0] = 1
    U *= signs
    V *= signs

    if r < min(data.shape):
        mylog.debug(f"Dropped {min(data.shape) - r} singular values below "
                    f"{rcond:g} * S[0].")
    return SVDFactors(U, S, V, calibration=calibration)

def condition_number(f):
    """
    Ratio of the largest to the smallest retained singular value.
    """
    return float(f.S[0] / f.S[-1])

def report_condition(f, log=True):
    """
    Condition number with a one-line ill-posedness note.
    """
    cond = condition_number(f)
    if cond > ill_posed_threshold:
        note = (f"condition number {cond:.4g} exceeds {ill_posed_threshold:g}: "
                "the inverse problem is ill-posed and needs regularization")
        if log:
            mylog.warning(note)
    else:
        note = f"condition number {cond:.4g}: the inverse problem is well-posed"
        if log:
            mylog.info(note)
    return cond, note

def filter_factors(f, alpha):
    """
    Tikhonov filter factors S**2 / (S**2 + alpha**2).
    """
    S2 = f.S**2
    return S2 / (S2 + float(alpha)**2)
