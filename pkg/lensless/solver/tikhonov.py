"""
Tikhonov-regularized inversion and the precomputed reconstructor



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np

from lensless.utilities.exceptions import \
    DimensionMismatch, \
    LenslessDataError, \
    NonFiniteData
from lensless.utilities.io import \
    read_binary, \
    unpack_header, \
    unpack_payload
from lensless.utilities.logger import \
    lenslessLogger as mylog

LREC_MAGIC = b"LREC1"
LREC_VERSION = 1

lrec_header_dtype = np.dtype([
    ("magic", "S5"),
    ("version", "u1"),
    ("n_sources", "<u4"),
    ("n_pixels", "<u4"),
    ("alpha", "<f8"),
    ("calibration_hash", "V32")])

def _check_alpha(alpha):
    alpha = float(alpha)
    if not alpha >= 0:
        raise ValueError(f"alpha must be nonnegative: {alpha}.")
    return alpha

def solution_filter(f, alpha):
    """
    Per-mode weights S / (S**2 + alpha**2).
    """
    alpha = _check_alpha(alpha)
    return f.S / (f.S**2 + alpha**2)

def tikhonov_solve(f, b, alpha):
    """
    Minimize |Ax - b|**2 + alpha**2 |x|**2 on the retained subspace.

    The raw solution is returned without any nonnegativity clamp.

    Parameters
    ----------
    f : SVDFactors
    b : array_like
        Measurement vector of length n_pixels.
    alpha : float
        Regularization parameter, alpha >= 0. With alpha = 0 this
        is the pseudoinverse on the retained rank.

    Returns
    -------
    array of n_sources values

    Examples
    --------
    >>> f = svd(np.diag([2., 1.]))
    >>> tikhonov_solve(f, [2., 1.], 1.)
    array([0.8, 0.5])
    """
    filt = solution_filter(f, alpha)
    return f.V @ (filt * f.project(b))

class Reconstructor:
    """
    Precomputed solution operator M = V diag(S / (S**2 + alpha**2)) U^T.

    Parameters
    ----------
    M : array, (n_sources, n_pixels)
    alpha : float
    calibration_hash : optional, bytes
        SHA-256 of the LCAL1 serialization of the calibration.
    distance_mm : optional, float
    """
    def __init__(self, M, alpha, calibration_hash=None, distance_mm=None):
        M = np.ascontiguousarray(M, dtype=np.float64)
        if M.ndim != 2:
            raise DimensionMismatch("2-D array", M.shape, what="reconstructor")
        M.setflags(write=False)
        self.M = M
        self.alpha = _check_alpha(alpha)
        if calibration_hash is None:
            calibration_hash = bytes(32)
        if len(calibration_hash) != 32:
            raise LenslessDataError(
                f"Calibration hash must be 32 bytes, got {len(calibration_hash)}.")
        self.calibration_hash = bytes(calibration_hash)
        self.distance_mm = distance_mm

    @property
    def n_sources(self):
        return self.M.shape[0]

    @property
    def n_pixels(self):
        return self.M.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Reconstructor):
            return NotImplemented
        return self.alpha == other.alpha and \
          self.calibration_hash == other.calibration_hash and \
          np.array_equal(self.M, other.M)

    def __repr__(self):
        return (f"Reconstructor({self.n_sources}x{self.n_pixels}, "
                f"alpha={self.alpha:.4g})")

def build_reconstructor(f, alpha):
    """
    Precompute the regularized inverse for repeated reconstruction.

    Parameters
    ----------
    f : SVDFactors
    alpha : float

    Returns
    -------
    Reconstructor
    """
    filt = solution_filter(f, alpha)
    M = (f.V * filt) @ f.U.T
    calibration_hash = None
    distance_mm = None
    if f.calibration is not None:
        calibration_hash = f.calibration.digest
        distance_mm = f.calibration.distance_mm
    return Reconstructor(M, alpha, calibration_hash=calibration_hash,
                         distance_mm=distance_mm)

def reconstruct(R, b):
    """
    Apply a Reconstructor to a measurement: one matrix-vector product.

    Parameters
    ----------
    R : Reconstructor
    b : array_like
        Measurement vector of length n_pixels.

    Returns
    -------
    array of n_sources values
    """
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if b.size != R.n_pixels:
        raise DimensionMismatch(R.n_pixels, b.size, what="measurement vector")
    if not np.isfinite(b).all():
        raise NonFiniteData("measurement vector")
    return R.M @ b

def save_reconstructor(R, filename):
    """
    Save a Reconstructor as an LREC1 file.
    """
    header = np.zeros(1, dtype=lrec_header_dtype)
    header["magic"] = LREC_MAGIC
    header["version"] = LREC_VERSION
    header["n_sources"] = R.n_sources
    header["n_pixels"] = R.n_pixels
    header["alpha"] = R.alpha
    header["calibration_hash"] = np.void(R.calibration_hash)
    with open(filename, mode="wb") as f:
        f.write(header.tobytes())
        f.write(np.asarray(R.M, dtype="<f8").tobytes(order="F"))
    mylog.info(f"Saved {R} to {filename}.")
    return filename

def _decode_header(filename, buff):
    header = unpack_header(filename, buff, lrec_header_dtype, LREC_MAGIC)
    if int(header["version"]) != LREC_VERSION:
        raise LenslessDataError(
            f"Unsupported LREC version in {filename}: {int(header['version'])}.")
    return {"n_sources": int(header["n_sources"]),
            "n_pixels": int(header["n_pixels"]),
            "alpha": float(header["alpha"]),
            "calibration_hash": header["calibration_hash"].tobytes()}

def read_reconstructor_header(filename):
    """
    Read the header of an LREC1 file without the matrix payload.
    """
    fields = _decode_header(filename, read_binary(filename))
    fields["calibration_hash"] = fields["calibration_hash"].hex()
    return fields

def load_reconstructor(filename):
    """
    Load a Reconstructor from an LREC1 file.
    """
    buff = read_binary(filename)
    fields = _decode_header(filename, buff)
    ns, npix = fields["n_sources"], fields["n_pixels"]
    offset = lrec_header_dtype.itemsize
    M = unpack_payload(filename, buff, offset, ns * npix)
    extra = len(buff) - offset - 8 * ns * npix
    if extra:
        raise DimensionMismatch(8 * ns * npix, 8 * ns * npix + extra,
                                what=f"payload size in bytes of {filename}")
    return Reconstructor(M.reshape(npix, ns).T, fields["alpha"],
                         calibration_hash=fields["calibration_hash"])
