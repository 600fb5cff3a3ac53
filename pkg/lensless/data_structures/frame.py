"""
Frame class and frame file formats



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np
import re

from lensless.utilities.exceptions import \
    BadMagic, \
    DimensionMismatch, \
    LenslessDataError, \
    NonFiniteData, \
    TruncatedFile
from lensless.utilities.io import \
    read_binary, \
    unpack_header, \
    unpack_payload
from lensless.utilities.logger import \
    lenslessLogger as mylog

LFR_MAGIC = b"LFR1"
lfr_header_dtype = np.dtype([
    ("magic", "S4"),
    ("width", "<u4"),
    ("height", "<u4")])

class Frame:
    """
    A sensor image in units of full-scale fraction.

    Parameters
    ----------
    width_px, height_px : int
        Image dimensions.
    data : array_like
        width_px * height_px nonnegative values, row-major with
        row 0 at the top, or a (height_px, width_px) array.
    """
    def __init__(self, width_px, height_px, data):
        self.width_px = int(width_px)
        self.height_px = int(height_px)
        data = np.array(data, dtype=np.float64)
        if data.size != self.width_px * self.height_px:
            raise DimensionMismatch(
                (self.height_px, self.width_px), data.shape, what="frame data")
        data = data.reshape(self.height_px, self.width_px)
        if not np.isfinite(data).all():
            raise NonFiniteData("frame data")
        if (data < 0).any():
            raise LenslessDataError("Frame values must be nonnegative.")
        data.setflags(write=False)
        self.data = data

    @classmethod
    def from_vector(cls, vector, spec):
        """
        Build a frame from a flattened measurement and a SensorSpec.
        """
        return cls(spec.width_px, spec.height_px, vector)

    @property
    def shape(self):
        return (self.height_px, self.width_px)

    @property
    def n_pixels(self):
        return self.width_px * self.height_px

    @property
    def vector(self):
        return self.data.reshape(-1)

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.shape == other.shape and \
          np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"Frame({self.width_px}x{self.height_px})"

def save_frame(frame, filename, fmt=None, maxval=None):
    """
    Save a frame as LFR1 float data or as a binary PGM (P5) image.

    Parameters
    ----------
    frame : Frame
    filename : str
    fmt : optional, "lfr" or "pgm"
        Defaults to the file extension, falling back to lfr.
    maxval : optional, 255 or 65535
        PGM maximum gray value. Default: 255.
    """

    if fmt is None:
        fmt = "pgm" if str(filename).lower().endswith(".pgm") else "lfr"

    if fmt == "lfr":
        header = np.zeros(1, dtype=lfr_header_dtype)
        header["magic"] = LFR_MAGIC
        header["width"] = frame.width_px
        header["height"] = frame.height_px
        payload = frame.vector.astype("<f8").tobytes()
        buff = header.tobytes() + payload
    elif fmt == "pgm":
        buff = encode_pgm(frame.data, maxval=maxval)
    else:
        raise ValueError(f"Unknown frame format: {fmt}.")

    with open(filename, mode="wb") as f:
        f.write(buff)
    mylog.debug(f"Saved {frame} to {filename}.")
    return filename

def load_frame(filename):
    """
    Load a frame saved as LFR1 or binary PGM.
    """
    buff = read_binary(filename)
    if buff.startswith(LFR_MAGIC):
        header = unpack_header(filename, buff, lfr_header_dtype, LFR_MAGIC)
        width = int(header["width"])
        height = int(header["height"])
        data = unpack_payload(filename, buff, lfr_header_dtype.itemsize,
                              width * height)
        return Frame(width, height, data)
    if buff.startswith(b"P5"):
        return Frame(*decode_pgm(filename, buff))
    raise BadMagic(filename, b"LFR1 or P5", bytes(buff[:4]))

def encode_pgm(image, maxval=None):
    """
    Encode a 2-D array of values in [0, 1] as a binary PGM.
    """
    if maxval is None:
        maxval = 255
    if maxval not in (255, 65535):
        raise ValueError(f"PGM maxval must be 255 or 65535: {maxval}.")
    image = np.asarray(image, dtype=np.float64)
    height, width = image.shape
    levels = np.rint(np.clip(image, 0, 1) * maxval)
    dtype = np.uint8 if maxval == 255 else np.dtype(">u2")
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    return header + levels.astype(dtype).tobytes()

_pgm_token = re.compile(rb"(\s+|#[^\n]*\n?)*([0-9]+)")

def decode_pgm(filename, buff):
    """
    Decode a binary PGM, returning (width, height, values) with
    values scaled to [0, 1].
    """
    pos = 2
    fields = []
    for _ in range(3):
        match = _pgm_token.match(buff, pos)
        if match is None:
            raise LenslessDataError(f"Malformed PGM header in {filename}.")
        fields.append(int(match.group(2)))
        pos = match.end()
    # a single whitespace character separates the header from the raster
    pos += 1
    width, height, maxval = fields
    if not 0 < maxval < 65536:
        raise LenslessDataError(f"Bad PGM maxval in {filename}: {maxval}.")

    dtype = np.dtype(np.uint8) if maxval < 256 else np.dtype(">u2")
    count = width * height
    if len(buff) - pos < count * dtype.itemsize:
        raise TruncatedFile(filename, count * dtype.itemsize, len(buff) - pos)
    levels = unpack_payload(filename, buff, pos, count, dtype=dtype)
    return width, height, levels.astype(np.float64) / maxval
