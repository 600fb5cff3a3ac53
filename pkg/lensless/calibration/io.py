"""
calibration file formats



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import h5py
import json
import numpy as np

from lensless.data_structures.calibration_matrix import \
    CalibrationMatrix, \
    CalibrationMeta, \
    CalibrationStack, \
    PixelMask
from lensless.utilities.exceptions import \
    DimensionMismatch, \
    LenslessDataError
from lensless.utilities.io import \
    read_binary, \
    unpack_header, \
    unpack_payload
from lensless.utilities.logger import \
    lenslessLogger as mylog
from lensless.utilities.misc import \
    sha256_digest

LCAL_MAGIC = b"LCAL1"
LCAL_VERSION = 1

lcal_header_dtype = np.dtype([
    ("magic", "S5"),
    ("version", "u1"),
    ("n_pixels", "<u4"),
    ("n_sources", "<u4"),
    ("sensor_w", "<u4"),
    ("sensor_h", "<u4"),
    ("grid_rows", "<u4"),
    ("grid_cols", "<u4"),
    ("distance_mm", "<f8"),
    ("pitch_mm", "<f8"),
    ("pixel_pitch_um", "<f8"),
    ("n_avg", "<u4"),
    ("mask_rect_count", "<u4")])

def encode_calibration(A):
    """
    Serialize a calibration matrix in the LCAL1 format.
    """
    meta = A.meta
    header = np.zeros(1, dtype=lcal_header_dtype)
    header["magic"] = LCAL_MAGIC
    header["version"] = LCAL_VERSION
    header["n_pixels"] = A.n_pixels
    header["n_sources"] = A.n_sources
    header["sensor_w"] = meta.sensor_w
    header["sensor_h"] = meta.sensor_h
    header["grid_rows"] = meta.grid_rows
    header["grid_cols"] = meta.grid_cols
    header["distance_mm"] = meta.distance_mm
    header["pitch_mm"] = meta.pitch_mm
    header["pixel_pitch_um"] = meta.pixel_pitch_um
    header["n_avg"] = meta.n_avg
    header["mask_rect_count"] = len(meta.mask.rects)
    rects = np.array(meta.mask.rects, dtype="<u4").reshape(-1, 4)
    payload = np.asarray(A.data, dtype="<f8").tobytes(order="F")
    return header.tobytes() + rects.tobytes() + payload

def calibration_digest(A):
    return sha256_digest(encode_calibration(A))

def save_calibration(A, filename):
    """
    Save a calibration matrix as an LCAL1 file.

    Parameters
    ----------
    A : CalibrationMatrix
    filename : str

    Returns
    -------
    filename : str
    """
    with open(filename, mode="wb") as f:
        f.write(encode_calibration(A))
    mylog.info(f"Saved {A} to {filename}.")
    return filename

def _decode_header(filename, buff):
    header = unpack_header(filename, buff, lcal_header_dtype, LCAL_MAGIC)
    if int(header["version"]) != LCAL_VERSION:
        raise LenslessDataError(
            f"Unsupported LCAL version in {filename}: {int(header['version'])}.")
    fields = {name: header[name].item() for name in lcal_header_dtype.names
              if name not in ("magic", "version")}
    offset = lcal_header_dtype.itemsize
    nrect = fields["mask_rect_count"]
    rects = unpack_payload(filename, buff, offset, 4 * nrect, dtype="<u4")
    fields["mask"] = [list(map(int, rect)) for rect in rects.reshape(-1, 4)]
    fields["payload_offset"] = offset + 16 * nrect
    return fields

def read_calibration_header(filename):
    """
    Read the header of an LCAL1 file without the matrix payload.

    Returns
    -------
    dict of header fields
    """
    fields = _decode_header(filename, read_binary(filename))
    del fields["payload_offset"]
    return fields

def load_calibration(filename):
    """
    Load a calibration matrix from an LCAL1 file.

    Parameters
    ----------
    filename : str

    Returns
    -------
    CalibrationMatrix
    """

    buff = read_binary(filename)
    fields = _decode_header(filename, buff)
    n_pixels = fields["n_pixels"]
    n_sources = fields["n_sources"]

    meta = CalibrationMeta(
        distance_mm=fields["distance_mm"],
        grid_rows=fields["grid_rows"], grid_cols=fields["grid_cols"],
        pitch_mm=fields["pitch_mm"],
        sensor_w=fields["sensor_w"], sensor_h=fields["sensor_h"],
        pixel_pitch_um=fields["pixel_pitch_um"],
        n_avg=fields["n_avg"],
        mask=PixelMask(tuple(tuple(rect) for rect in fields["mask"])),
        created_from=f"file:{filename}")

    if n_sources != meta.n_sources:
        raise DimensionMismatch(meta.n_sources, n_sources,
                                what=f"source count in {filename}")
    if n_pixels != meta.n_pixels:
        raise DimensionMismatch(meta.n_pixels, n_pixels,
                                what=f"pixel count in {filename}")

    offset = fields["payload_offset"]
    count = n_pixels * n_sources
    data = unpack_payload(filename, buff, offset, count)
    extra = len(buff) - offset - 8 * count
    if extra:
        raise DimensionMismatch(8 * count, 8 * count + extra,
                                what=f"payload size in bytes of {filename}")
    data = data.reshape(n_sources, n_pixels).T
    return CalibrationMatrix(data, meta)

def save_calibration_stack(stack, filename):
    """
    Save a CalibrationStack to an HDF5 file with one group per
    distance.
    """
    with h5py.File(filename, mode="w") as f:
        f.attrs["format"] = "lensless calibration stack"
        f.attrs["distances_mm"] = np.array(stack.distances)
        for i, A in enumerate(stack):
            group = f.create_group(f"entry_{i:03d}")
            group.create_dataset("data", data=A.data)
            group.create_dataset(
                "mask", data=np.array(A.meta.mask.rects, dtype=np.int64).reshape(-1, 4))
            meta = A.meta.to_dict()
            del meta["mask"]
            for key, value in meta.items():
                group.attrs[key] = value
    mylog.info(f"Saved {stack} to {filename}.")
    return filename

def load_calibration_stack(filename):
    """
    Load a CalibrationStack saved with save_calibration_stack.
    """
    entries = []
    with h5py.File(filename, mode="r") as f:
        if f.attrs.get("format") != "lensless calibration stack":
            raise LenslessDataError(f"{filename} is not a calibration stack.")
        for name in sorted(f.keys()):
            group = f[name]
            attrs = {key: group.attrs[key] for key in group.attrs}
            created_from = attrs.pop("created_from")
            if isinstance(created_from, bytes):
                created_from = created_from.decode("utf-8")
            meta = CalibrationMeta(
                distance_mm=float(attrs["distance_mm"]),
                grid_rows=int(attrs["grid_rows"]),
                grid_cols=int(attrs["grid_cols"]),
                pitch_mm=float(attrs["pitch_mm"]),
                sensor_w=int(attrs["sensor_w"]),
                sensor_h=int(attrs["sensor_h"]),
                pixel_pitch_um=float(attrs["pixel_pitch_um"]),
                n_avg=int(attrs["n_avg"]),
                mask=PixelMask(tuple(tuple(rect) for rect in group["mask"][()])),
                created_from=str(created_from))
            entries.append(CalibrationMatrix(group["data"][()], meta))
    return CalibrationStack(entries)

def header_to_json(fields):
    return json.dumps(fields, indent=2, sort_keys=True)
