"""
io utilities



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import csv
import errno
import json
import numpy as np
import os

from yt.funcs import \
    get_pbar

from lensless.config import lenslesscfg
from lensless.utilities.exceptions import \
    BadMagic, \
    TruncatedFile
from lensless.utilities.logger import \
    fake_pbar, \
    lenslessLogger as mylog

def ensure_dir(path):
    r"""Parallel safe directory maker."""
    if os.path.exists(path):
        return path

    try:
        os.makedirs(path)
    except OSError as e:
        if e.errno == errno.EEXIST:
            pass
        else:
            raise
    return path

def progress_bar(title, maxval):
    """
    Return a yt progress bar, or a silent stand-in if progress
    bars are switched off in the lenslessrc file.
    """
    if lenslesscfg["lensless"].getboolean("progress_bars", True):
        return get_pbar(title, maxval)
    return fake_pbar()

def read_binary(filename):
    with open(filename, "rb") as f:
        return f.read()

def unpack_header(filename, buff, dtype, magic):
    """
    Unpack a fixed-size header from the start of a byte buffer.

    The first field of dtype must be the magic string.
    """
    dtype = np.dtype(dtype)
    if len(buff) < len(magic) or buff[:len(magic)] != magic:
        raise BadMagic(filename, magic, bytes(buff[:len(magic)]))
    if len(buff) < dtype.itemsize:
        raise TruncatedFile(filename, dtype.itemsize, len(buff))
    return np.frombuffer(buff, dtype=dtype, count=1)[0]

def unpack_payload(filename, buff, offset, count, dtype="<f8"):
    """
    Read count values after offset, checking the buffer is long enough.
    """
    dtype = np.dtype(dtype)
    nbytes = count * dtype.itemsize
    available = len(buff) - offset
    if available < nbytes:
        raise TruncatedFile(filename, nbytes, max(available, 0))
    return np.frombuffer(buff, dtype=dtype, count=count, offset=offset).copy()

def write_json(filename, data):
    with open(filename, mode="w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    mylog.info(f"Saved {filename}.")
    return filename

def write_csv(filename, header, rows):
    with open(filename, mode="w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating))
                             else v for v in row])
    mylog.info(f"Saved {filename}.")
    return filename
