"""
tests for frame files



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np
from numpy.testing import assert_array_equal, assert_equal
import pytest

from lensless.data_structures.frame import \
    Frame, \
    encode_pgm, \
    load_frame, \
    save_frame
from lensless.utilities.exceptions import \
    BadMagic, \
    DimensionMismatch, \
    LenslessDataError, \
    NonFiniteData, \
    TruncatedFile
from lensless.utilities.testing import TempDirTest

def read(filename):
    with open(filename, mode="rb") as f:
        return f.read()

def write(filename, buff):
    with open(filename, mode="wb") as f:
        f.write(buff)

def test_frame_validation():
    with pytest.raises(DimensionMismatch):
        Frame(4, 3, np.zeros(13))
    with pytest.raises(NonFiniteData):
        Frame(2, 1, [0, np.nan])
    with pytest.raises(LenslessDataError):
        Frame(2, 1, [0, -1])
    frame = Frame(3, 2, np.arange(6))
    assert_equal(frame.shape, (2, 3))
    assert_array_equal(frame.data[1], [3, 4, 5])

def test_encode_pgm():
    image = np.array([[0, 0.5], [1, 2]])
    buff = encode_pgm(image)
    assert buff == b"P5\n2 2\n255\n" + bytes([0, 128, 255, 255])
    buff = encode_pgm(image, maxval=65535)
    assert buff.endswith(bytes([0, 0, 128, 0, 255, 255, 255, 255]))
    with pytest.raises(ValueError):
        encode_pgm(image, maxval=1023)

class FrameFileTest(TempDirTest):

    def setUp(self):
        super().setUp()
        rng = np.random.default_rng(3)
        self.frame = Frame(6, 4, rng.uniform(0, 1, (4, 6)))

    def test_lfr_round_trip(self):
        save_frame(self.frame, "frame.lfr")
        frame = load_frame("frame.lfr")
        assert frame == self.frame
        save_frame(frame, "again.lfr")
        assert read("frame.lfr") == read("again.lfr")
        assert_equal(len(read("frame.lfr")), 12 + 8 * 24)

    def test_pgm_round_trip(self):
        for maxval in (255, 65535):
            save_frame(self.frame, "frame.pgm", maxval=maxval)
            frame = load_frame("frame.pgm")
            assert_equal(frame.shape, (4, 6))
            assert np.abs(frame.data - self.frame.data).max() <= 0.5 / maxval + 1e-12
            save_frame(frame, "again.pgm", maxval=maxval)
            assert read("frame.pgm") == read("again.pgm")

    def test_pgm_comments(self):
        write("comment.pgm", b"P5\n# made by hand\n3 1\n# levels\n255\n" + bytes([0, 51, 255]))
        frame = load_frame("comment.pgm")
        assert_array_equal(frame.data, [[0, 0.2, 1]])

    def test_bad_magic(self):
        write("frame.bin", b"XXXX" + bytes(40))
        with pytest.raises(BadMagic):
            load_frame("frame.bin")

    def test_truncated(self):
        save_frame(self.frame, "frame.lfr")
        write("short.lfr", read("frame.lfr")[:-8])
        with pytest.raises(TruncatedFile):
            load_frame("short.lfr")

        save_frame(self.frame, "frame.pgm")
        write("short.pgm", read("frame.pgm")[:-1])
        with pytest.raises(TruncatedFile):
            load_frame("short.pgm")
