"""
miscellaneous utility tests



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from numpy.testing import \
    assert_allclose, \
    assert_equal
import os
import pytest

from lensless.utilities.exceptions import \
    LenslessConfigError
from lensless.utilities.io import \
    ensure_dir, \
    write_csv
from lensless.utilities.loading import \
    get_path, \
    package_asset_dir
from lensless.utilities.logger import \
    lenslessLogger as mylog, \
    lensless_sh, \
    log_level, \
    set_parallel_logger, \
    set_verbosity, \
    ufstring
from lensless.utilities.misc import \
    format_operator_id, \
    parse_operator_id, \
    sha256_digest
from lensless.utilities.testing import \
    TempDirTest
from lensless.utilities.units import \
    to_length, \
    to_mm

def test_parse_operator_id():
    assert parse_operator_id("l-curve") == ("l-curve", ())
    assert parse_operator_id(" single( 1, 2 ) ") == ("single", (1, 2))
    assert parse_operator_id("fixed-fraction(1e-3)") == ("fixed-fraction", (1e-3,))
    assert parse_operator_id("line-h()") == ("line-h", ())
    name, args = parse_operator_id("single(1, 2)")
    assert all(isinstance(arg, int) for arg in args)
    for text in ("", "(3)", "l-curve(", "fixed(a)", "3x(1)"):
        with pytest.raises(ValueError):
            parse_operator_id(text)

def test_format_operator_id():
    assert format_operator_id("l-curve") == "l-curve"
    assert format_operator_id("single", (1, 2)) == "single(1,2)"
    assert parse_operator_id(format_operator_id("fixed", (0.25,))) == ("fixed", (0.25,))

def test_sha256_digest():
    assert sha256_digest(b"").hex() == \
      "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    assert_equal(len(sha256_digest(b"LCAL1")), 32)

def test_units():
    assert_allclose(to_mm("34.3 cm"), 343.)
    assert_allclose(to_mm(" 0.5 m "), 500.)
    assert_allclose(to_mm("85"), 85.)
    assert_allclose(to_mm(85), 85.)
    assert_allclose(to_length(6, "mm", default_units="um"), 0.006)
    assert_allclose(to_length("6 um", "mm", default_units="m"), 0.006)
    for value in ("34.3 kg", "3 s"):
        with pytest.raises(LenslessConfigError):
            to_mm(value)

def test_log_level():
    level = mylog.level
    with log_level(30):
        if 10 < level < 30:
            assert_equal(mylog.level, 40)
        else:
            assert_equal(mylog.level, level)
    assert_equal(mylog.level, level)

def test_set_verbosity():
    level = mylog.level
    try:
        mylog.setLevel(20)
        assert_equal(set_verbosity(verbose=1), 10)
        assert_equal(set_verbosity(verbose=3), 10)
        assert_equal(set_verbosity(quiet=2), 30)
        assert_equal(set_verbosity(quiet=5), 50)
        assert_equal(set_verbosity(), 50)
    finally:
        mylog.setLevel(level)

def test_set_parallel_logger():
    formatter = lensless_sh.formatter
    try:
        set_parallel_logger(0, 1)
        assert lensless_sh.formatter is formatter
        set_parallel_logger(3, 4)
        assert lensless_sh.formatter._fmt == f"P003 {ufstring}"
    finally:
        lensless_sh.setFormatter(formatter)

class UtilitiesTest(TempDirTest):

    def test_get_path(self):
        fn = get_path(os.path.join("patterns", "stickman.txt"))
        assert fn == os.path.join(package_asset_dir, "patterns", "stickman.txt")

        ensure_dir("patterns")
        with open(os.path.join("patterns", "stickman.txt"), mode="w") as f:
            f.write("1\n")
        fn = get_path(os.path.join("patterns", "stickman.txt"))
        assert fn == os.path.join("patterns", "stickman.txt")

        paths = get_path(["patterns/stickman.txt", "patterns/letter_T.txt"])
        assert_equal(len(paths), 2)

        with pytest.raises(IOError):
            get_path("missing.txt")

    def test_ensure_dir(self):
        assert ensure_dir("a/b/c") == "a/b/c"
        assert os.path.isdir("a/b/c")
        assert ensure_dir("a/b/c") == "a/b/c"

    def test_write_csv(self):
        write_csv("t.csv", ["index", "value"], [(0, 0.1), (1, 2.)])
        with open("t.csv") as f:
            lines = f.read().splitlines()
        assert lines == ["index,value", "0,0.1", "1,2.0"]
