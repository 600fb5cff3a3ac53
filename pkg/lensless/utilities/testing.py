"""
testing utilities



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import replace
import h5py
import numpy as np
from numpy.testing import \
    assert_array_equal
import os
import pytest
import shutil
import subprocess
import sys
import tempfile
from unittest import \
    skipIf, TestCase

from lensless.calibration.calibrate import calibrate
from lensless.calibration.io import \
    encode_calibration
from lensless.data_structures.optics_config import \
    DustScatterer, \
    OpticsConfig, \
    SensorSpec, \
    desk_scale_config
from lensless.data_structures.scene import \
    SourceGrid

try:
    from mpi4py import MPI
except ModuleNotFoundError:
    MPI = None

source_dir = os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))))

class TempDirTest(TestCase):
    """
    A test class that runs in a temporary directory and
    removes it afterward.
    """

    def setUp(self):
        self.curdir = os.getcwd()
        self.tmpdir = tempfile.mkdtemp()
        os.chdir(self.tmpdir)

    def tearDown(self):
        os.chdir(self.curdir)
        shutil.rmtree(self.tmpdir)

def small_config(**kwargs):
    """
    A fast setup for unit tests: 24x20 sensor of 6 um pixels, a 4x4
    grid, one dust particle.
    """
    cfg = OpticsConfig(
        sensor=SensorSpec(24, 20, pixel_pitch_um=6., bit_depth=8,
                          read_noise_sigma=0.005),
        grid=SourceGrid(4, 4, 6.1),
        distance_mm=343.,
        scatterers=(DustScatterer(pos_mm=(0.006, -0.012), height_mm=0.6,
                                  radius_mm=0.018, opacity=0.8),),
        texture_seed=3,
        texture_amplitude=0.05)
    return replace(cfg, **kwargs)

def noiseless_desk_config(**kwargs):
    return desk_scale_config(**kwargs).noiseless()

def assert_rel_equal(a1, a2, rtol, err_msg=""):
    """
    Assert the relative L2 difference of two arrays is at most rtol.
    """
    a1 = np.asarray(a1, dtype=np.float64)
    a2 = np.asarray(a2, dtype=np.float64)
    norm = np.linalg.norm(a2)
    diff = np.linalg.norm(a1 - a2)
    if norm == 0:
        assert diff == 0, err_msg
        return
    assert diff / norm <= rtol, \
      f"relative difference {diff / norm:g} > {rtol:g}. {err_msg}"

def run_command(command, timeout=None):
    try:
        proc = subprocess.run(command, shell=True, timeout=timeout)
        success = proc.returncode == 0
    except subprocess.TimeoutExpired:
        print(f"Process reached timeout of {timeout} s. ({command})")
        success = False
    except KeyboardInterrupt:
        print("Killed by keyboard interrupt!")
        success = False
    return success

class ParallelTest:
    """
    Calibrate under MPI and compare with the serial result.

    The test script is given the output filename and writes the
    LCAL1 file of small_config with the given seed.
    """

    test_script = None
    test_filename = "parallel.lcal"
    seed = 5
    ncores = 4

    @skipIf(MPI is None, "mpi4py not installed")
    @pytest.mark.parallel
    def test_parallel(self):
        script = os.path.join(source_dir, "tests", "parallel", self.test_script)
        args = [script, self.test_filename, str(self.seed)]
        comm = MPI.COMM_SELF.Spawn(sys.executable, args=args, maxprocs=self.ncores)
        comm.Disconnect()

        serial = encode_calibration(calibrate(small_config(), rng_seed=self.seed))
        with open(self.test_filename, mode="rb") as f:
            assert f.read() == serial

class ExampleScriptTest:
    """
    Tests for the code examples.
    """

    script_filename = None
    timeout = 300
    output_files = ()

    def test_example(self):
        if self.script_filename is None:
            return

        script_path = os.path.join(
            source_dir, "doc", "source", "examples", self.script_filename)
        command = f"{sys.executable} {script_path}"
        assert run_command(command, timeout=self.timeout)

        for fn in self.output_files:
            assert os.path.exists(fn), f"{fn} was not written."

def compare_hdf5(fh1, fh2, compare=None):
    """
    Compare all datasets and attributes between two hdf5 files
    or groups.
    """

    if compare is None:
        compare = assert_array_equal
    if not isinstance(fh1, h5py.Group):
        with h5py.File(fh1, mode="r") as f1, h5py.File(fh2, mode="r") as f2:
            return compare_hdf5(f1, f2, compare=compare)

    assert sorted(fh1.attrs) == sorted(fh2.attrs)
    for key in fh1.attrs:
        compare(fh1.attrs[key], fh2.attrs[key],
                err_msg=f"attribute {key} of {fh1.name} differs.")
    assert sorted(fh1.keys()) == sorted(fh2.keys())
    for key in fh1.keys():
        if isinstance(fh1[key], h5py.Group):
            compare_hdf5(fh1[key], fh2[key], compare=compare)
        else:
            compare(fh1[key][()], fh2[key][()],
                    err_msg=f"dataset {fh1[key].name} differs.")
