"""
lensless command line tool



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import argparse
import sys

from lensless.cli.commands import \
    cmd_ablate, \
    cmd_calibrate, \
    cmd_info, \
    cmd_reconstruct, \
    cmd_sweep, \
    cmd_verify, \
    cmd_video
from lensless.utilities.exceptions import \
    LenslessConfigError, \
    LenslessDataError, \
    LenslessNumericalError
from lensless.utilities.logger import \
    lenslessLogger as mylog, \
    set_parallel_logger, \
    set_verbosity
from lensless.utilities.parallel import \
    comm_rank_size

class LenslessArgumentParser(argparse.ArgumentParser):
    """
    ArgumentParser exiting with the configuration error code.
    """
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(LenslessConfigError.exit_code, f"{self.prog}: error: {message}\n")

def add_setup_flags(parser):
    group = parser.add_argument_group("setup")
    group.add_argument("--config", help="JSON run configuration file")
    group.add_argument("--seed", type=int, help="random seed")
    group.add_argument("--grid", metavar="RxC", help="source grid, e.g. 16x16")
    group.add_argument("--sensor", metavar="WxH", help="sensor size in pixels, e.g. 96x72")
    group.add_argument("--distance",
                       help="object distance in mm, or with units, e.g. \"34.3 cm\"")
    group.add_argument("--noiseless", action="store_true",
                       help="no read noise, shot noise, or quantization")
    group.add_argument("--read-noise", type=float, dest="read_noise",
                       help="read noise sigma as a fraction of full scale")
    group.add_argument("--n-avg", type=int, dest="n_avg",
                       help="frames averaged per capture (default: 100)")
    group.add_argument("--parallel", action="store_true",
                       help="run in parallel with MPI")

def add_solver_flags(parser):
    group = parser.add_argument_group("solver")
    group.add_argument("--alpha",
                       help="alpha value, or a strategy such as "
                       "\"fixed-fraction(0.01)\", \"l-curve\", \"discrepancy(0.3)\"")
    group.add_argument("--threshold", help="\"otsu\" or \"fixed(t)\"")

def add_output_flag(parser):
    parser.add_argument("--out", help="output directory")

def make_parser():
    parser = LenslessArgumentParser(
        prog="lensless",
        description="Simulate, calibrate, and reconstruct with a lensless bare sensor.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more log output, repeat for debug")
    parser.add_argument("-q", "--quiet", action="count", default=0,
                        help="less log output")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    p = subparsers.add_parser("calibrate", help="record a calibration matrix")
    add_setup_flags(p)
    p.add_argument("--out", dest="calibration_file", default="calibration.lcal",
                   help="LCAL1 file to write")
    p.set_defaults(func=cmd_calibrate)

    p = subparsers.add_parser("reconstruct", help="reconstruct a still scene")
    p.add_argument("calibration", help="LCAL1 file")
    p.add_argument("measurement", nargs="?", help="LFR1 or PGM measurement")
    p.add_argument("--pattern", help="render this pattern and reconstruct it")
    add_setup_flags(p)
    add_solver_flags(p)
    add_output_flag(p)
    p.set_defaults(func=cmd_reconstruct)

    p = subparsers.add_parser("video", help="reconstruct an animation")
    p.add_argument("source", help="LCAL1 or LREC1 file")
    p.add_argument("--animation", default="jumping-stickman")
    p.add_argument("--frames", type=int, default=76)
    p.add_argument("--save-reconstructor", dest="save_reconstructor",
                   help="write the precomputed reconstructor to this LREC1 file")
    p.add_argument("--no-images", action="store_true", dest="no_images",
                   help="only write the timing report")
    add_setup_flags(p)
    add_solver_flags(p)
    add_output_flag(p)
    p.set_defaults(func=cmd_video)

    p = subparsers.add_parser("sweep", help="characterize over object distances")
    p.add_argument("--distances", help="comma-separated distances in mm")
    add_setup_flags(p)
    add_solver_flags(p)
    add_output_flag(p)
    p.set_defaults(func=cmd_sweep)

    p = subparsers.add_parser("ablate", help="remove encoding channels")
    p.add_argument("--mask-shadows", action="store_true", dest="mask_shadows")
    p.add_argument("--no-scatterers", action="store_true", dest="no_scatterers")
    p.add_argument("--no-texture", action="store_true", dest="no_texture")
    p.add_argument("--pattern", default="stickman")
    add_setup_flags(p)
    add_solver_flags(p)
    add_output_flag(p)
    p.set_defaults(func=cmd_ablate)

    p = subparsers.add_parser("verify", help="compare a calibration with noiseless PSFs")
    p.add_argument("calibration", help="LCAL1 file")
    p.add_argument("--tolerance", type=float, default=1e-6)
    add_setup_flags(p)
    p.set_defaults(func=cmd_verify)

    p = subparsers.add_parser("info", help="print an LCAL1 or LREC1 header")
    p.add_argument("filename")
    p.set_defaults(func=cmd_info)

    return parser

def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    set_verbosity(args.verbose, args.quiet)

    if getattr(args, "parallel", False):
        import yt
        yt.enable_parallelism()
        set_parallel_logger(*comm_rank_size())

    try:
        return args.func(args)
    except (LenslessConfigError, LenslessDataError, LenslessNumericalError) as err:
        mylog.error(str(err))
        return err.exit_code
    except ValueError as err:
        mylog.error(str(err))
        return LenslessConfigError.exit_code
    except OSError as err:
        mylog.error(f"{err.filename}: {err.strerror}")
        return LenslessDataError.exit_code

if __name__ == "__main__":
    sys.exit(main())
