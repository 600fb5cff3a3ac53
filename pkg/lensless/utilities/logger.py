"""
lensless logger



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import logging
import sys

from lensless.config import lenslesscfg

ufstring = lenslesscfg["lensless"].get(
    "log_format", "%(name)-3s: [%(levelname)-9s] %(asctime)s %(message)s",
    raw=True)

lenslessLogger = logging.getLogger("lensless")
lensless_sh = logging.StreamHandler(stream=sys.stderr)
lensless_sh.setFormatter(logging.Formatter(ufstring))
lenslessLogger.addHandler(lensless_sh)
lenslessLogger.setLevel(lenslesscfg["lensless"].getint("loglevel", 20))
lenslessLogger.propagate = False

def set_parallel_logger(rank, size):
    """
    Prefix messages with the process rank when running on
    more than one process.
    """
    if size == 1:
        return
    lensless_sh.setFormatter(logging.Formatter(f"P{rank:03d} {ufstring}"))

def set_verbosity(verbose=0, quiet=0):
    """
    Shift the log level by one step (10) per -v or -q flag.

    Returns the new level, clamped to DEBUG..CRITICAL.
    """
    level = lenslessLogger.level + 10 * (quiet - verbose)
    level = min(max(level, logging.DEBUG), logging.CRITICAL)
    lenslessLogger.setLevel(level)
    return level

class fake_pbar:
    def __init__(self, *args):
        pass
    def update(self, *args):
        pass
    def finish(self):
        pass

class log_level():
    """
    Context manager silencing messages below minlevel for the
    duration of the block unless the logger is in debug mode.
    """
    def __init__(self, minlevel, mylog=None):
        if mylog is None:
            mylog = lenslessLogger
        self.mylog = mylog
        self.minlevel = minlevel
        self.level = mylog.level

    def __enter__(self):
        if logging.DEBUG < self.level < self.minlevel:
            self.mylog.setLevel(logging.ERROR)

    def __exit__(self, *args):
        self.mylog.setLevel(self.level)
