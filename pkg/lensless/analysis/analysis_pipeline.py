"""
AnalysisPipeline class and member functions



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from collections import defaultdict
import os
import time

from yt.utilities.parallel_tools.parallel_analysis_interface import \
    parallel_root_only

from lensless.analysis.analysis_operators import \
    AnalysisOperation
from lensless.utilities.io import \
    ensure_dir
from lensless.utilities.logger import \
    lenslessLogger as mylog

class AnalysisPipeline:
    """
    Run an ordered list of operations over sweep points.

    Each operation is called with the point first, then its own
    arguments. It can store values in ``point.results``, write
    files, or return False to drop the point. A dropped point skips
    every later operation except those added with ``always_do=True``.

    Parameters
    ----------
    output_dir : optional, str
        Base directory for files. An operation given an
        ``output_dir`` keyword writes to that subdirectory of it.
        Default: the current directory.

    Attributes
    ----------
    timings : dict
        Total seconds spent in each operation, keyed by name.
    dropped : dict
        For each dropped target, keyed by ``str(target)``, the name
        of the operation that dropped it.

    Examples
    --------

    >>> import lensless
    >>>
    >>> def well_posed(point, limit):
    ...     return point.results["condition_number"] < limit
    >>>
    >>> ap = lensless.AnalysisPipeline(output_dir="sweep")
    >>> ap.add_operation(lensless.calibrate_point)
    >>> ap.add_operation(well_posed, 1e6)
    >>> kept = ap.process_targets(points)
    >>> print (ap.dropped)
    """

    def __init__(self, output_dir=None):
        self.actions = []
        if output_dir is None:
            output_dir = "."
        self.output_dir = ensure_dir(output_dir)
        self.timings = defaultdict(float)
        self.dropped = {}
        self._preprocessed = False

    def add_operation(self, function, *args, always_do=False, **kwargs):
        """
        Append an operation.

        Parameters
        ----------
        function : callable
            Called as ``function(target, *args, **kwargs)``.
        always_do : optional, bool
            Run even on targets an earlier operation dropped.
            Default: False
        """

        if not callable(function):
            raise ValueError("function argument must be a callable function.")

        self.actions.append(
            AnalysisOperation(function, *args, always_do=always_do, **kwargs))

    def add_recipe(self, function, *args, **kwargs):
        """
        Call ``function(pipeline, *args, **kwargs)``, which adds a
        group of operations.
        """

        if not callable(function):
            raise ValueError("function argument must be a callable function.")

        AnalysisOperation(function, *args, **kwargs)(self)

    @parallel_root_only
    def _preprocess(self):
        "Create output directories."

        if self._preprocessed:
            return

        for action in self.actions:
            my_output_dir = action.kwargs.get("output_dir")
            if my_output_dir is not None:
                action.kwargs["output_dir"] = ensure_dir(
                    os.path.join(self.output_dir, my_output_dir))

        self._preprocessed = True

    def process_target(self, target):
        """
        Run the operations on one target.

        Returns
        -------
        bool
            False if an operation dropped the target.
        """
        self._preprocess()
        keep = True
        for action in self.actions:
            if not (keep or action.always_do):
                continue
            mylog.debug(f"Running {action.name} on {target}.")
            t0 = time.perf_counter()
            rval = action(target)
            self.timings[action.name] += time.perf_counter() - t0
            if keep and rval is not None and not rval:
                keep = False
                self.dropped[str(target)] = action.name
                mylog.info(f"{target} dropped by {action.name}.")

        return keep

    def process_targets(self, targets):
        """
        Run the operations on each target in order.

        Returns
        -------
        list
            The targets that were not dropped.
        """
        return [target for target in targets
                if self.process_target(target)]
