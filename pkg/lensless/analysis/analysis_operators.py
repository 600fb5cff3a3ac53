"""
AnalysisPipeline operators



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

class AnalysisOperation:
    """
    One step of an AnalysisPipeline: a function plus the arguments
    it is called with.

    Parameters
    ----------
    function : callable
        A function that minimally accepts the pipeline target, such
        as a :class:`~lensless.analysis.sweep.SweepPoint`. The
        function may also accept additional positional and keyword
        arguments.
    always_do : optional, bool
        Run even after an earlier operation has filtered the target
        out.
    """
    def __init__(self, function, *args, always_do=False, **kwargs):
        self.function = function
        self.always_do = always_do
        self.args = args
        self.kwargs = kwargs

    @property
    def name(self):
        return getattr(self.function, "__name__", repr(self.function))

    def __call__(self, target):
        return self.function(target, *self.args, **self.kwargs)

    def __repr__(self):
        return f"AnalysisOperation({self.name})"
