"""
parallel utilities



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from yt.funcs import is_root
from yt.utilities.parallel_tools.parallel_analysis_interface import \
    _get_comm, \
    parallel_objects

def parallel_sources(n_sources, njobs=0, dynamic=False):
    """
    Iterate over source indices in parallel.

    Yields (storage, index) pairs. The loop body stores its result
    in storage.result; after the loop, the combined results are
    available as a dict keyed by source index through the
    ``results`` attribute of the returned iterator, on every process.

    This uses the yt
    :func:`~yt.utilities.parallel_tools.parallel_analysis_interface.parallel_objects`
    function, which is parallelized with MPI underneath. Run
    serially, it is an ordinary loop.

    Parameters
    ----------
    n_sources : int
        Number of sources to iterate over.
    njobs : optional, int
        The number of process groups. Set to 0 to use one group
        per processor.
        Default: 0
    dynamic : optional, bool
        Set to True to allocate iterations with a task queue.
        Default: False

    Examples
    --------

    >>> loop = ParallelSourceLoop(16)
    >>> for store, j in loop:
    ...     store.result = j**2
    >>> loop.results[3]
    9
    """
    return ParallelSourceLoop(n_sources, njobs=njobs, dynamic=dynamic)

class ParallelSourceLoop:
    def __init__(self, n_sources, njobs=0, dynamic=False):
        self.n_sources = int(n_sources)
        self.njobs = njobs
        self.dynamic = dynamic
        self.results = {}

    def __iter__(self):
        storage = {}
        for store, index in parallel_objects(
                range(self.n_sources), storage=storage,
                njobs=self.njobs, dynamic=self.dynamic):
            store.result_id = index
            yield store, index
        self.results = storage

def comm_rank_size():
    """
    Rank of this process and the number of processes.
    """
    comm = _get_comm(())
    return comm.rank, comm.size

__all__ = ["comm_rank_size", "is_root", "parallel_sources", "ParallelSourceLoop"]
