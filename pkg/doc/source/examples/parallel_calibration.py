"""
Record a calibration in parallel.

Run with mpirun, e.g., "mpirun -np 4 python parallel_calibration.py".
The columns are divided among processors and the assembled matrix
is identical to a serial calibration with the same seed.
"""

import yt
yt.enable_parallelism()
import lensless

if __name__ == "__main__":
    cfg = lensless.desk_scale_config()
    A = lensless.calibrate(cfg, n_avg=4, rng_seed=3, dynamic=True)
    if yt.is_root():
        lensless.save_calibration(A, "calibration.lcal")
        A2 = lensless.load_calibration("calibration.lcal")
        assert A2 == A
        print (A2)
