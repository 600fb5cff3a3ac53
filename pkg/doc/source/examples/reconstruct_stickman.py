"""
Calibrate the desk-scale setup and reconstruct the stickman.

The calibration and the measurement average the default hundred
frames per capture. The raw and
thresholded reconstructions are saved as PGM images.
"""

import lensless
from lensless.analysis.diagnostics import scene_frame

if __name__ == "__main__":
    cfg = lensless.desk_scale_config()
    A = lensless.calibrate(cfg, rng_seed=1)
    f = A.factors
    print (f"Condition number: {lensless.condition_number(f):.4g}")

    truth = lensless.make_pattern("stickman", cfg.grid)
    result = lensless.render_and_invert(
        A, cfg, truth, rng_seed=2,
        alpha_strategy="fixed-fraction(1e-3)")
    print (result.report)

    lensless.save_frame(scene_frame(result.values, cfg.grid), "stickman_raw.pgm")
    lensless.save_frame(scene_frame(result.binary, cfg.grid), "stickman_binary.pgm")
