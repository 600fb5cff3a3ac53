"""
Build an analysis pipeline over a series of object distances.

A custom alpha strategy and a custom operation are added next to
the built-in calibration step. Each distance keeps only the
results it passes a condition number cut for.
"""

import numpy as np
import os
import lensless

def smallest_kept(f, b):
    # regularize at the smallest kept singular value
    return f.S[-1]

def well_posed(point, limit):
    return point.results["condition_number"] < limit

def letter_accuracy(point):
    truth = lensless.make_pattern("letter-T", point.cfg.grid)
    result = lensless.render_and_invert(
        point.calibration, point.cfg, truth,
        alpha_strategy=point.alpha_strategy)
    point.results["letter_T_accuracy"] = result.report.pixel_accuracy

def save_results(point):
    fn = os.path.join(point.output_dir, "results.npy")
    np.save(fn, np.array([point.distance_mm,
                          point.results["condition_number"],
                          point.results.get("letter_T_accuracy", np.nan)]))

if __name__ == "__main__":
    lensless.add_alpha_strategy("smallest-kept", smallest_kept)

    cfg = lensless.desk_scale_config()
    ap = lensless.AnalysisPipeline(output_dir="distance_pipeline")
    ap.add_operation(lensless.calibrate_point)
    ap.add_operation(well_posed, 1e6)
    ap.add_operation(letter_accuracy)
    ap.add_operation(save_results, always_do=True)

    points = [lensless.SweepPoint(cfg.with_distance(D),
                                  os.path.join(ap.output_dir, f"D{D:g}mm"),
                                  alpha_strategy="smallest-kept")
              for D in (165., 343.)]
    for point in ap.process_targets(points):
        print (point, point.results["letter_T_accuracy"])
    print ("dropped:", ap.dropped)
    print ("seconds per operation:", dict(ap.timings))
