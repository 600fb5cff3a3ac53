"""
distance sweep



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import os

from lensless.analysis.analysis_pipeline import \
    AnalysisPipeline
from lensless.analysis.diagnostics import \
    correlation_map, \
    decay_index, \
    save_decay, \
    scene_frame
from lensless.analysis.quality import \
    longest_recovered_line
from lensless.analysis.still import \
    clean_measurement, \
    invert, \
    measure_scene, \
    render_and_invert
from lensless.calibration.calibrate import \
    calibrate, \
    estimate_fov, \
    measurement_vector
from lensless.calibration.io import \
    save_calibration_stack
from lensless.data_structures.calibration_matrix import \
    CalibrationStack
from lensless.data_structures.frame import \
    save_frame
from lensless.data_structures.optics_config import \
    default_distances
from lensless.data_structures.patterns import \
    make_pattern
from lensless.simulation.forward_model import \
    shadow_fov
from lensless.simulation.sensor_model import \
    default_n_avg
from lensless.solver.alpha_selection import \
    default_alpha_strategy
from lensless.solver.refocus import \
    refocus
from lensless.solver.svd import \
    report_condition
from lensless.utilities.exceptions import \
    UndefinedCorrelation
from lensless.utilities.io import \
    ensure_dir, \
    write_json
from lensless.utilities.logger import \
    lenslessLogger as mylog

class SweepPoint:
    """
    One object distance of a sweep and everything computed for it.

    Attributes
    ----------
    cfg : OpticsConfig
        Setup at this distance.
    output_dir : str
        Directory for this distance's files.
    calibration : CalibrationMatrix
    results : dict
        JSON-ready results accumulated by the pipeline.
    """
    def __init__(self, cfg, output_dir, n_avg=default_n_avg, rng_seed=0,
                 alpha_strategy=default_alpha_strategy):
        self.cfg = cfg
        self.output_dir = ensure_dir(output_dir)
        self.n_avg = n_avg
        self.rng_seed = rng_seed
        self.alpha_strategy = alpha_strategy
        self.calibration = None
        self.results = {"distance_mm": cfg.distance_mm}

    @property
    def distance_mm(self):
        return self.cfg.distance_mm

    @property
    def factors(self):
        return self.calibration.factors

    def measure(self, x, k=0):
        frame = measure_scene(x, self.cfg, n_avg=self.n_avg,
                              rng_seed=self.rng_seed, k=k)
        return measurement_vector(self.calibration, frame)

    def solve(self, b):
        return invert(self.calibration, b,
                      alpha_strategy=self.alpha_strategy).values

    def __repr__(self):
        return f"SweepPoint(D={self.distance_mm:g} mm)"

def calibrate_point(point, **kwargs):
    """
    Calibrate at the point's distance and record the condition number
    and field-of-view counts.
    """
    point.calibration = calibrate(point.cfg, n_avg=point.n_avg,
                                  rng_seed=point.rng_seed, **kwargs)
    cond, note = report_condition(point.factors)
    fov = estimate_fov(point.calibration)
    point.results.update({
        "condition_number": cond,
        "condition_note": note,
        "rank": point.factors.rank,
        "decay_index_1e-2": decay_index(point.factors, 1e-2),
        "fov_in_sensor": fov.n_in_fov,
        "fov_flagged": len(fov.flagged),
        "shadow_fov": len(shadow_fov(point.cfg))})

def decay_point(point):
    save_decay(point.factors, os.path.join(point.output_dir, "decay.csv"))

def correlation_point(point, lines=("h", "v", "diag")):
    """
    Save correlation maps along the central lines.
    """
    for line in lines:
        try:
            cmap = correlation_map(point.calibration, line)
        except UndefinedCorrelation:
            mylog.warning(f"Correlation along {line} at {point} is undefined.")
            point.results[f"correlation_{line}_max"] = None
            continue
        cmap.save(os.path.join(point.output_dir, f"correlation_{line}.csv"))
        point.results[f"correlation_{line}_max"] = cmap.max_off_diagonal
        point.results[f"correlation_{line}_mean"] = cmap.mean_off_diagonal

def line_length_point(point, lines=("h", "v", "diag")):
    """
    Record the longest centered line of each orientation that is
    reconstructed exactly.
    """
    for k, line in enumerate(lines):
        length = longest_recovered_line(
            point.cfg.grid, line,
            lambda x: point.measure(x, k=100 + k), point.solve)
        point.results[f"line_{line}_length"] = length

def stickman_point(point, pattern="stickman"):
    """
    Reconstruct the stickman and save raw and thresholded images.
    """
    truth = make_pattern(pattern, point.cfg.grid)
    result = render_and_invert(point.calibration, point.cfg, truth,
                               n_avg=point.n_avg, rng_seed=point.rng_seed,
                               alpha_strategy=point.alpha_strategy)
    grid = point.cfg.grid
    save_frame(scene_frame(result.values, grid),
               os.path.join(point.output_dir, f"{pattern}_raw.pgm"))
    save_frame(scene_frame(result.binary, grid),
               os.path.join(point.output_dir, f"{pattern}_binary.pgm"))
    point.results[pattern] = result.report.to_dict()
    point.results[f"{pattern}_alpha"] = result.alpha

def report_point(point):
    write_json(os.path.join(point.output_dir, "report.json"), point.results)

def sweep_recipe(pipeline):
    pipeline.add_operation(calibrate_point)
    pipeline.add_operation(decay_point)
    pipeline.add_operation(correlation_point)
    pipeline.add_operation(line_length_point)
    pipeline.add_operation(stickman_point)
    pipeline.add_operation(report_point, always_do=True)

def run_sweep(cfg, distances=default_distances, output_dir=".",
              n_avg=default_n_avg, rng_seed=0,
              alpha_strategy=default_alpha_strategy, refocus_pattern="stickman"):
    """
    Characterize the setup over a series of object distances.

    Each distance gets its own directory with the singular-value
    decay, correlation maps, line reconstruction lengths, and the
    stickman reconstruction. A scene rendered at the middle
    distance without noise is then refocused against all
    calibrations.

    Parameters
    ----------
    cfg : OpticsConfig
    distances : optional, list of float
        Object distances in mm.
    output_dir : optional, str

    Returns
    -------
    dict
        The contents written to sweep.json.
    """

    distances = sorted(float(D) for D in distances)
    if not distances:
        raise ValueError("A sweep needs at least one distance.")

    ap = AnalysisPipeline(output_dir=output_dir)
    ap.add_recipe(sweep_recipe)

    points = []
    for D in distances:
        mylog.info(f"Sweep: D = {D:g} mm.")
        point = SweepPoint(cfg.with_distance(D),
                           os.path.join(ap.output_dir, f"D{D:g}mm"),
                           n_avg=n_avg, rng_seed=rng_seed,
                           alpha_strategy=alpha_strategy)
        ap.process_target(point)
        points.append(point)

    stack = CalibrationStack([point.calibration for point in points])
    save_calibration_stack(stack, os.path.join(ap.output_dir, "stack.h5"))

    mid = points[len(points) // 2]
    truth = make_pattern(refocus_pattern, cfg.grid)
    frame = clean_measurement(truth, mid.cfg)
    rf = refocus(stack, frame, alpha_strategy=alpha_strategy)
    refocus_row = rf.to_dict()
    refocus_row.update({"pattern": refocus_pattern, "rendered_at_mm": mid.distance_mm,
                        "correct": rf.distance_mm == mid.distance_mm})

    summary = {"distances_mm": distances,
               "points": [point.results for point in points],
               "refocus": refocus_row,
               "timings_s": dict(ap.timings)}
    write_json(os.path.join(ap.output_dir, "sweep.json"), summary)
    return summary
