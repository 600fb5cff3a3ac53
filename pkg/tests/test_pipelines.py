"""
tests for analysis pipeline



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import json
from numpy.testing import assert_equal
import os
import pytest

import lensless
from lensless.analysis.sweep import SweepPoint
from lensless.utilities.testing import \
    TempDirTest, \
    noiseless_desk_config, \
    small_config

def set_test_result(point, output_dir=None):
    point.results["test_result"] = 2 * point.distance_mm
    with open(os.path.join(output_dir, f"{point.distance_mm:g}.txt"), "w") as f:
        f.write(str(point.results["test_result"]))

def minimum_distance_filter(point, value):
    return point.distance_mm > value

def set_always(point):
    point.results["test_always"] = 1

def my_recipe(ap):
    ap.add_operation(minimum_distance_filter, 200)
    ap.add_operation(set_test_result, output_dir="my_analysis")
    ap.add_operation(set_always, always_do=True)

class AnalysisPipelineTest(TempDirTest):

    def test_pipeline(self):
        ap = lensless.AnalysisPipeline(output_dir="analysis")
        ap.add_recipe(my_recipe)

        cfg = small_config()
        points = [SweepPoint(cfg.with_distance(D), f"points/D{D:g}")
                  for D in (85., 343., 497.)]
        kept = ap.process_targets(points)
        assert kept == points[1:]
        assert ap.dropped == {"SweepPoint(D=85 mm)": "minimum_distance_filter"}
        assert set(ap.timings) == \
          {"minimum_distance_filter", "set_test_result", "set_always"}
        assert all(t >= 0 for t in ap.timings.values())

        assert os.path.exists("analysis/my_analysis")
        assert not os.path.exists("analysis/my_analysis/85.txt")
        assert os.path.exists("analysis/my_analysis/343.txt")

        assert "test_result" not in points[0].results
        assert_equal(points[1].results["test_result"], 686.)
        for point in points:
            assert_equal(point.results["test_always"], 1)

    def test_bad_operation(self):
        ap = lensless.AnalysisPipeline()
        with pytest.raises(ValueError):
            ap.add_operation("calibrate")
        with pytest.raises(ValueError):
            ap.add_recipe(None)

    def test_calibrate_point(self):
        ap = lensless.AnalysisPipeline()
        ap.add_operation(lensless.calibrate_point)
        point = SweepPoint(small_config(), "point")
        ap.process_target(point)
        assert_equal(point.calibration.shape, (480, 16))
        for key in ("condition_number", "condition_note", "rank",
                    "fov_in_sensor", "shadow_fov"):
            assert key in point.results

class SweepTest(TempDirTest):

    def test_sweep(self):
        distances = [497., 165., 343.]
        summary = lensless.run_sweep(
            noiseless_desk_config(), distances=distances, output_dir="sweep",
            alpha_strategy="fixed-fraction(1e-6)")

        assert summary["distances_mm"] == [165., 343., 497.]
        assert_equal(len(summary["points"]), 3)
        for D in summary["distances_mm"]:
            point_dir = os.path.join("sweep", f"D{D:g}mm")
            for fn in ("decay.csv", "correlation_h.csv", "correlation_v.csv",
                       "correlation_diag.csv", "stickman_raw.pgm",
                       "stickman_binary.pgm", "report.json"):
                assert os.path.exists(os.path.join(point_dir, fn)), fn
        assert os.path.exists("sweep/stack.h5")

        with open("sweep/sweep.json") as f:
            data = json.load(f)
        assert data["refocus"]["pattern"] == "stickman"
        assert data["refocus"]["rendered_at_mm"] == 343.
        assert data["refocus"]["distance_mm"] == 343.
        assert data["refocus"]["correct"]
        assert "calibrate_point" in data["timings_s"]

        shadow_counts = [point["shadow_fov"] for point in data["points"]]
        assert shadow_counts == sorted(shadow_counts)
        for point in data["points"]:
            assert point["correlation_h_max"] <= 0.999
            assert 0 <= point["line_h_length"] <= 16
            assert point["decay_index_1e-2"] < 256

        stack = lensless.load_calibration_stack("sweep/stack.h5")
        assert stack.distances == [165., 343., 497.]

    def test_empty_sweep(self):
        with pytest.raises(ValueError):
            lensless.run_sweep(small_config(), distances=[])
