"""
lensless imports



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from lensless.analysis.ablation import \
    Ablation, \
    run_ablation
from lensless.analysis.analysis_pipeline import AnalysisPipeline
from lensless.analysis.diagnostics import \
    correlation_map, \
    decay_index, \
    otsu_threshold, \
    pearson, \
    singular_decay, \
    threshold
from lensless.analysis.quality import \
    QualityReport, \
    score
from lensless.analysis.still import \
    invert, \
    measure_scene, \
    render_and_invert
from lensless.analysis.sweep import \
    SweepPoint, \
    calibrate_point, \
    run_sweep
from lensless.calibration.calibrate import \
    apply_mask, \
    calibrate, \
    calibrate_stack, \
    estimate_fov, \
    shadow_mask
from lensless.calibration.io import \
    load_calibration, \
    load_calibration_stack, \
    save_calibration, \
    save_calibration_stack
from lensless.data_structures.calibration_matrix import \
    CalibrationMatrix, \
    CalibrationStack, \
    PixelMask
from lensless.data_structures.frame import \
    Frame, \
    load_frame, \
    save_frame
from lensless.data_structures.optics_config import \
    DustScatterer, \
    OpticsConfig, \
    SensorSpec, \
    desk_scale_config, \
    full_scale_config
from lensless.data_structures.patterns import \
    add_animation, \
    add_pattern, \
    make_pattern, \
    make_video
from lensless.data_structures.scene import \
    SceneVector, \
    SourceGrid, \
    VideoSequence
from lensless.simulation.forward_model import \
    render_psf, \
    render_scene
from lensless.simulation.sensor_model import \
    capture_averaged
from lensless.solver.alpha_selection import \
    add_alpha_strategy, \
    select_alpha
from lensless.solver.refocus import \
    refocus
from lensless.solver.svd import \
    condition_number, \
    svd
from lensless.solver.tikhonov import \
    Reconstructor, \
    build_reconstructor, \
    load_reconstructor, \
    reconstruct, \
    save_reconstructor, \
    tikhonov_solve

from lensless.utilities.parallel import \
    parallel_sources

__version__ = '0.1.dev1'
