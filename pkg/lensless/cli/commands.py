"""
command line subcommands



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np
import os
import time

from lensless.analysis.ablation import \
    Ablation, \
    run_ablation
from lensless.analysis.diagnostics import \
    scene_frame, \
    threshold
from lensless.analysis.still import \
    invert, \
    measure_scene
from lensless.analysis.sweep import \
    run_sweep
from lensless.calibration.calibrate import \
    calibrate, \
    measurement_vector
from lensless.calibration.io import \
    LCAL_MAGIC, \
    header_to_json, \
    load_calibration, \
    read_calibration_header, \
    save_calibration
from lensless.cli.run_config import \
    load_run_config
from lensless.data_structures.calibration_matrix import \
    CalibrationMeta
from lensless.data_structures.frame import \
    load_frame, \
    save_frame
from lensless.data_structures.optics_config import \
    default_distances
from lensless.data_structures.patterns import \
    make_pattern, \
    make_video
from lensless.simulation.forward_model import \
    psf_matrix
from lensless.solver.alpha_selection import \
    select_alpha
from lensless.solver.refocus import \
    relative_residual
from lensless.solver.svd import \
    report_condition
from lensless.solver.tikhonov import \
    LREC_MAGIC, \
    build_reconstructor, \
    load_reconstructor, \
    read_reconstructor_header, \
    reconstruct, \
    save_reconstructor
from lensless.utilities.exceptions import \
    BadMagic, \
    DimensionMismatch, \
    LenslessDataError
from lensless.utilities.io import \
    ensure_dir, \
    write_json
from lensless.utilities.logger import \
    lenslessLogger as mylog
from lensless.utilities.units import \
    to_mm

# frames excluded from the mean video latency
video_warmup = 3

def save_scene(run, values, grid, stem):
    """
    Save a reconstruction as an image in each of the configured
    formats.

    Returns
    -------
    list of str
    """
    ensure_dir(run.output_dir)
    frame = scene_frame(values, grid)
    return [save_frame(frame, run.output_path(f"{stem}.{fmt}"))
            for fmt in run.formats]

def _check_geometry(run, meta, filename):
    expected = CalibrationMeta.from_config(run.optics)
    if not expected.same_geometry(meta):
        raise DimensionMismatch(
            f"{meta.grid_rows}x{meta.grid_cols} sources, "
            f"{meta.sensor_w}x{meta.sensor_h} sensor in {filename}",
            f"{expected.grid_rows}x{expected.grid_cols} sources, "
            f"{expected.sensor_w}x{expected.sensor_h} sensor in the configuration",
            what="setup geometry")

def cmd_calibrate(args):
    """
    Calibrate the configured setup and save the LCAL1 file.
    """
    run = load_run_config(args)
    A = calibrate(run.optics, n_avg=run.n_avg, rng_seed=run.seed)
    filename = args.calibration_file
    dirname = os.path.dirname(filename)
    if dirname:
        ensure_dir(dirname)
    save_calibration(A, filename)
    cond, note = report_condition(A.factors, log=False)
    print(f"Condition number: {cond:.6g}")
    print(note)
    return 0

def cmd_reconstruct(args):
    """
    Reconstruct a measurement, or with --pattern, render a known
    scene and reconstruct it.
    """
    run = load_run_config(args)
    A = load_calibration(args.calibration)
    grid = A.grid
    truth = None
    if args.pattern is not None:
        truth = make_pattern(args.pattern, run.optics.grid)
        frame = measure_scene(truth, run.optics, n_avg=run.n_avg, rng_seed=run.seed)
    elif args.measurement is not None:
        frame = load_frame(args.measurement)
    else:
        raise LenslessDataError("Give a measurement file or --pattern.")

    result = invert(A, frame, alpha_strategy=run.strategy,
                    method=run.threshold, truth=truth)
    written = save_scene(run, result.values, grid, "scene_raw")
    written += save_scene(run, result.binary, grid, "scene_binary")

    report = {"calibration": args.calibration,
              "alpha": result.alpha,
              "alpha_strategy": run.strategy,
              "threshold": run.threshold,
              "residual_rel": relative_residual(A, result.values, result.measurement),
              "n_lit": int(result.binary.sum())}
    if result.report is not None:
        report["pattern"] = args.pattern
        report["quality"] = result.report.to_dict()
    write_json(run.output_path("report.json"), report)
    for key in ("alpha", "residual_rel"):
        print(f"{key}: {report[key]:.6g}")
    if result.report is not None:
        print(f"pixel_accuracy: {result.report.pixel_accuracy:.6g}")
    return 0

def _video_reconstructor(args, run, first_scene):
    """
    Load or build the Reconstructor for a video run.

    Returns
    -------
    (Reconstructor, measure, setup seconds)
    """
    cfg = run.optics
    with open(args.source, mode="rb") as f:
        magic = f.read(5)

    if magic == LREC_MAGIC:
        t0 = time.perf_counter()
        R = load_reconstructor(args.source)
        setup = time.perf_counter() - t0
        if R.n_sources != cfg.grid.size:
            raise DimensionMismatch(cfg.grid.size, R.n_sources,
                                    what=f"source count of {args.source}")

        def measure(scene, k):
            b = measure_scene(scene, cfg, n_avg=run.n_avg,
                              rng_seed=run.seed, k=k).vector
            if b.size != R.n_pixels:
                raise DimensionMismatch(R.n_pixels, b.size,
                                        what=f"measurement for {args.source}")
            return b
        return R, measure, setup

    A = load_calibration(args.source)
    _check_geometry(run, A.meta, args.source)

    def measure(scene, k):
        return measurement_vector(
            A, measure_scene(scene, cfg, n_avg=run.n_avg, rng_seed=run.seed, k=k))

    b0 = measure(first_scene, 0)
    t0 = time.perf_counter()
    f = A.factors
    alpha = select_alpha(f, b0, run.strategy)
    R = build_reconstructor(f, alpha)
    setup = time.perf_counter() - t0
    if args.save_reconstructor is not None:
        save_reconstructor(R, args.save_reconstructor)
    return R, measure, setup

def cmd_video(args):
    """
    Reconstruct an animation frame by frame with one precomputed
    Reconstructor, timing each inversion.
    """
    run = load_run_config(args)
    grid = run.optics.grid
    video = make_video(args.animation, grid, args.frames)
    R, measure, setup = _video_reconstructor(args, run, video[0])

    solve_ms = []
    total_ms = []
    for k, scene in enumerate(video):
        b = measure(scene, k)

        t0 = time.perf_counter()
        image = reconstruct(R, b).reshape(grid.shape)
        t1 = time.perf_counter()
        binary = threshold(image.ravel(), run.threshold)
        t2 = time.perf_counter()

        solve_ms.append(1e3 * (t1 - t0))
        total_ms.append(1e3 * (t2 - t0))
        if not args.no_images:
            save_scene(run, image, grid, f"frame_{k:04d}_raw")
            save_scene(run, binary, grid, f"frame_{k:04d}_binary")

    warmup = video_warmup if len(video) > video_warmup else 0
    timing = {"animation": args.animation,
              "n_frames": len(video),
              "frame_period_ms": video.frame_period_ms,
              "setup_s": setup,
              "warmup_frames": warmup,
              "per_frame_ms": solve_ms,
              "per_frame_with_threshold_ms": total_ms,
              "mean_ms": float(np.mean(solve_ms[warmup:])),
              "mean_with_threshold_ms": float(np.mean(total_ms[warmup:]))}
    ensure_dir(run.output_dir)
    write_json(run.output_path("timing.json"), timing)
    print(f"setup: {setup:.4g} s")
    print(f"mean per-frame inversion: {timing['mean_ms']:.4g} ms")
    print(f"mean including thresholding: {timing['mean_with_threshold_ms']:.4g} ms")
    return 0

def parse_distances(text):
    """
    Parse "85,165,34.3 cm" into distances in mm.
    """
    distances = [to_mm(item) for item in text.split(",") if item.strip()]
    if not distances:
        raise ValueError(f"No distances in \"{text}\".")
    return distances

def cmd_sweep(args):
    """
    Calibrate and characterize the setup at a series of distances.
    """
    run = load_run_config(args)
    if args.distances is None:
        distances = default_distances
    else:
        distances = parse_distances(args.distances)
    summary = run_sweep(run.optics, distances=distances,
                        output_dir=run.output_dir, n_avg=run.n_avg,
                        rng_seed=run.seed, alpha_strategy=run.strategy)
    for row in summary["points"]:
        print(f"D = {row['distance_mm']:g} mm: "
              f"condition number {row['condition_number']:.6g}")
    rf = summary["refocus"]
    print(f"refocus: {rf['distance_mm']:g} mm "
          f"(rendered at {rf['rendered_at_mm']:g} mm)")
    return 0

def cmd_ablate(args):
    """
    Compare the stickman reconstruction with and without encoding
    channels.
    """
    run = load_run_config(args)
    ablation = Ablation(mask_shadows=args.mask_shadows,
                        no_scatterers=args.no_scatterers,
                        no_texture=args.no_texture)
    report = run_ablation(run.optics, ablation, pattern=args.pattern,
                          n_avg=run.n_avg, rng_seed=run.seed,
                          alpha_strategy=run.strategy)
    ensure_dir(run.output_dir)
    write_json(run.output_path("ablation.json"), report)
    keys = ("pixel_accuracy", "residual_rel", "condition_number")
    for name in ("baseline", "ablated"):
        row = report[name]
        print(f"{name}: " + ", ".join(f"{key} {row[key]:.6g}" for key in keys))
    return 0

def column_errors(A, cfg):
    """
    Relative error of each calibration column against the noiseless
    point spread function.
    """
    P = psf_matrix(cfg.noiseless())
    keep = A.meta.mask.keep_map(A.meta.sensor_w, A.meta.sensor_h).ravel()
    P = P[keep]
    diff = np.linalg.norm(A.data - P, axis=0)
    norm = np.linalg.norm(P, axis=0)
    return np.where(norm > 0, diff / np.where(norm > 0, norm, 1), diff)

def cmd_verify(args):
    """
    Check calibration columns against re-rendered noiseless PSFs.
    """
    run = load_run_config(args)
    A = load_calibration(args.calibration)
    _check_geometry(run, A.meta, args.calibration)
    cfg = run.optics.with_distance(A.distance_mm)
    errors = column_errors(A, cfg)
    worst = int(np.argmax(errors))
    print(f"max relative column error: {errors[worst]:.6g} (source {worst})")
    if errors[worst] > args.tolerance:
        mylog.error(f"Column {worst} differs from its PSF by more than {args.tolerance:g}.")
        return 2
    return 0

def cmd_info(args):
    """
    Print the header of an LCAL1 or LREC1 file.
    """
    with open(args.filename, mode="rb") as f:
        magic = f.read(5)
    if magic == LCAL_MAGIC:
        fields = read_calibration_header(args.filename)
        fields["format"] = "LCAL1"
    elif magic == LREC_MAGIC:
        fields = read_reconstructor_header(args.filename)
        fields["format"] = "LREC1"
    else:
        raise BadMagic(args.filename, b"LCAL1 or LREC1", magic)
    print(header_to_json(fields))
    return 0
