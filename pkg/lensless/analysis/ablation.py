"""
encoding-channel ablations



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import dataclass

from lensless.analysis.still import \
    render_and_invert
from lensless.calibration.calibrate import \
    apply_mask, \
    calibrate, \
    shadow_mask
from lensless.data_structures.patterns import \
    make_pattern
from lensless.simulation.sensor_model import \
    default_n_avg
from lensless.solver.alpha_selection import \
    default_alpha_strategy
from lensless.solver.svd import \
    condition_number
from lensless.utilities.logger import \
    lenslessLogger as mylog

@dataclass(frozen=True)
class Ablation:
    """
    Which position-encoding channels to remove.

    Attributes
    ----------
    mask_shadows : bool
        Delete the pixels covered by particle shadows.
    no_scatterers : bool
        Simulate without dust particles.
    no_texture : bool
        Simulate without the static texture field.
    """

    mask_shadows: bool = False
    no_scatterers: bool = False
    no_texture: bool = False

    @property
    def is_identity(self):
        return not (self.mask_shadows or self.no_scatterers or self.no_texture)

    def apply_config(self, cfg):
        if self.no_scatterers:
            cfg = cfg.without_scatterers()
        if self.no_texture:
            cfg = cfg.without_texture()
        return cfg

    def to_dict(self):
        return {"mask_shadows": self.mask_shadows,
                "no_scatterers": self.no_scatterers,
                "no_texture": self.no_texture}

def ablated_calibration(cfg, ablation, n_avg=default_n_avg, rng_seed=0, mask_margin_px=2):
    """
    Calibrate with the ablation applied.

    Shadow masks are drawn from the unablated setup and cover the
    shadows of every source.

    Returns
    -------
    (OpticsConfig, CalibrationMatrix)
    """
    acfg = ablation.apply_config(cfg)
    A = calibrate(acfg, n_avg=n_avg, rng_seed=rng_seed)
    if ablation.mask_shadows:
        mask = shadow_mask(cfg, margin_px=mask_margin_px)
        mylog.info(f"Masking {len(mask.rects)} shadow regions.")
        A = apply_mask(A, mask)
    return acfg, A

def run_condition(cfg, ablation, pattern="stickman", n_avg=default_n_avg, rng_seed=0,
                  alpha_strategy=default_alpha_strategy):
    acfg, A = ablated_calibration(cfg, ablation, n_avg=n_avg, rng_seed=rng_seed)
    truth = make_pattern(pattern, cfg.grid)
    result = render_and_invert(A, acfg, truth, n_avg=n_avg, rng_seed=rng_seed,
                               alpha_strategy=alpha_strategy)
    row = result.report.to_dict()
    row.update({"condition_number": condition_number(A.factors),
                "n_pixels": A.n_pixels,
                "alpha": result.alpha})
    return row

def run_ablation(cfg, ablation, pattern="stickman", n_avg=default_n_avg, rng_seed=0,
                 alpha_strategy=default_alpha_strategy):
    """
    Reconstruct a pattern with and without an ablation.

    Parameters
    ----------
    cfg : OpticsConfig
        The unablated setup.
    ablation : Ablation

    Returns
    -------
    dict with "ablation", "baseline", and "ablated" entries, each
    report holding the quality scores and the condition number.
    """

    kwargs = dict(pattern=pattern, n_avg=n_avg, rng_seed=rng_seed,
                  alpha_strategy=alpha_strategy)
    baseline = run_condition(cfg, Ablation(), **kwargs)
    if ablation.is_identity:
        ablated = dict(baseline)
    else:
        ablated = run_condition(cfg, ablation, **kwargs)
    return {"ablation": ablation.to_dict(), "pattern": pattern,
            "baseline": baseline, "ablated": ablated}
