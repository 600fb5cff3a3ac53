"""
run configuration for the command line tool



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import dataclass, field, replace
import json
import os

from lensless.config import lenslesscfg
from lensless.data_structures.optics_config import \
    OpticsConfig, \
    desk_scale_config
from lensless.data_structures.scene import \
    SourceGrid
from lensless.simulation.sensor_model import \
    default_n_avg
from lensless.solver.alpha_selection import \
    default_alpha_strategy, \
    parse_alpha_strategy
from lensless.utilities.exceptions import \
    LenslessConfigError
from lensless.utilities.misc import \
    format_operator_id, \
    parse_operator_id
from lensless.utilities.units import \
    to_mm

frame_formats = ("pgm", "lfr")
threshold_methods = ("otsu", "fixed")

_sections = {
    "acquisition": ("n_avg",),
    "solver": ("alpha_strategy", "alpha_value", "threshold"),
    "io": ("output_dir", "formats"),
}

def _check_keys(data, allowed, where):
    if not isinstance(data, dict):
        raise LenslessConfigError("must be a JSON object", key=where)
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise LenslessConfigError(f"unknown keys {unknown}", key=where)

def default_output_dir():
    return lenslesscfg["lensless"].get("output_dir", ".")

@dataclass(frozen=True)
class RunConfig:
    """
    Everything a command needs: the optics, the acquisition, the
    solver settings, where to write, and the seed.

    Parameters
    ----------
    optics : OpticsConfig
    n_avg : int
        Frames averaged per calibration column and per measurement.
        Default: 100
    alpha_strategy : str
        Alpha selection strategy id.
    alpha_value : optional, float
        If given, used as alpha and alpha_strategy is ignored.
    threshold : str
        "otsu" or "fixed(t)".
    output_dir : str
    formats : tuple of str
        Frame formats written for scene images: "pgm" and/or "lfr".
    seed : int
    """

    optics: OpticsConfig = field(default_factory=desk_scale_config)
    n_avg: int = default_n_avg
    alpha_strategy: str = default_alpha_strategy
    alpha_value: float = None
    threshold: str = "otsu"
    output_dir: str = field(default_factory=default_output_dir)
    formats: tuple = ("pgm",)
    seed: int = 0

    def __post_init__(self):
        if int(self.n_avg) < 1:
            raise LenslessConfigError(f"{self.n_avg} must be at least 1", key="n_avg")
        object.__setattr__(self, "n_avg", int(self.n_avg))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "formats", tuple(self.formats))
        for fmt in self.formats:
            if fmt not in frame_formats:
                raise LenslessConfigError(
                    f"unknown format \"{fmt}\" (known: {', '.join(frame_formats)})",
                    key="io.formats")
        if self.alpha_value is not None and not self.alpha_value >= 0:
            raise LenslessConfigError(
                f"{self.alpha_value} must be nonnegative", key="alpha_value")
        parse_alpha_strategy(self.alpha_strategy)
        try:
            name, _ = parse_operator_id(self.threshold)
        except ValueError:
            name = None
        if name not in threshold_methods:
            raise LenslessConfigError(
                f"unknown method \"{self.threshold}\" (known: otsu, fixed(t))",
                key="threshold")

    @property
    def strategy(self):
        """
        The alpha strategy actually used.
        """
        if self.alpha_value is not None:
            return format_operator_id("fixed", (self.alpha_value,))
        return self.alpha_strategy

    def output_path(self, filename):
        return os.path.join(self.output_dir, filename)

    def to_dict(self):
        return {"optics": self.optics.to_dict(),
                "acquisition": {"n_avg": self.n_avg},
                "solver": {"alpha_strategy": self.alpha_strategy,
                           "alpha_value": self.alpha_value,
                           "threshold": self.threshold},
                "io": {"output_dir": self.output_dir,
                       "formats": list(self.formats)},
                "seed": self.seed}

    @classmethod
    def from_dict(cls, data):
        """
        Build a RunConfig from its JSON form.

        Missing entries take their defaults; the optics section is
        applied over the desk-scale configuration, with the sensor
        and grid merged key by key. Unknown keys at any level are
        an error.
        """
        _check_keys(data, ("optics", "seed") + tuple(_sections), "run config")
        kwargs = {}
        for section, keys in _sections.items():
            values = data.get(section, {})
            _check_keys(values, keys, section)
            kwargs.update(values)
        if "seed" in data:
            kwargs["seed"] = data["seed"]

        optics = desk_scale_config().to_dict()
        user_optics = data.get("optics", {})
        _check_keys(user_optics, optics, "optics")
        for key, value in user_optics.items():
            if key in ("sensor", "grid") and isinstance(value, dict):
                optics[key] = dict(optics[key], **value)
            else:
                optics[key] = value
        kwargs["optics"] = OpticsConfig.from_dict(optics)

        try:
            return cls(**kwargs)
        except (TypeError, ValueError) as err:
            raise LenslessConfigError(str(err))

    @classmethod
    def from_file(cls, filename):
        try:
            with open(filename, mode="r") as f:
                data = json.load(f)
        except OSError as err:
            raise LenslessConfigError(f"cannot read {filename} ({err.strerror})")
        except json.JSONDecodeError as err:
            raise LenslessConfigError(f"{filename} is not valid JSON ({err})")
        return cls.from_dict(data)

def parse_shape(text, sep, what):
    """
    Parse "16x16" into (16, 16).
    """
    try:
        a, b = (int(v) for v in text.lower().split(sep))
    except ValueError:
        raise LenslessConfigError(f"cannot read \"{text}\" as A{sep}B", key=what)
    return a, b

def parse_alpha(text):
    """
    A number means a fixed alpha; anything else is a strategy id.

    Returns
    -------
    (alpha_strategy, alpha_value)
    """
    try:
        return None, float(text)
    except ValueError:
        return text, None

def load_run_config(args, environ=None):
    """
    Build the RunConfig for a command: config file, then the
    LENSLESS_SEED environment variable, then command line flags.
    """

    if environ is None:
        environ = os.environ

    config_file = getattr(args, "config", None)
    if config_file is not None:
        run = RunConfig.from_file(config_file)
    else:
        run = RunConfig()

    changes = {}
    if "LENSLESS_SEED" in environ:
        try:
            changes["seed"] = int(environ["LENSLESS_SEED"])
        except ValueError:
            raise LenslessConfigError(
                f"cannot read \"{environ['LENSLESS_SEED']}\" as an integer",
                key="LENSLESS_SEED")

    def flag(name):
        return getattr(args, name, None)

    if flag("seed") is not None:
        changes["seed"] = flag("seed")
    if flag("n_avg") is not None:
        changes["n_avg"] = flag("n_avg")
    if flag("out") is not None:
        changes["output_dir"] = flag("out")
    if flag("threshold") is not None:
        changes["threshold"] = flag("threshold")
    if flag("alpha") is not None:
        strategy, value = parse_alpha(flag("alpha"))
        if strategy is None:
            changes["alpha_value"] = value
        else:
            changes["alpha_strategy"] = strategy
            changes["alpha_value"] = None

    optics = run.optics
    if flag("grid") is not None:
        rows, cols = parse_shape(flag("grid"), "x", "grid")
        try:
            grid = SourceGrid(rows, cols, optics.grid.pitch_mm,
                              blocked_rows=min(optics.grid.blocked_rows, rows))
        except ValueError as err:
            raise LenslessConfigError(str(err), key="grid")
        optics = replace(optics, grid=grid)
    if flag("sensor") is not None:
        width, height = parse_shape(flag("sensor"), "x", "sensor")
        optics = replace(optics, sensor=replace(
            optics.sensor, width_px=width, height_px=height))
    if flag("distance") is not None:
        optics = optics.with_distance(to_mm(flag("distance")))
    if flag("read_noise") is not None:
        optics = replace(optics, sensor=replace(
            optics.sensor, read_noise_sigma=flag("read_noise")))
    if flag("noiseless"):
        optics = optics.noiseless()
    changes["optics"] = optics

    return replace(run, **changes)
