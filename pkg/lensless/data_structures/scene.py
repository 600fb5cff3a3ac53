"""
SourceGrid, SceneVector, and VideoSequence classes



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from dataclasses import dataclass
import numpy as np

from lensless.utilities.exceptions import \
    GridMismatch, \
    InvalidIndex

@dataclass(frozen=True)
class SourceGrid:
    """
    The object plane: a rows x cols array of point emitters.

    The grid is centered on the optical axis with row 0 at the top
    (+y) and column 0 on the left (-x). Sources are flattened
    row-major, so source (r, c) has index r * cols + c.

    Parameters
    ----------
    rows, cols : int
        Number of emitter rows and columns.
    pitch_mm : float
        Center-to-center emitter spacing in mm.
    blocked_rows : optional, int
        Number of rows, counted from the top, that emit no light.
        Default: 0.
    """

    rows: int
    cols: int
    pitch_mm: float
    blocked_rows: int = 0

    def __post_init__(self):
        if int(self.rows) < 1 or int(self.cols) < 1:
            raise ValueError(
                f"Grid must have at least one row and column: {self.rows}x{self.cols}.")
        if not self.pitch_mm > 0:
            raise ValueError(f"Grid pitch must be positive: {self.pitch_mm}.")
        if not 0 <= int(self.blocked_rows) <= int(self.rows):
            raise ValueError(
                f"blocked_rows must be between 0 and {self.rows}: {self.blocked_rows}.")
        object.__setattr__(self, "rows", int(self.rows))
        object.__setattr__(self, "cols", int(self.cols))
        object.__setattr__(self, "pitch_mm", float(self.pitch_mm))
        object.__setattr__(self, "blocked_rows", int(self.blocked_rows))

    @property
    def size(self):
        return self.rows * self.cols

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def extent_mm(self):
        """
        Physical extent (height, width) between outermost emitter centers.
        """
        return ((self.rows - 1) * self.pitch_mm,
                (self.cols - 1) * self.pitch_mm)

    def is_blocked(self, index):
        r, _ = coords_of(index, self)
        return r < self.blocked_rows

    def same_layout(self, other):
        return (self.rows, self.cols, self.pitch_mm) == \
          (other.rows, other.cols, other.pitch_mm)

    def to_dict(self):
        return {"rows": self.rows, "cols": self.cols,
                "pitch_mm": self.pitch_mm,
                "blocked_rows": self.blocked_rows}

    def __str__(self):
        return f"{self.rows}x{self.cols} grid (pitch {self.pitch_mm} mm)"

def index_of(r, c, grid):
    """
    Flattened index of source (r, c).

    Examples
    --------
    >>> index_of(1, 2, SourceGrid(4, 4, 6.1))
    6
    """
    if not (0 <= r < grid.rows and 0 <= c < grid.cols):
        raise InvalidIndex((r, c), grid)
    return int(r) * grid.cols + int(c)

def coords_of(index, grid):
    """
    (row, column) of a flattened source index.
    """
    if not 0 <= index < grid.size:
        raise InvalidIndex(index, grid)
    return divmod(int(index), grid.cols)

def source_position_mm(index, grid):
    """
    Lateral (x, y) position in mm of a source, with the grid
    centered at (0, 0) and row 0 at +y.
    """
    r, c = coords_of(index, grid)
    x = (c - (grid.cols - 1) / 2) * grid.pitch_mm
    y = ((grid.rows - 1) / 2 - r) * grid.pitch_mm
    return (x, y)

def source_positions_mm(grid):
    """
    Array of shape (size, 2) with the positions of all sources.
    """
    r, c = np.divmod(np.arange(grid.size), grid.cols)
    x = (c - (grid.cols - 1) / 2) * grid.pitch_mm
    y = ((grid.rows - 1) / 2 - r) * grid.pitch_mm
    return np.stack([x, y], axis=1)

class SceneVector:
    """
    Nonnegative emitter intensities over a SourceGrid.

    Values are stored flattened in row-major order. The array is
    made read-only so scenes can be shared freely.

    Parameters
    ----------
    grid : SourceGrid
        The grid the values live on.
    values : array_like
        Either rows * cols values or a (rows, cols) image.
    """
    def __init__(self, grid, values):
        values = np.array(values, dtype=np.float64).reshape(-1)
        if values.size != grid.size:
            raise GridMismatch(grid.size, values.size)
        if not np.isfinite(values).all() or (values < 0).any():
            raise ValueError("Scene values must be finite and nonnegative.")
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    @classmethod
    def from_image(cls, grid, image):
        return cls(grid, np.asarray(image).reshape(grid.shape))

    @classmethod
    def one_hot(cls, grid, index):
        r, c = coords_of(index, grid)
        values = np.zeros(grid.size)
        values[r * grid.cols + c] = 1
        return cls(grid, values)

    def as_image(self):
        return self.values.reshape(self.grid.shape)

    @property
    def is_binary(self):
        return bool(np.isin(self.values, (0, 1)).all())

    def check_grid(self, grid):
        if not self.grid.same_layout(grid):
            raise GridMismatch(str(grid), str(self.grid))

    def __add__(self, other):
        other.check_grid(self.grid)
        return SceneVector(self.grid, self.values + other.values)

    def __mul__(self, factor):
        return SceneVector(self.grid, factor * self.values)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SceneVector):
            return NotImplemented
        return self.grid == other.grid and \
          np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"SceneVector({self.grid}, {int((self.values > 0).sum())} lit)"

class VideoSequence:
    """
    An ordered list of scenes on a shared grid.

    Parameters
    ----------
    grid : SourceGrid
    frames : list of SceneVector
    frame_period_ms : float
        Time between frames.
    period : optional, int
        Length of the animation cycle in frames, if it repeats.
    """
    def __init__(self, grid, frames, frame_period_ms, period=None):
        frames = list(frames)
        if len(frames) == 0:
            raise ValueError("A video needs at least one frame.")
        for frame in frames:
            frame.check_grid(grid)
        self.grid = grid
        self.frames = tuple(frames)
        self.frame_period_ms = float(frame_period_ms)
        self.period = period

    def __len__(self):
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)

    def __getitem__(self, i):
        return self.frames[i]
