"""
test patterns and animations



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

from yt.utilities.operator_registry import \
    OperatorRegistry

from lensless.data_structures.scene import \
    SceneVector, \
    VideoSequence, \
    index_of
from lensless.utilities.exceptions import \
    PatternError
from lensless.utilities.loading import \
    get_path
from lensless.utilities.misc import \
    parse_operator_id

pattern_registry = OperatorRegistry()
animation_registry = OperatorRegistry()

# 76 frames per second
default_frame_period_ms = 1000 / 76

def add_pattern(name, function):
    r"""
    Add a pattern to the registry of known patterns, so it can be
    created with :func:`~lensless.data_structures.patterns.make_pattern`.

    Parameters
    ----------
    name : string
        Name of the pattern.
    function : callable
        A function accepting a SourceGrid followed by any numeric
        arguments given in the pattern id and returning a
        (rows, cols) array of zeros and ones.

    Examples
    --------

    >>> import lensless
    >>> def border(grid):
    ...     image = np.ones(grid.shape)
    ...     image[1:-1, 1:-1] = 0
    ...     return image
    >>> lensless.add_pattern("border", border)
    >>> x = lensless.make_pattern("border", lensless.SourceGrid(16, 16, 6.1))

    """
    pattern_registry[name] = function

def add_animation(name, function):
    r"""
    Add an animation to the registry of known animations.

    The function must accept a SourceGrid and a frame count and
    return a VideoSequence.
    """
    animation_registry[name] = function

def make_pattern(name, grid):
    """
    Create a named binary test pattern on a grid.

    Parameters
    ----------
    name : string
        Pattern id, such as "letter-T", "stickman", "full-on",
        "line-h(26)", "line-v(8)", "line-diag(5)", or "single(0, 3)".
    grid : SourceGrid
        The grid on which to draw.

    Returns
    -------
    SceneVector with values in {0, 1}.
    """

    try:
        pname, args = parse_operator_id(name)
    except ValueError:
        raise PatternError(name, "cannot parse pattern id")
    if pname not in pattern_registry:
        raise PatternError(
            name, f"unknown pattern (known: {', '.join(sorted(pattern_registry))})")

    image = np.asarray(pattern_registry[pname](grid, *args), dtype=np.float64)
    if image.shape != grid.shape:
        raise PatternError(name, f"pattern shape {image.shape} does not match grid")
    if not np.isin(image, (0, 1)).all():
        raise PatternError(name, "pattern is not binary")
    return SceneVector.from_image(grid, image)

def make_video(name, grid, n_frames):
    """
    Create a named animation of n_frames binary scenes.
    """

    if int(n_frames) < 1:
        raise ValueError(f"n_frames must be at least 1: {n_frames}.")
    if name not in animation_registry:
        raise PatternError(
            name, f"unknown animation (known: {', '.join(sorted(animation_registry))})")
    return animation_registry[name](grid, int(n_frames))

def load_bitmap(filename):
    """
    Read a bitmap asset: rows of 0/1 characters, lines starting
    with # are comments.
    """

    fn = get_path(os.path.join("patterns", filename))
    rows = []
    with open(fn, mode="r") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if set(line) - set("01"):
                raise PatternError(filename, f"bad bitmap row \"{line}\"")
            rows.append([int(char) for char in line])
    if len(set(len(row) for row in rows)) != 1:
        raise PatternError(filename, "bitmap rows have different lengths")
    return np.array(rows, dtype=np.float64)

def bitmap_origin(bitmap, grid, name="bitmap"):
    """
    Top-left (row, col) that centers a bitmap in the grid.
    """
    h, w = bitmap.shape
    if h > grid.rows or w > grid.cols:
        raise PatternError(name, f"{h}x{w} bitmap does not fit in {grid}")
    return ((grid.rows - h) // 2, (grid.cols - w) // 2)

def place_bitmap(bitmap, grid, top, left):
    image = np.zeros(grid.shape)
    h, w = bitmap.shape
    image[top:top+h, left:left+w] = bitmap
    return image

def _bitmap_pattern(filename, name):
    def pattern(grid):
        bitmap = load_bitmap(filename)
        top, left = bitmap_origin(bitmap, grid, name=name)
        return place_bitmap(bitmap, grid, top, left)
    return pattern

add_pattern("letter-T", _bitmap_pattern("letter_T.txt", "letter-T"))
add_pattern("stickman", _bitmap_pattern("stickman.txt", "stickman"))

def line_cells(grid, line, position=None, length=None):
    """
    Ordered (row, col) cells along a line through the grid.

    Parameters
    ----------
    line : "h", "v", or "diag"
        Horizontal lines run along a row, vertical lines along a
        column, and diagonal lines down and to the right.
    position : optional, int
        Row of a horizontal line, column of a vertical line, or
        column offset of a diagonal. Defaults to the central row
        or column, or the main diagonal.
    length : optional, int
        Number of cells, centered along the line. Defaults to the
        whole line.
    """

    if line == "h":
        if position is None:
            position = grid.rows // 2
        if not 0 <= position < grid.rows:
            raise PatternError(f"line-h at {position}", f"row out of range for {grid}")
        cells = [(position, c) for c in range(grid.cols)]
    elif line == "v":
        if position is None:
            position = grid.cols // 2
        if not 0 <= position < grid.cols:
            raise PatternError(f"line-v at {position}", f"column out of range for {grid}")
        cells = [(r, position) for r in range(grid.rows)]
    elif line == "diag":
        if position is None:
            position = 0
        if not -grid.rows < position < grid.cols:
            raise PatternError(f"line-diag at {position}", f"offset out of range for {grid}")
        r0, c0 = max(0, -position), max(0, position)
        n = min(grid.rows - r0, grid.cols - c0)
        cells = [(r0 + k, c0 + k) for k in range(n)]
    else:
        raise PatternError(f"line-{line}", "line must be one of h, v, diag")

    if length is not None:
        length = int(length)
        if not 1 <= length <= len(cells):
            raise PatternError(
                f"line-{line}({length})",
                f"length must be between 1 and {len(cells)} for {grid}")
        start = (len(cells) - length) // 2
        cells = cells[start:start+length]
    return cells

def line_indices(grid, line, position=None, length=None):
    """
    Flattened source indices along a line through the grid.
    """
    return [index_of(r, c, grid)
            for r, c in line_cells(grid, line, position=position, length=length)]

def _line_pattern(line):
    def pattern(grid, length):
        image = np.zeros(grid.shape)
        for r, c in line_cells(grid, line, length=length):
            image[r, c] = 1
        return image
    return pattern

add_pattern("line-h", _line_pattern("h"))
add_pattern("line-v", _line_pattern("v"))
add_pattern("line-diag", _line_pattern("diag"))

def full_on(grid):
    return np.ones(grid.shape)

add_pattern("full-on", full_on)

def single(grid, r, c):
    image = np.zeros(grid.shape)
    image.flat[index_of(r, c, grid)] = 1
    return image

add_pattern("single", single)

def jump_offsets(amplitude):
    """
    Vertical offsets of one jump cycle: up by one row per frame to
    the amplitude and back down.

    Examples
    --------
    >>> jump_offsets(2)
    [0, -1, -2, -1]
    >>> jump_offsets(0)
    [0]
    """
    if amplitude == 0:
        return [0]
    up = list(range(0, -amplitude - 1, -1))
    return up + up[-2:0:-1]

def jumping_stickman(grid, n_frames, frame_period_ms=default_frame_period_ms):
    """
    The stickman of make_pattern("stickman") jumping up to two rows
    and landing again, repeating.
    """
    bitmap = load_bitmap("stickman.txt")
    top, left = bitmap_origin(bitmap, grid, name="jumping-stickman")
    offsets = jump_offsets(min(2, top))
    frames = [SceneVector.from_image(
        grid, place_bitmap(bitmap, grid, top + offsets[k % len(offsets)], left))
        for k in range(n_frames)]
    return VideoSequence(grid, frames, frame_period_ms, period=len(offsets))

add_animation("jumping-stickman", jumping_stickman)
