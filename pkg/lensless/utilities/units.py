"""
unit conversion utilities



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

from unyt import \
    unyt_array, \
    unyt_quantity
from unyt.exceptions import \
    UnitConversionError, \
    UnitParseError

from lensless.utilities.exceptions import \
    LenslessConfigError

def to_length(value, units, default_units=None):
    """
    Convert a length to a plain float in the given units.

    Parameters
    ----------
    value : float, str, or unyt_quantity
        Plain numbers are taken to be in default_units (which
        defaults to units). Strings such as "34.3 cm" are parsed
        with unyt.
    units : str
        Units of the returned value.

    Examples
    --------
    >>> to_length("34.3 cm", "mm")
    343.0
    >>> to_length(6, "mm", default_units="um")
    0.006
    """

    if default_units is None:
        default_units = units
    try:
        if isinstance(value, str):
            value = value.strip()
            try:
                value = float(value)
            except ValueError:
                value = unyt_quantity.from_string(value)
        if isinstance(value, (unyt_quantity, unyt_array)):
            return float(value.to(units).d)
        return float(unyt_quantity(float(value), default_units).to(units).d)
    except (UnitParseError, UnitConversionError, ValueError) as err:
        raise LenslessConfigError(f"cannot read {value!r} as a length ({err})")

def to_mm(value):
    return to_length(value, "mm")
