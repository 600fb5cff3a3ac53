"""
lensless exceptions



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

class LenslessConfigError(Exception):
    exit_code = 1

    def __init__(self, message, key=None):
        self.message = message
        self.key = key

    def __str__(self):
        if self.key is None:
            return f"Invalid configuration: {self.message}."
        return f"Invalid configuration for \"{self.key}\": {self.message}."

class LenslessDataError(Exception):
    exit_code = 2

class DimensionMismatch(LenslessDataError):
    def __init__(self, expected, received, what="data"):
        self.expected = expected
        self.received = received
        self.what = what

    def __str__(self):
        return (f"Dimension mismatch for {self.what}: "
                f"expected {self.expected}, got {self.received}.")

class GridMismatch(DimensionMismatch):
    def __init__(self, expected, received):
        super().__init__(expected, received, what="source grid")

class InvalidIndex(LenslessDataError):
    def __init__(self, index, bound):
        self.index = index
        self.bound = bound

    def __str__(self):
        return f"Index {self.index} out of range for {self.bound}."

class PatternError(LenslessDataError):
    def __init__(self, name, reason):
        self.name = name
        self.reason = reason

    def __str__(self):
        return f"Cannot make pattern \"{self.name}\": {self.reason}."

class MaskError(LenslessDataError):
    def __init__(self, reason):
        self.reason = reason

    def __str__(self):
        return f"Invalid pixel mask: {self.reason}."

class BadMagic(LenslessDataError):
    def __init__(self, filename, expected, received):
        self.filename = filename
        self.expected = expected
        self.received = received

    def __str__(self):
        return (f"bad magic in {self.filename}: "
                f"expected {self.expected!r}, found {self.received!r}.")

class TruncatedFile(LenslessDataError):
    def __init__(self, filename, expected, received):
        self.filename = filename
        self.expected = expected
        self.received = received

    def __str__(self):
        return (f"Truncated file {self.filename}: payload of {self.expected} bytes "
                f"promised by the header, {self.received} bytes present.")

class LenslessNumericalError(Exception):
    exit_code = 3

class NonFiniteData(LenslessNumericalError):
    def __init__(self, what):
        self.what = what

    def __str__(self):
        return f"Non-finite values in {self.what}."

class UndefinedCorrelation(LenslessNumericalError):
    def __str__(self):
        return "Correlation is undefined for a constant input."

class DegenerateHistogram(LenslessNumericalError):
    def __str__(self):
        return "degenerate histogram: all values are equal after clamping."
