"""
miscellaneous utilities



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import hashlib
import re

_operator_id = re.compile(r"^\s*([A-Za-z][\w\-]*)\s*(?:\((.*)\))?\s*$")

def parse_operator_id(text):
    """
    Split an id such as "line-h(26)" or "single(1, 2)" into its
    name and a tuple of numeric arguments.

    Examples
    --------
    >>> parse_operator_id("single(1, 2)")
    ('single', (1, 2))
    >>> parse_operator_id("fixed-fraction(0.01)")
    ('fixed-fraction', (0.01,))
    >>> parse_operator_id("l-curve")
    ('l-curve', ())
    """
    match = _operator_id.match(text)
    if match is None:
        raise ValueError(f"Cannot parse \"{text}\".")
    name, argstr = match.groups()
    if argstr is None or not argstr.strip():
        return name, ()
    args = []
    for arg in argstr.split(","):
        arg = arg.strip()
        try:
            args.append(int(arg))
        except ValueError:
            args.append(float(arg))
    return name, tuple(args)

def format_operator_id(name, args=()):
    if not args:
        return name
    return f"{name}({','.join(str(arg) for arg in args)})"

def sha256_digest(data):
    return hashlib.sha256(data).digest()
