"""
loading utilities



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import os

from lensless.config import \
    lenslesscfg

package_asset_dir = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "assets")

if "LENSLESS_ASSET_DIR" in os.environ:
    user_asset_dir = os.environ["LENSLESS_ASSET_DIR"]
else:
    user_asset_dir = lenslesscfg["lensless"].get("asset_dir", None)

def check_path(filename):
    """
    Check file exists in place, in the user asset dir, or
    in the packaged assets.
    """

    if os.path.exists(filename):
        return filename
    for dirname in (user_asset_dir, package_asset_dir):
        if dirname is None:
            continue
        tfn = os.path.join(dirname, filename)
        if os.path.exists(tfn):
            return tfn
    raise IOError(f"File does not exist: {filename}.")

def get_path(filename):
    """
    Get a path or list of paths.
    """

    if isinstance(filename, (list, tuple)):
        path = [check_path(fn) for fn in filename]
    else:
        path = check_path(filename)
    return path
