"""
lensless config



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import configparser
import os

CONFIG_DIR = os.path.join(
    os.environ.get("XDG_CONFIG_HOME",
                   os.path.join(os.path.expanduser("~"), ".config")),
    "lensless")

lenslesscfg = configparser.ConfigParser()
lenslesscfg.read(os.path.join(CONFIG_DIR, "lenslessrc"))
if not lenslesscfg.has_section("lensless"):
    lenslesscfg.add_section("lensless")
