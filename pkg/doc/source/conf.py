#
# lensless documentation build configuration file
#
# Only the settings that differ from the sphinx defaults are listed.
# See https://www.sphinx-doc.org/en/master/usage/configuration.html
# for the rest.

import glob
import os
import sys

# lensless itself, for autodoc
sys.path.insert(0, os.path.abspath('../..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.intersphinx',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
]

intersphinx_mapping = {
    'numpy': ("https://numpy.org/doc/stable/", None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'unyt': ("https://unyt.readthedocs.io/en/stable/", None),
    'yt': ('https://yt-project.org/docs/dev/', None),
}

autosummary_generate = glob.glob("api_reference.rst")

master_doc = 'index'

project = 'lensless'
copyright = 'lensless development team. All rights reserved.'
author = 'lensless development team'

# The short X.Y version and the full version, matching lensless.__version__.
version = '0.1'
release = '0.1.dev1'

language = 'en'
add_function_parentheses = False
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_options = {'collapse_navigation': False}

# The example scripts are linked from Examples.rst.
html_static_path = ["examples"]

htmlhelp_basename = 'lenslessdoc'

# -- Options for other builders -------------------------------------------

latex_documents = [
    (master_doc, 'lensless.tex', 'lensless Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'lensless', 'lensless Documentation', [author], 1),
]

texinfo_documents = [
    (master_doc, 'lensless', 'lensless Documentation', author, 'lensless',
     'Lensless bare-sensor imaging simulation and reconstruction.',
     'Miscellaneous'),
]
