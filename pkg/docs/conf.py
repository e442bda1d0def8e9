# -*- coding: utf-8 -*-
#
# Spectral-Shift documentation build configuration file.
#
# Only values that differ from the Sphinx defaults are set here.

import sys
import os

# The package is documented from the source tree
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax'
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'Spectral-Shift'
copyright = u'2026, Spectral-Shift developers'
author = u'Spectral-Shift developers'

version = '0-1'
release = '0-1'

exclude_patterns = ['_build']
pygments_style = 'sphinx'
todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_static_path = ['_static']
htmlhelp_basename = 'Spectral_Shiftdoc'

# -- Options for LaTeX, manual page and Texinfo output ---------------------

latex_documents = [
  (master_doc, 'Spectral_Shift.tex', u'Spectral-Shift Documentation', author, 'manual'),
]

man_pages = [
    (master_doc, 'ssf-tool', u'Spectral-Shift Documentation', [author], 1)
]

texinfo_documents = [
  (master_doc, 'Spectral_Shift', u'Spectral-Shift Documentation', author, 'Spectral_Shift',
   'Spectral shift functions from boundary data.', 'Miscellaneous'),
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable', None),
                       'scipy': ('https://docs.scipy.org/doc/scipy', None)}
