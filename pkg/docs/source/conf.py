# -*- coding: utf-8 -*-
#
# loopsoup documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

import datetime
import sys, os

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here.
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../'))

import loopsoup


# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.todo', 'sphinx.ext.coverage',
              'sphinx.ext.autosummary', 'sphinx.ext.mathjax']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'loopsoup'
copyright = '{:%Y}, the loopsoup developers'.format(datetime.date.today())

# The short X.Y version.
version = loopsoup.__version__
# The full version, including alpha/beta/rc tags.
release = loopsoup.__version__

exclude_trees = []

pygments_style = 'tango'


# -- Options for HTML output ---------------------------------------------------

htmlhelp_basename = 'loopsoupdoc'


# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'loopsoup.tex', 'loopsoup Documentation',
   'the loopsoup developers', 'manual'),
]

todo_include_todos = True
