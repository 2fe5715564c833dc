# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html
import os
import sys
from typing import List

sys.path.insert(0, os.path.abspath(os.path.join("..", "src")))
os.environ["DOC_PATH"] = os.path.dirname(__file__)


project = "ReesKit"
copyright = "2026, ReesKit developers"
author = "ReesKit developers"

# The full version, including alpha/beta/rc tags
import reeskit  # noqa: E402 F403 F401

release = reeskit.__version__

# 'sphinx.ext.napoleon' Used for numpy docstring support
extensions = [
    "IPython.sphinxext.ipython_console_highlighting",
    "IPython.sphinxext.ipython_directive",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx.ext.intersphinx",
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx_autodoc_typehints",
    "m2r2",
]
templates_path = ["_templates"]

exclude_patterns: List[str] = []

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
}

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
