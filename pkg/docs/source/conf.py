# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

# conf.py lives in docs/source/; the project root (containing qotp/) is ../../
sys.path.insert(0, os.path.abspath("../../"))

project = "qotp"
copyright = "2025, qotp contributors"
author = "qotp contributors"
release = "0.1.0"
version = "0.1.0"

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
    "sphinx.ext.mathjax",
]

templates_path = ["_templates"]
exclude_patterns = []

language = "en"
autodoc_member_order = "bysource"

# -- Options for HTML output -------------------------------------------------

html_static_path = ["_static"]
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
}

html_permalinks_icon = "<span>#</span>"
html_theme = "sphinxawesome_theme"
