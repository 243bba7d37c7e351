# Configuration file for the Sphinx documentation builder.

import os
import sys
from datetime import datetime

# Make almost_golomb importable for autodoc
sys.path.insert(0, os.path.abspath(".."))

from almost_golomb import __version__  # noqa: E402

project = "almost-golomb"
author = "Peter Souter"
copyright = f"{datetime.now().year}, {author}"
release = __version__
version = ".".join(__version__.split(".")[:2])

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "click": ("https://click.palletsprojects.com/en/stable", None),
}

templates_path = ["_templates"]
exclude_patterns = ["_build"]

html_theme = "sphinx_rtd_theme"
html_title = f"almost-golomb {release}"

autodoc_member_order = "bysource"
autodoc_default_options = {
    "members": True,
    "undoc-members": True,
    "show-inheritance": True,
}
