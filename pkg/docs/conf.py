#!/usr/bin/env python3
#
# etapairing documentation build configuration file.
#
# Only the settings that differ from the Sphinx defaults are listed here.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))


# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.githubpages",
    "sphinx.ext.mathjax",
]
autodoc_member_order = "bysource"

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "etapairing"
copyright = "2017-2026, Duna Csandl"
author = "Duna Csandl"

# kept in sync by bump2version
version = "0.5.0"
release = version

language = "en"
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"
todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

# the RTD theme does not work with Sphinx 8 yet
html_theme = "classic"
html_static_path = ["_static"]
htmlhelp_basename = "etapairingdoc"


# -- Options for LaTeX, manual page and Texinfo output ----------------------

latex_documents = [
    (master_doc, "etapairing.tex", "etapairing Documentation", author, "manual")
]
man_pages = [(master_doc, "etapairing", "etapairing Documentation", [author], 1)]
texinfo_documents = [
    (
        master_doc,
        "etapairing",
        "etapairing Documentation",
        author,
        "etapairing",
        "Entanglement and ODLRO of η-pairing states.",
        "Scientific/Engineering",
    )
]
