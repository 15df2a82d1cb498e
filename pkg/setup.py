#!/usr/bin/env python
from setuptools import find_packages
from setuptools import setup

long_description = """
deflogic is a workbench for propositional default logic. It enumerates
the processes and extensions of a default theory under the Reiter,
justified, rational and constrained semantics, translates theories
between those semantics, generates theories from two-level QBFs, and
checks translations for faithfulness by exhaustive enumeration.
"""

setup(
    name="deflogic",
    version="0.1.0.dev0",
    description="Processes, extensions and translations of propositional default theories.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="BSD-3",
    keywords="default logic nonmonotonic reasoning sat",
    python_requires=">=3.7",
    install_requires=["lark>=1.1", "sympy", "tabulate"],
    packages=find_packages(include=["deflogic", "deflogic.*"]),
    entry_points={"console_scripts": ["deflogic=deflogic.cli:main"]},
    zip_safe=False,
)
