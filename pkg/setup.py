from codecs import open
from os import path

# Always prefer setuptools over distutils
from setuptools import find_packages, setup

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, "README.rst"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="etapairing",
    version="0.5.0",
    description="Entanglement, ODLRO and flux quantization of η-pairing states",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    author="Duna Csandl",
    author_email="marinas.bobble-05@icloud.com",
    license="MIT",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords="eta-pairing odlro entanglement superconductivity hubbard",
    packages=find_packages(exclude=["contrib", "docs", "tests"]),
    python_requires=">=3.11",
    install_requires=["numpy>=2.0", "scipy>=1.14", "tabulate>=0.9"],
    entry_points={"console_scripts": ["etapairing=etapairing.cli:cli"]},
)
