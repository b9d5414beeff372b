#!/usr/bin/env python3
import setuptools

# Workaround issue in pip with "pip install -e --user ."
import site
site.ENABLE_USER_SITE = True

with open("README.rst", "r") as fh:
    long_description = fh.read()


setuptools.setup(
    name="mobile_dcp",
    version="0.1.0",
    author="The mobile_dcp developers",
    description="Real-time dynamic controller placement for mobile software-defined networks.",
    long_description=long_description,
    packages=setuptools.find_packages(exclude=["tests"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy",
        "scipy",
        "matplotlib>=3.5",
        "numba",
    ],
    extras_require={
        "test": ["pytest"],
        "doc": ["sphinx"],
    },
    entry_points={
        "console_scripts": [
            "mobile-dcp=mobile_dcp.harness.cli:main",
        ],
    },
)
