#!/usr/bin/env python3

from setuptools import setup, find_packages

setup(
    name="zmeasures",
    version="0.1.0",
    description="z-measures on partitions, Kerov's SL(2) operators and the hypergeometric kernel",
    packages=find_packages(include=["zmeasures", "zmeasures.*"]),
    python_requires=">=3.8",
    install_requires=[
        "rich>=13.0.0",
        "typer>=0.9.0",
        "numpy>=1.22",
        "scipy>=1.8",
    ],
    extras_require={
        "tests": [
            "pytest>=7.0",
            "mpmath>=1.3",
        ],
    },
    entry_points={
        "console_scripts": [
            "zmeasures = zmeasures.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
