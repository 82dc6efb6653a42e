"""Setup script for the beam/oscillator scattering simulator."""

from pathlib import Path
from setuptools import setup, find_packages

# Read the README file
readme_path = Path(__file__).parent / "README.md"
if readme_path.exists():
    long_description = readme_path.read_text()
else:
    long_description = "Classical, partially quantum and fully quantum simulations of inelastic beam/oscillator scattering."

# Read requirements
requirements_path = Path(__file__).parent / "requirements.txt"
if requirements_path.exists():
    with open(requirements_path) as f:
        requirements = [
            line.strip()
            for line in f
            if line.strip() and not line.startswith("#")
        ]
else:
    requirements = [
        "click>=8.1.0",
        "pandas>=2.0.0",
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "toml>=0.10.2",
        "xlsxwriter>=3.1.0",
        "tqdm>=4.66.0",
        "colorama>=0.4.6",
    ]

setup(
    name="scatter-sim",
    version="0.1.0",
    description="Classical and quantum simulations of a beam particle scattering off a harmonic oscillator",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(where=".", include=["src*"]),
    package_dir={"": "."},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "scatter-sim=src.cli.main:cli",
        ],
    },
    data_files=[("share/scatter-sim/configs", ["configs/preset.toml", "configs/speed_sweep.toml"])],
    zip_safe=False,
)
