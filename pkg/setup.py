"""Root build entry point; packages live under src/ (see src/setup.py)."""
from setuptools import setup, find_packages
from pathlib import Path

root = Path(__file__).parent

settings_file = root / "src" / "pmskit" / "config" / "settings.py"
version_line = next(line for line in settings_file.read_text().splitlines() if line.startswith("VERSION"))
version = version_line.split("=")[1].strip().strip('"\'')

readme_file = root / "README.md"
long_description = readme_file.read_text() if readme_file.exists() else ""

setup(
    name="pmskit",
    version=version,
    description="Exact-arithmetic toolkit for probabilistic metric spaces",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"": "src"},
    packages=find_packages(where="src", include=["pmskit", "pmskit.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.10",
    install_requires=[
        "PyYAML>=6.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0",
            "hypothesis>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "pmskit=pmskit.main:main",
        ],
    },
    include_package_data=True,
    package_data={
        "pmskit": ["config/*"],
    },
)
