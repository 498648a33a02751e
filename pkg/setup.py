from os import path

import setuptools

from cesnorms.__version__ import __version__


def _get_readme():
    curr_dir = path.abspath(path.dirname(__file__))

    with open(path.join(curr_dir, "README.md")) as fh:
        return fh.read()


setuptools.setup(
    name="cesnorms",
    version=__version__,
    keywords='cesaro copson operator norm weighted sequence spaces',
    description="Norms of the Cesàro and Copson operators, and of their distances to the identity, on weighted sup-norm sequence spaces",
    long_description=_get_readme(),
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    include_package_data=True,
    zip_safe=False,
    classifiers=[
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: MIT License",
        "Development Status :: 4 - Beta",
        "Topic :: Scientific/Engineering :: Mathematics"
    ],
    entry_points={
        "console_scripts": [
            "cesnorms=cesnorms.cli.main:main"
        ]
    },
    python_requires='>=3.7',
    install_requires=[
        "coloredlogs>=14.0,<15.0",
        "Click>=7.0,<8.0",
        "numpy>=1.17.0,<2.0",
        "pandas>=1.1,<2.0"
    ],
    extras_require={
        "dev": [
            "autopep8>=1.5,<2.0",
            "pylint>=2.0,<3.0",
            "pytest>=5.0,<7.0",
            "hypothesis>=5.0,<7.0",
            "scipy>=1.5,<2.0",
            "bumpversion>=0.5.3,<0.6.0"
        ]
    }
)
