"""Package setup file for fh-toolkit."""

import setuptools

with open("README.md") as fh:
    long_description = fh.read()

setuptools.setup(
    name="fh-toolkit",
    version="0.1.0",
    author="Dermot Duffy",
    author_email="dermot.duffy@gmail.com",
    description="Finite combinatorics of ab initio predimension constructions",
    entry_points={
        "console_scripts": ["fh=fh_toolkit.fh_toolkit:main"],
    },
    include_package_data=True,
    install_requires=["attrs", "networkx", "numpy", "sympy"],
    long_description=long_description,
    long_description_content_type="text/markdown",
    keywords="model theory hrushovski predimension pregeometry amalgamation",
    url="https://github.com/dermotduffy/fh-toolkit",
    package_data={"fh_toolkit": ["py.typed"]},
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    platforms="any",
    classifiers=[
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    zip_safe=False,  # Required for py.typed.
)
