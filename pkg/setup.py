#! /usr/bin/env python3

import os
from setuptools import setup, find_packages

def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()

setup(
    name = "ContactGroup_R3",
    version = "0.1",
    author = "ContactGroup_R3 contributors",
    description = ("Left-invariant contact structures on 3-dimensional Lie groups, their canonical frames and embeddings in R^3"),
    license = "GPL",
    keywords = "contact_geometry lie_groups left_invariant tight_contact_structures",
    packages=find_packages(exclude=['tests']),
    package_data={'ContactGroup_R3' : ['example_data/*.json']},
    long_description=read('README.md'),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3",
        "Operating System :: POSIX",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
    ],
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.8',
    install_requires=['numpy', 'scipy'],
    extras_require={'tests': ['pytest']},
    entry_points={'console_scripts': ['contactgroup-r3 = ContactGroup_R3.cli:main']},
)
