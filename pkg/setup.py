# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import os

import setuptools

requirements = [
    "tqdm",
    "pyyaml",
    "tabulate",
    "colorama",
    "termcolor",
    "halo",
    "numpy>=1.17",
    # solve_ivp events with y_events
    "scipy>=1.4",
]

# this sets __version__
# via: http://stackoverflow.com/a/7071358/87207
# and: http://stackoverflow.com/a/2073599/87207
with open(os.path.join("implode", "version.py"), "rb") as f:
    exec(f.read())


setuptools.setup(
    name="implode",
    version=__version__,
    description="Self-similar imploding solutions of the relativistic isothermal Euler equations.",
    long_description="",
    author="implode developers",
    packages=setuptools.find_packages(exclude=["tests"]),
    package_dir={"implode": "implode"},
    entry_points={
        "console_scripts": [
            "implode=implode.main:main",
        ]
    },
    include_package_data=True,
    install_requires=requirements,
    python_requires=">=3.6",
    extras_require={
        "dev": [
            "pytest",
            "pytest-sugar",
            "pytest-instafail",
            "pytest-cov",
            "pycodestyle",
            "black",
            "isort",
        ]
    },
    zip_safe=False,
    keywords="implode",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
