#!/usr/bin/env python3

# The MIT License (MIT)
# Copyright (c) 2021 by the amalgam-strichartz development team and contributors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy of
# this software and associated documentation files (the "Software"), to deal in
# the Software without restriction, including without limitation the rights to
# use, copy, modify, merge, publish, distribute, sublicense, and/or sell copies
# of the Software, and to permit persons to whom the Software is furnished to do
# so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.


from setuptools import setup, find_packages
from amalgam_strichartz.version import version

requirements = [
    # Use ./environment.yml for deps.
]

packages = find_packages(exclude=["tests", "tests.*"])


setup(
    name="amalgam_strichartz",
    version=version,
    description='Numerical verification of Wiener amalgam Strichartz estimates for the Schrödinger propagator',
    license='MIT',
    author='amalgam-strichartz Development Team',
    packages=packages,
    install_requires=requirements,
    entry_points={
        'console_scripts': [
            'amalgam = amalgam_strichartz.cli.main:main',
        ]
    }
)
