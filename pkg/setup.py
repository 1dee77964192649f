# Copyright (c) 2021 PPotential Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
from setuptools import find_packages, setup
from io import open

with open('requirements.txt', encoding="utf-8-sig") as f:
    requirements = f.readlines()


def readme():
    with open('docs/en/whl_en.md', encoding="utf-8-sig") as f:
        README = f.read()
    return README


setup(
    name='ppotential',
    packages=find_packages(
        include=['ppot', 'ppot.*', 'tools'], exclude=['tests', 'examples']),
    py_modules=['ppotential'],
    include_package_data=True,
    entry_points={"console_scripts": ["ppotential= ppotential:main"]},
    version='0.1.0',
    install_requires=requirements,
    extras_require={'test': ['pytest', 'hypothesis']},
    license='Apache License 2.0',
    description='Nonlinear potential theory on bounded-degree graphs',
    long_description=readme(),
    long_description_content_type='text/markdown',
    keywords=[
        'p-Laplacian', 'p-capacity', 'p-modulus', 'p-harmonic boundary',
        'graphs'
    ],
    classifiers=[
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics'
    ], )
