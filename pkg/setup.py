#!/usr/bin/env python
from setuptools import setup, find_packages
from os import path

# get version
here = path.abspath(path.dirname(__file__))
with open(path.join(here, 'loopforge', '_version.py')) as version_file:
    exec(version_file.read())


def readme():
    """ load readme """
    with open('README.md') as f:
        return f.read()


# configuration
setup(
    name='loopforge',
    version=__version__,
    description='Numerical toolkit and verification harness for polynomial '
    'loop groups, weighted duals and loop space spinors',
    long_description=readme(),
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: MIT',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords='python, loop groups, fourier, holonomy, fock space',
    license='MIT',
    packages=find_packages(exclude=['tests']),
    package_data={'loopforge': ['examples/*.yaml']},
    test_suite='tests',
    tests_require=['hypothesis'],
    entry_points={
        'console_scripts': ['loopforge=loopforge.bin.loopforge:main'],
    },
    include_package_data=True,
    python_requires='>=3.7',
    install_requires=[
        'numpy',
        'scipy>=1.4',
        'pandas>=1.5.0',
        'openpyxl',
        'pint',
        'ruamel.yaml<0.18',
    ],
    zip_safe=False)
