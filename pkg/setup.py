#!/usr/bin/env python
import os
from setuptools import setup


def get_metadata():
    import re
    with open(os.path.join("surfaceverifier", "__init__.py")) as f:
        return dict(re.findall("__([a-z]+)__ = ['\"]([^'\"]+)['\"]", f.read()))

metadata = get_metadata()

try:
    long_description = open("README.rst", "r").read()
except Exception:
    long_description = None

setup(
    name='surfaceverifier',
    version=metadata['version'],
    license='MIT',
    packages=['surfaceverifier', 'surfaceverifier.cli'],
    description='Command line utility and Python package that recomputes the arithmetic, fiber and lattice claims '
                'about the elliptic modular surface of the commutator subgroup.',
    long_description=long_description,
    entry_points={'console_scripts': ['sverify = surfaceverifier.cli.sverify:main']},
    install_requires=['termcolor>=1.0.0', 'sympy>=1.9', 'numpy>=1.21'],
    keywords=['elliptic surface', 'modular surface', 'Mordell-Weil lattice', 'point counting', 'eta product',
              'Kodaira fiber', 'K3 surface', 'sverify'],
    classifiers=[
        'Development Status :: 5 - Production/Stable',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Terminals',
        'Topic :: Utilities',
    ],
)
