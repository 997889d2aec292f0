import subprocess
import sys
from setuptools import setup, find_packages
from os import path, environ

_base_version = '0.1.0'

root_dir = path.abspath(path.dirname(__file__))


def readme():
    with open(path.join(root_dir, 'README.md')) as f:
        return f.read()


# See https://packaging.python.org/guides/single-sourcing-package-version/
# CI builds stamp the version into the VERSION file; local builds use the git hash when git is available.
def _get_version_number():
    ci_build = environ.get('CI_BUILD_NUMBER')
    ci_tag = environ.get('CI_TAG')

    if ci_build:
        if ci_tag:
            version = ci_tag
        else:
            version = '{}.dev{}'.format(_base_version, ci_build)

        with open(path.join(root_dir, 'VERSION'), 'w') as version_file:
            version_file.write(version.strip())
    else:
        try:
            ver = subprocess.check_output(['git', 'rev-parse', '--short', 'HEAD'], stderr=subprocess.DEVNULL)
            version = '{}+local.{}'.format(_base_version, ver.decode('ascii').strip())
        except Exception:
            with open(path.join(root_dir, 'VERSION')) as version_file:
                version = version_file.read().strip()

    return version


def _get_requires_list():
    if sys.version_info < (3, 8):
        # math.comb and the exact integer arithmetic of the theta engines
        raise RuntimeError('lattice_invariants requires Python 3.8 or later')

    return [
        'chevron',
        'humanfriendly',
        'jsonschema',
        'numpy',
        'pyyaml',
        'six>=1.11.0'
    ]


setup(
    name='lattice_invariants',
    version=_get_version_number(),
    description='Exact theta series and heat flux invariants of positive definite lattices',
    long_description=readme(),
    long_description_content_type="text/markdown",
    license='GPL3',
    entry_points={
        'console_scripts': [
            'latinv=lattice_invariants.cli:entry_point'
        ]
    },
    packages=find_packages(),
    package_dir={'lattice_invariants': 'lattice_invariants'},
    package_data={'lattice_invariants': [
        'schemas/*.schema',
        'report-templates/*.mustache',
        'example/*.gram',
        'example/*.yml',
        'tests/testfiles/*'
    ]},
    include_package_data=True,
    python_requires='>=3.8',
    install_requires=_get_requires_list(),
    test_suite='unittest',
    tests_require=['unittest'],
    zip_safe=False,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: OS Independent"
    ])
