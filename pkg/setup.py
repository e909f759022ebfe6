import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

extras_require = {
    # Test dependencies
    'tests': [
        'pylint',
        'coverage >= 4.5',
    ]
}

# Generate minimum dependencies
extras_require['tests-min'] = [dep.replace('>=', '==') for dep in extras_require['tests']]

setuptools.setup(
    name="entrap",
    version="0.1",
    description="Bound states and two-qubit entanglement of N qubits coupled to a common reservoir.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=('tests',)),
    entry_points={
        'console_scripts': [
            'entrap = entrap.cli:main'
        ]
    },
    classifiers=(
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ),
    install_requires=[
        'numpy >= 1.17.0',
        'scipy >= 1.4.0',
        'pyyaml >= 3.13'
    ],
    extras_require=extras_require
)
