import setuptools

VERSION_STR = "0.1"

with open("README.rst", "r") as fh:
    long_description = fh.read()

# Get the required packages
with open('requirements.txt', encoding='utf-8') as f:
    install_requires = f.read().splitlines()

# Test and lint tooling is optional to install
extras = ["test", "linting"]
extras_require = dict()
for e in extras:
    req_file = "requirements-{0}.txt".format(e)
    with open(req_file) as f:
        extras_require[e] = [line.strip() for line in f]

setuptools.setup(
    name="layered_scatter",
    version=VERSION_STR,
    license="MIT",
    description="Nystrom solver for acoustic transmission scattering by an inhomogeneous obstacle "
                "buried in a two-layer medium, with a numerical verification suite.",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    python_requires='>=3.8',
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords='helmholtz scattering boundary-integral-equations nystrom lippmann-schwinger far-field',
    install_requires=install_requires,
    extras_require=extras_require,
    include_package_data=True,
    package_data={
        '': ['run_config_v1.0.json',
             'check_report_v1.0.json']
    },
    entry_points={
        'console_scripts': [
            'layered-scatter=layered_scatter.cli:main',
        ],
    },
)
