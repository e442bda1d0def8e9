from setuptools import setup, find_packages

module_name = "spectral-shift"

setup(
    name=module_name,
    version="0-1",
    description='Spectral shift functions of self-adjoint pairs from boundary data',
    keywords='spectral shift function, Weyl function, Krein formula',
    packages=find_packages(exclude=['spectral_shift_tests', 'acceptance_tests']),
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    license='APACHE',
    python_requires='>=3.8',
    install_requires=['numpy>=1.17', 'scipy>=1.4', 'scanpointgenerator>=2.1',
                      'matplotlib>=3.1'],
    include_package_data=True,
    entry_points={
        'console_scripts': ['ssf-tool = spectral_shift.SsfCommandLine:main'],
    },
    tests_require=[
        'pytest>=6.0',
        'coverage>=5.0',
        'mock'
    ],
    zip_safe=False,
)
