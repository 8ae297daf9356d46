from setuptools import find_packages, setup


def parse_requirements(filename):
    """Load requirements from a pip requirements file."""
    with open(filename, "r") as f:
        lineiter = [line.strip() for line in f]
    return [line for line in lineiter if line and not line.startswith("#")]


main_requirements = parse_requirements("requirements.txt")
test_requirements = parse_requirements("requirements-test.txt")

config = {
    'name': 'affine_fields',
    'description': 'Affine field theories on lattice spacetimes: phase spaces, algebras and states',
    'long_description': open('README.md', 'r').read(),
    'long_description_content_type': 'text/markdown',
    'license': 'MIT',
    'version': '0.1.0',
    'python_requires': '>=3.9',
    'install_requires': main_requirements,
    'extras_require': {'test': test_requirements},
    'packages': find_packages(exclude=('tests', 'tests.*', 'examples', 'examples.*')),
    'entry_points': {'console_scripts': ['affine-fields = fieldsuites.main:main']},
}

if __name__ == '__main__':
    setup(**config)
