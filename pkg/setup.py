import os

from setuptools import setup


# Utility function to read the README file.
# Used for the long_description.
def read(fname):
    with open(os.path.join(os.path.dirname(__file__), fname)) as readme:
        return readme.read()


setup(
    name="pyextremal",
    version="1.0.0",
    description=(
        "Minimal itemset identification over lexicographically sorted "
        "datasets, with memoized and parallel engines."
    ),
    license="GPLv3+",
    keywords="extremal sets minimal itemsets subsumption",
    packages=["pyextremal"],
    python_requires=">=3.10",
    long_description=read("README.md"),
    long_description_content_type="text/markdown",
    install_requires=["numpy", "rich"],
    entry_points={"console_scripts": ["pyextremal = pyextremal.cli:main"]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
    ],
)
