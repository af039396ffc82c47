"""Run the pyextremal command line interface."""

import sys

from pyextremal.cli import main

if __name__ == "__main__":
    sys.exit(main())
