"""Mirrorforge Main Module

Entry point for running the verification command line as a module.

Usage:
    python -m mirrorforge examples
    python -m mirrorforge theorem clifford-u

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import sys

from mirrorforge.cli import main


def run():
    # Show a usable program name in usage and error messages.
    if sys.argv[0].endswith("__main__.py"):
        sys.argv[0] = "python -m mirrorforge"
    main(prog_name="python -m mirrorforge")


if __name__ == "__main__":
    run()
