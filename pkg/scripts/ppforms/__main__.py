"""Entry point for running ppforms as a module.

This allows running the CLI using:
    python3 -m ppforms
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
