"""Module entry point: ``python -m wonderco`` runs the interface."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
