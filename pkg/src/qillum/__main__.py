"""Module entry point: python -m qillum."""

import sys

from .cli import main

sys.exit(main())
