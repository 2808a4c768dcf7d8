"""Run the command-line interface via ``python -m tensorforge``."""

import sys

from .cli import main

sys.exit(main())
