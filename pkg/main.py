#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Launcher for running fvbe from a source checkout. """

import sys
from pathlib import Path

# Make the src layout importable without installing
sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from fvbe.cli import main  # noqa: E402  pylint: disable=wrong-import-position

# Check if the script is being run directly
if __name__ == "__main__":
    # Run the main function
    sys.exit(main())
