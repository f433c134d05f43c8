#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Entry point of `python -m fvbe` and of the fvbe console script. """

import sys

from fvbe.cli import main

# Check if the module is being run directly
if __name__ == "__main__":
    sys.exit(main())
