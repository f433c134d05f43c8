#!/usr/bin/env python3
# -*- coding: utf-8 -*-
""" Module about information. """

__package_name__ = "fvbe"
__version__ = "0.1.0"
__author__ = "LounisBou"
__email__ = "lounis.bou@gmail.com"
__description__ = "Flexible-velocity Boltzmann finite-volume schemes for scalar laws and shallow water."
__license__ = "Apache-2.0"
__url__ = "https://github.com/LounisBou/fvbe"
