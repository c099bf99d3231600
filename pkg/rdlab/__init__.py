# -*- coding: utf-8 -*-
"""
rdlab: constructive tools around resolvent degree.

Tschirnhaus reduction towers, resolvent-degree bound calculators, the 27
lines of a cubic surface, the 28 bitangents of a plane quartic and
numerical monodromy certificates for the associated covers.
"""

__version__ = "0.1.0"
