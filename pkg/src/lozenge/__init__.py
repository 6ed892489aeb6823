"""Exact and sampled statistics of lozenge tilings of polygons with cuts."""
__version__ = "0.1.0"
