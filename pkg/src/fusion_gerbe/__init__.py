"""Affine su(2) fusion rules, computed from representation theory and from gerbe geometry."""

__version__ = "0.1.0"
