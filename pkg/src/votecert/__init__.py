"""Certificates of (rough) weightedness for simple games."""

__version__ = "0.1.0"
