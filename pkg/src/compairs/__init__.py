"""Exact tools for families with few comparable pairs in graded posets."""

__version__ = "0.1.0"
