"""
Test package for the reality-domain toolkit.
"""
