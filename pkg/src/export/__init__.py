"""
Export module.
Writes scan, trace and figure results as CSV or JSON.
"""
