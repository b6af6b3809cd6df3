"""Single source of truth for the reality-domain version string."""

__version__ = "1.0.0"
