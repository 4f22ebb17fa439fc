"""Schema package."""
