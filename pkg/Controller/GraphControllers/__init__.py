"""Graph controllers package."""
