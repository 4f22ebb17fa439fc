"""Graph package."""
