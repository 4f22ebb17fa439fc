"""Graph learning service package."""
