"""Conditional-independence test package."""
