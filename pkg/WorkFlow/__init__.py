"""Workflow package."""
