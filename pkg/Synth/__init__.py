"""Synthetic graphs, parameters and reference fixtures."""
