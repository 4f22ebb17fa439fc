"""Benchmark service package."""
