"""Benchmark metrics and experiment driver."""
