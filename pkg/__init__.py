"""Chain-graph structure learning package."""
