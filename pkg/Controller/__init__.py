"""Controller package."""
