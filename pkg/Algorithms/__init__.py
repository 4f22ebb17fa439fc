"""Structure-learning algorithms package."""
