"""Package with helper functionality."""
