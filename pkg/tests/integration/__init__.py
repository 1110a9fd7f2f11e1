"""Integration tests for levylab."""
