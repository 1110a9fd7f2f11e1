"""Test suite for levylab."""
