"""Tests for the dense-matrix quantum toolkit."""
