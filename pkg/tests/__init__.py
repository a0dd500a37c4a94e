"""Tests for qfidelity."""
