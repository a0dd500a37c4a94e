"""End-to-end tests through the qfidelity CLI."""
