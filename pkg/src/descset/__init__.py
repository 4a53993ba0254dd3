"""Finite-scale descriptive set theory."""
