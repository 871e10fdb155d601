"""Shared constants, settings and errors."""
