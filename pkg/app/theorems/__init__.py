"""Verification suites, the main-theorem pipeline and certificates."""
