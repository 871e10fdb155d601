"""Tests for ZornLab."""
