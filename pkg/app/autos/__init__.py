"""Automorphisms of the split octonion algebra and of its loops."""
