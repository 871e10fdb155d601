"""Finite fields and split octonion algebras."""
