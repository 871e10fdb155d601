"""
ZornLab - exact split octonion algebras, Moufang loops and Paige loops over small finite fields.
"""

__version__ = "0.1.0"
