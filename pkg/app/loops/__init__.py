"""Unit-norm Moufang loops M(q) and Paige loops M*(q)."""
