"""Degree complexes of basepointed ribbon graphs and their Morse-theoretic moves."""
