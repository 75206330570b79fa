"""Quantum one-time tokens: hidden-subspace authentication, guarded one-time programs and their security games."""
