"""Minors of generic jet matrices for SL_n and Sp_2n, their quadratic relations,
toric leading terms, and graded characters of the resulting algebras."""

from .combinatorics import Alphabet, Kind

__all__ = ["Alphabet", "Kind"]
