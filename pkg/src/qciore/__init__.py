"""Workbench for the 3-valued paraconsistent first-order logic QCiore.

Formula parsing, evaluation in finite partial structures, Hilbert-style
proof checking, twist-structure algebra, and exhaustive countermodel search.
"""

__version__ = "0.1.0"
