"""Exact computation of reduced Whitehead groups of graded division algebras.

The package has three layers: exact substrates (integer linear algebra,
finite fields), the algebraic machinery (G-modules, monomial graded rings,
skew polynomials, valued series, weighted matrices), and the case-formula
engine with its brute-force oracles.  A FastAPI service and a thin CLI sit
on top.
"""

__version__ = "0.1.0"
