"""Interpolation Macdonald polynomials, dual functions and Cauchy-type identities."""
