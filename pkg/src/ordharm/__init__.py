"""Lattice operations, convolution algebras and regular operators on finite
(semi)groups, with executable checks of when left regular representations are
lattice homomorphisms."""

__version__ = "0.1.0"
