"""Exact computations with Witt vectors, polynomial maps, Burnside rings and Tambara functors."""

__version__ = "0.1.0"
