"""hopfpar: exact partial (co)representation theory for finite-dimensional
Hopf algebras presented by rational structure constants."""

__version__ = "0.1.0"
