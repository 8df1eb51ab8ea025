"""Equations, characters, degrees and singular loci of coincident root loci."""

__version__ = "0.1.0"
