"""Nonstable K-theory of weighted Leavitt path algebras at desk scale."""

__version__ = "0.1.0"
