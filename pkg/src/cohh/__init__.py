"""Exact coHochschild homology of graded coalgebras over Q and F_p."""

__version__ = "0.1.0"
