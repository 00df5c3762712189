"""Mean counting functions, Jessen functions and weighted-space norms for Dirichlet series."""

__version__ = "0.1.0"
