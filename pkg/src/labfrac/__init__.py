"""Mixed labyrinth fractals: patterns, substitution, path matrices, geometry."""

__version__ = "0.1.0"
