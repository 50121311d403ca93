"""2-graphs built from tiles and the K-theory of their C*-algebras."""

from .tiles import BasicData, Tile, parse_tile

__version__ = "0.1.0"

__all__ = ["BasicData", "Tile", "parse_tile", "__version__"]
