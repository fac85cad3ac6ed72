"""Structural toolkit for graphs without even holes and diamonds.

Modules: ``graph`` (substrate and file format), ``detect`` (hole, diamond
and class oracles), ``cliquesep`` (clique-separator decomposition),
``cwexpr`` (k-expressions, cut-rank, rank-width), ``menagerie`` (birdcages,
links, birdcage-splits, local complementation), ``geodetic`` and ``cli``.
"""

__version__ = "0.1.0"
