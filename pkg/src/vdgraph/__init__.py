"""Automorphism groups of bipartite vd-graphs, Grassmann-type families and
stability of bipartite double covers."""

__version__ = "0.1.0"
