"""Automorphism-group engine: equitable refinement, individualization-refinement
search and a brute-force oracle."""

from ._backend import BACKEND
from .brute import DEFAULT_BRUTE_CAP, RestrictionError, automorphism_group_brute, restrict
from .refine import Coloring, is_equitable, refine
from .search import SearchTimeout, automorphism_generators, automorphism_group

__all__ = [
    "BACKEND",
    "Coloring",
    "refine",
    "is_equitable",
    "automorphism_group",
    "automorphism_generators",
    "automorphism_group_brute",
    "restrict",
    "RestrictionError",
    "SearchTimeout",
    "DEFAULT_BRUTE_CAP",
]
