"""Sandpile groups, chip-firing and Tutte evaluations for cones over trees."""

from .graphs import (
    Multigraph,
    Tree,
    canonical_code,
    coconut_tree,
    cone,
    cone_plus,
    enumerate_trees,
    path_tree,
    star_tree,
)
from .linalg import AbelianGroup, IntMatrix, cokernel, determinant, smith_normal_form
from .polys import BiPoly, UniPoly
from .sandpile import RootedGraph, cone_group, sandpile_group, spanning_tree_count
from .tutte import tutte, tutte_1y

__all__ = [
    "AbelianGroup",
    "BiPoly",
    "IntMatrix",
    "Multigraph",
    "RootedGraph",
    "Tree",
    "UniPoly",
    "canonical_code",
    "coconut_tree",
    "cokernel",
    "cone",
    "cone_group",
    "cone_plus",
    "determinant",
    "enumerate_trees",
    "path_tree",
    "sandpile_group",
    "smith_normal_form",
    "spanning_tree_count",
    "star_tree",
    "tutte",
    "tutte_1y",
]
