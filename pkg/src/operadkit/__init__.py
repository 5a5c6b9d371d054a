"""Planar operads over finite graded sets, with exhaustive verification at bounded truncations."""

from .errors import BlowupError, OperadError, SchemaError, TruncationExceeded
from .graded import CircElement, DotElement, GradedSet, circ_compose, dot_compose, distribute
from .trees import Tree, enumerate_trees
from .free import LabeledTree, enumerate_labeled, graft, graft_at
from .table import (Multiplication, OperadMap, TableOperad, associative_operad,
                    endomorphism_set_operad, verify_hom, verify_operad)
from .coproduct import Coproduct, FreeFactor
from .bimodules import RightModule, hochschild, j_object, end_module_operad
from .cosimplicial import build_cosimplicial, check_cosimplicial, compare_hochschild, discrete_limit

__version__ = "0.1.0"

__all__ = [
    "BlowupError",
    "OperadError",
    "SchemaError",
    "TruncationExceeded",
    "CircElement",
    "DotElement",
    "GradedSet",
    "circ_compose",
    "dot_compose",
    "distribute",
    "Tree",
    "enumerate_trees",
    "LabeledTree",
    "enumerate_labeled",
    "graft",
    "graft_at",
    "Multiplication",
    "OperadMap",
    "TableOperad",
    "associative_operad",
    "endomorphism_set_operad",
    "verify_hom",
    "verify_operad",
    "Coproduct",
    "FreeFactor",
    "RightModule",
    "hochschild",
    "j_object",
    "end_module_operad",
    "build_cosimplicial",
    "check_cosimplicial",
    "compare_hochschild",
    "discrete_limit",
]
