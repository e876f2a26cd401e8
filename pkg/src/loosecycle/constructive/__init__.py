"""Constructive pipelines: absorbing/reservoir/extension and extremal."""

from .absorbing import AbsorbingStructure, absorb, absorbable_pairs, build_absorbing_path
from .config import SolveConfig, SolveReport
from .extension import DONE, Extension, ExtensionParams, extend_path, make_blocks
from .extremal import (ExtremalPartition, SpecialPath, build_special_path, classify_extremal,
                       disjoint_two_paths, extremal_solve, spanning_path)
from .matching import max_bipartite_matching
from .nonextremal import nonextremal_solve
from .reservoir import Reservoir, chain_pieces, select_reservoir
from .solver import METHODS, solve

__all__ = [
    "AbsorbingStructure", "absorb", "absorbable_pairs", "build_absorbing_path",
    "SolveConfig", "SolveReport",
    "DONE", "Extension", "ExtensionParams", "extend_path", "make_blocks",
    "ExtremalPartition", "SpecialPath", "build_special_path", "classify_extremal",
    "disjoint_two_paths", "extremal_solve", "spanning_path",
    "max_bipartite_matching", "nonextremal_solve",
    "Reservoir", "chain_pieces", "select_reservoir",
    "METHODS", "solve",
]
