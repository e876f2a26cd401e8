"""Loose Hamilton cycles in 3-uniform hypergraphs of co-degree at least n/4."""

from .core import (CoDegreeProfile, ExtremalWitness, Hypergraph3, extremality_witness,
                   min_codegree, parse_h3, read_h3, save_h3, write_h3)
from .oracle import OracleStatus, claim3_path, enumerate_absorbers, find_hamilton_cycle
from .structures import (LooseCycle, LoosePath, Violation, connect, is_hamilton,
                         validate_loose_cycle, validate_loose_path)

__version__ = "0.1.0"

__all__ = [
    "CoDegreeProfile", "ExtremalWitness", "Hypergraph3", "extremality_witness",
    "min_codegree", "parse_h3", "read_h3", "save_h3", "write_h3",
    "OracleStatus", "claim3_path", "enumerate_absorbers", "find_hamilton_cycle",
    "LooseCycle", "LoosePath", "Violation", "connect", "is_hamilton",
    "validate_loose_cycle", "validate_loose_path",
]
