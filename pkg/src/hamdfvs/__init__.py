"""Directed Hamiltonicity at desk scale: gadget reductions with witness
maps in both directions, exact brute-force oracles that validate every
construction, cylindrical-wall long-path extraction, and directed
tree-decomposition verification."""

from .digraph import (
    CliqueWitness,
    CycleWitness,
    Digraph,
    InvalidWitnessError,
    PathWitness,
    StructuralViolationError,
    WitnessCheck,
    find_min_dfvs,
    girth,
    is_acyclic,
    strongly_connected_components,
    subdivide_edge,
    validate_witness,
    verify_dfvs,
)
from .oracles import SolveResult, SolverBudget

__version__ = "0.1.0"

__all__ = [
    "CliqueWitness",
    "CycleWitness",
    "Digraph",
    "InvalidWitnessError",
    "PathWitness",
    "SolveResult",
    "SolverBudget",
    "StructuralViolationError",
    "WitnessCheck",
    "find_min_dfvs",
    "girth",
    "is_acyclic",
    "strongly_connected_components",
    "subdivide_edge",
    "validate_witness",
    "verify_dfvs",
]
