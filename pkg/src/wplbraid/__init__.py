"""Exceptional sequences on weighted projective lines, modelled in K_0.

The package computes the Euler form of a weighted projective line, mutates
exceptional sequences by the braid group, and checks the structural facts
that govern the orbit: the determinant invariant, helix rotations, norm
reduction, perpendicular lattices and tilting spreads.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import LatticeMismatch, MalformedInput, ModelInconsistency, SchemaError, SearchExhausted, WplError
from .invariants import braid_relation_suite, det_along_words, helix_check, invariant_determinant, invariant_matrix
from .ktheory import EulerLattice, build_lattice, lattice_for
from .mutation import apply_word, left_mutation, parse_word, right_mutation
from .orbits import SearchBudget, find_braid_word, find_simple_tail, perp_sublattice, rank_norm, reduce_norm_step, wing_gram_check
from .sequences import ExcSeq, canonical_sequence, det2_sequence, validate_sequence
from .spread import max_spread, sgd_lower_bound, shift_constraints
from .weights import LVec, WeightType, normal_form

__all__ = [
    "EulerLattice", "ExcSeq", "LVec", "LatticeMismatch", "MalformedInput", "ModelInconsistency",
    "SchemaError", "SearchBudget", "SearchExhausted", "WeightType", "WplError", "apply_word",
    "braid_relation_suite", "build_lattice", "canonical_sequence", "det2_sequence", "det_along_words",
    "find_braid_word", "find_simple_tail", "helix_check", "invariant_determinant", "invariant_matrix",
    "lattice_for", "left_mutation", "max_spread", "normal_form", "parse_word", "perp_sublattice",
    "rank_norm", "reduce_norm_step", "right_mutation", "sgd_lower_bound", "shift_constraints",
    "validate_sequence", "wing_gram_check",
]
