"""Constructive route for traceable cubic graphs."""

from .lemmas import Intersection, intersection, is_crossing, make_well_intersecting, reroute_pair, well_intersects
from .structure import (
    AuxiliaryGraph,
    GammaSequence,
    OddPairDecomposition,
    PathColoring,
    WalkTriple,
    build_auxiliary,
    color_along_path,
    decompose,
    derive_walks,
    gamma_sequence,
)
from .theorem import (
    Escape,
    SpecialCase,
    Structure,
    Theorem6Result,
    Trace,
    analyse,
    balance_walk,
    find_path,
    special_cases,
    theorem6_pipeline,
)
