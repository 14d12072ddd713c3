"""Combinatorial workbench for Legendrian front words and cobordism movies."""

from .front import (
    ClassicalInvariants,
    Event,
    EventKind,
    FrontDiagram,
    FrontError,
    IndexOutOfRange,
    InvalidSite,
    L,
    MaslovPotential,
    NegativeStrandCount,
    NonClosed,
    R,
    X,
    canonical_form,
    classical_invariants,
    maslov_potential,
    stabilize,
)

__all__ = [
    "ClassicalInvariants",
    "Event",
    "EventKind",
    "FrontDiagram",
    "FrontError",
    "IndexOutOfRange",
    "InvalidSite",
    "L",
    "MaslovPotential",
    "NegativeStrandCount",
    "NonClosed",
    "R",
    "X",
    "canonical_form",
    "classical_invariants",
    "maslov_potential",
    "stabilize",
]

__version__ = "0.1.0"
