"""Hitting times of walks on hypercubes with locally attached graphs."""

from ._hcwalk import (
    DarkStateError,
    WalkError,
    WalkTopology,
    classical_hitting,
    classical_hitting_float,
    conditional_hitting,
    degree,
    expected_hitting_exact,
    markov_first_passage,
    parse_topology,
    quantum_hitting,
    reduced_dimension,
)

__all__ = [
    "DarkStateError",
    "WalkError",
    "WalkTopology",
    "classical_hitting",
    "classical_hitting_float",
    "conditional_hitting",
    "degree",
    "expected_hitting_exact",
    "markov_first_passage",
    "parse_topology",
    "quantum_hitting",
    "reduced_dimension",
]
