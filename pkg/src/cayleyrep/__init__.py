"""Cayley graphs that are Cayley on more than one group: constructions and a brute-force oracle."""
from .cayley import CayleyGraph, ConnectionSet, Graph, build_cayley_graph, cayley_graph, validate_connection_set
from .constructions import (
    RegularCertificate,
    find_witness_y,
    prop1_certificate,
    single_xA_sets,
    thm2_certificate,
)
from .groups import FiniteGroup, GroupElement, build_group, find_isomorphism
from .oracle import automorphism_group, enumerate_regular_subgroups, verify_certificate
from .perm import PermGroup, Permutation, compose, generate_group, invert, is_regular

__all__ = [
    "CayleyGraph", "ConnectionSet", "FiniteGroup", "Graph", "GroupElement", "PermGroup",
    "Permutation", "RegularCertificate", "automorphism_group", "build_cayley_graph",
    "build_group", "cayley_graph", "compose", "enumerate_regular_subgroups", "find_isomorphism",
    "find_witness_y", "generate_group", "invert", "is_regular", "prop1_certificate",
    "single_xA_sets", "thm2_certificate", "validate_connection_set", "verify_certificate",
]
