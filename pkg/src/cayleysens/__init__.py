"""Sensitivity, imbalance and cube parameters of Cayley graphs."""

from .graph import (Certificate, Graph, VerificationReport, make_certificate,
                    read_certificate, read_graph, verify_certificate, write_certificate,
                    write_graph)
from .groups import FiniteGroup, cayley_graph, group_make
from .solver import (SearchBudget, SolveResult, delta_beta, independence_number, iota,
                     kappa_search, max_low_degree_set, sensitivity)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "Graph", "VerificationReport", "make_certificate", "read_certificate",
    "read_graph", "verify_certificate", "write_certificate", "write_graph", "FiniteGroup",
    "cayley_graph", "group_make", "SearchBudget", "SolveResult", "delta_beta",
    "independence_number", "iota", "kappa_search", "max_low_degree_set", "sensitivity",
]
