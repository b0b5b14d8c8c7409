"""Lattice heteropolymer folding compiled to pseudo-boolean, QUBO, Ising, WCNF and ILP form."""
from .csp import IlpProblem, WcnfProblem, ilp_optimum, pb_to_wcnf, wcnf_cost, wcnf_to_ilp
from .diamond import encode_diamond
from .encoding import Encoding
from .lattice import Instance, enumerate_saws, ground_truth, native_energy, parse_instance
from .pbpoly import PBPoly
from .reduction import (IsingModel, QuboModel, and_gadget, build_cover, greedy_cover,
                        qubo_to_ising, reduce_to_2local)
from .solve import anneal, exhaustive_min, verify_encoding
from .turn_ancilla import Penalties, encode
from .turn_circuit import encode_circuit

__all__ = [
    "Encoding", "Instance", "IlpProblem", "IsingModel", "PBPoly", "Penalties", "QuboModel",
    "WcnfProblem", "and_gadget", "anneal", "build_cover", "encode", "encode_circuit",
    "encode_diamond", "enumerate_saws", "exhaustive_min", "greedy_cover", "ground_truth",
    "ilp_optimum", "native_energy", "parse_instance", "pb_to_wcnf", "qubo_to_ising",
    "reduce_to_2local", "verify_encoding", "wcnf_cost", "wcnf_to_ilp",
]
