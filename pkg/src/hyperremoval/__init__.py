"""
Hyperremoval - hard instances for the hypergraph removal lemma

Main functions:
- analyze: k-partiteness, core and witness set of a k-graph F
- hard_instance / reduce_to_core_instance: many edge-disjoint copies of F
  in a host with few copies of F overall
- count_copies: exact copy counting
- behrend_set: dense sets without non-trivial solutions of a linear equation
"""

__version__ = '0.1.0'

from hyperremoval.behrend import BehrendSet, behrend_set, verify_solution_free
from hyperremoval.constructions import (
    CopyFamily, PartiteInstance, amplify_blowup, disjoint_family, extend_family,
    hard_instance, lift_to_supergraph, reduce_to_core_instance, rs_graph, rs_simplex,
)
from hyperremoval.counting import (
    CountReport, count_canonical_copies, count_copies, verify_edge_disjoint,
    verify_pairwise_disjoint,
)
from hyperremoval.homomorphism import core, find_homomorphism, is_core
from hyperremoval.hypergraph import KGraph, VertexMap, blowup, is_k_partite, shadow
from hyperremoval.structure_analysis import CliqueWitness, CycleWitness, analyze, find_witness

__all__ = [
    'KGraph', 'VertexMap', 'shadow', 'blowup', 'is_k_partite',
    'find_homomorphism', 'core', 'is_core',
    'CycleWitness', 'CliqueWitness', 'find_witness', 'analyze',
    'BehrendSet', 'behrend_set', 'verify_solution_free',
    'CopyFamily', 'PartiteInstance', 'rs_graph', 'rs_simplex', 'extend_family',
    'disjoint_family', 'hard_instance', 'amplify_blowup', 'lift_to_supergraph',
    'reduce_to_core_instance',
    'CountReport', 'count_copies', 'count_canonical_copies',
    'verify_pairwise_disjoint', 'verify_edge_disjoint',
]
