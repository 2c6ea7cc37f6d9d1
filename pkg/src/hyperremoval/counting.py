"""
Exact copy counting and disjointness checks.

A copy of F in H is a subgraph of H isomorphic to F, i.e. a vertex set
together with its own edge set. Counting runs the injective homomorphism
search and divides by |Aut(F)|.
"""

import itertools
import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

from hyperremoval.config import DEFAULT_NODE_BUDGET
from hyperremoval.errors import BudgetExceededError, ParameterError, PreconditionError, require
from hyperremoval.homomorphism import HomSearch, automorphism_count
from hyperremoval.hypergraph import KGraph

logger = logging.getLogger(__name__)

__all__ = [
    'CountReport', 'DisjointnessResult', 'count_copies', 'count_canonical_copies',
    'enumerate_copies', 'count_copies_naive', 'verify_pairwise_disjoint', 'verify_edge_disjoint',
]

EXACT = 'exact'
CAP_EXCEEDED = 'cap_exceeded'


@dataclass(frozen=True)
class CountReport:
    """
    Attributes:
        count: Unlabeled copies, None when the budget ran out
        labeled: Injective embeddings counted (partial when capped)
        mode: 'general' or 'canonical-partite'
    """

    target: KGraph
    host_vertices: int
    host_edges: int
    count: Optional[int]
    automorphisms: int
    labeled: int
    status: str
    nodes: int
    elapsed: float
    mode: str = 'general'

    @property
    def exceeded(self):
        return self.status == CAP_EXCEEDED

    def to_dict(self, timing=False):
        data = {
            'target': self.target.to_dict(),
            'host': {'vertices': self.host_vertices, 'edges': self.host_edges},
            'count': self.count,
            'automorphisms': self.automorphisms,
            'labeled': self.labeled,
            'status': self.status,
            'nodes': self.nodes,
            'mode': self.mode,
        }
        if timing:
            data['elapsed'] = self.elapsed
        return data


@dataclass(frozen=True)
class DisjointnessResult:
    ok: bool
    pair: Optional[Tuple[int, int]] = None
    shared: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def _count_branch(host_data, target_data, root, budget):
    """Count embeddings whose first placed vertex goes to root; runs in a worker."""
    search = HomSearch(KGraph.from_dict(target_data), KGraph.from_dict(host_data),
                       injective=True, node_budget=budget)
    try:
        return search.count(root), search.nodes
    except BudgetExceededError:
        return None, search.nodes


def count_copies(H, F, node_budget=DEFAULT_NODE_BUDGET, workers=1):
    """
    Exact number of copies of F in H.

    The search splits on the image of the first placed vertex. With
    workers > 1 the branches run in a process pool; either way the branches
    are reduced in order, so the report does not depend on the worker count.

    Args:
        H: Host KGraph
        F: Normalized target KGraph of the same uniformity
        node_budget: Total search nodes allowed over all branches
        workers: Number of worker processes

    Returns:
        CountReport; status 'cap_exceeded' (count None) when the budget ran out
    """
    if H.k != F.k:
        raise ParameterError(f'uniformity mismatch: host {H.k}, target {F.k}')
    if not F.is_normalized:
        raise PreconditionError('count_copies needs a target without isolated vertices')
    started = time.monotonic()
    automorphisms = automorphism_count(F)
    roots = HomSearch(F, H, injective=True).root_candidates()

    labeled, nodes, exceeded = 0, 0, False
    if workers > 1 and len(roots) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_count_branch, H.to_dict(), F.to_dict(), root, node_budget)
                       for root in roots]
            results = [future.result() for future in futures]
        for count, used in results:
            if count is None or nodes + used > node_budget:
                nodes = node_budget + 1
                exceeded = True
                break
            nodes += used
            labeled += count
    else:
        for root in roots:
            search = HomSearch(F, H, injective=True, node_budget=node_budget - nodes)
            try:
                count = search.count(root)
            except BudgetExceededError:
                nodes = node_budget + 1
                exceeded = True
                break
            nodes += search.nodes
            labeled += count

    elapsed = time.monotonic() - started
    if exceeded:
        logger.warning('Counting %r in %r exceeded the node budget of %d (partial: %d embeddings)',
                       F, H, node_budget, labeled)
        return CountReport(F, H.v, H.num_edges, None, automorphisms, labeled, CAP_EXCEEDED,
                           nodes, elapsed)
    require(labeled % automorphisms == 0,
            '%d embeddings is not a multiple of |Aut| = %d', labeled, automorphisms)
    logger.info('%r has %d copies in %r', F, labeled // automorphisms, H)
    return CountReport(F, H.v, H.num_edges, labeled // automorphisms, automorphisms, labeled,
                       EXACT, nodes, elapsed)


def count_canonical_copies(inst, S, node_budget=DEFAULT_NODE_BUDGET, parts=None):
    """
    Number of tuples (v_1, ..., v_s), v_i in part parts[i], spanning a
    canonical copy of S.

    Args:
        inst: PartiteInstance
        S: KGraph on 0..s-1 of the instance's uniformity
        parts: Part of each vertex of S (default: vertex i in part i)

    Returns:
        int
    """
    parts = list(range(S.v)) if parts is None else list(parts)
    if len(parts) != S.v or any(not 0 <= p < inst.num_parts for p in parts):
        raise ParameterError(f'S needs {S.v} parts among the {inst.num_parts} of the instance')
    block = (1 << inst.n) - 1
    domains = [block << (p * inst.n) for p in parts]
    search = HomSearch(S, inst.graph, injective=True, domains=domains, node_budget=node_budget)
    return search.count()


def enumerate_copies(H, F, node_budget=DEFAULT_NODE_BUDGET):
    """All copies of F in H, each as the frozenset of its host edges."""
    copies = set()
    for image in HomSearch(F, H, injective=True, node_budget=node_budget):
        copies.add(frozenset(tuple(sorted(image[x] for x in e)) for e in F.edges))
    return copies


def count_copies_naive(H, F):
    """
    Reference counter: every v(F)-subset of H's vertices, every bijection
    from F onto it, distinct image edge sets inside H. Tiny inputs only.
    """
    total = 0
    for subset in itertools.combinations(range(H.v), F.v):
        found = set()
        for perm in itertools.permutations(subset):
            image = frozenset(tuple(sorted(perm[x] for x in e)) for e in F.edges)
            if image <= H.edge_set:
                found.add(image)
        total += len(found)
    return total


def verify_pairwise_disjoint(fam, level):
    """
    Check that any two tuples of fam agree on at most level-1 coordinates.

    Tuples sharing `level` coordinates meet in a bucket keyed by those
    positions and values.

    Returns:
        DisjointnessResult with the smallest violating index pair
    """
    tuples = list(fam.tuples)
    if len(tuples) < 2:
        return DisjointnessResult(True)
    if level <= 0:
        return DisjointnessResult(False, (0, 1), ())
    worst = None
    buckets = defaultdict(list)
    for i, t in enumerate(tuples):
        for positions in itertools.combinations(range(len(t)), level):
            key = (positions, tuple(t[p] for p in positions))
            members = buckets[key]
            if members and (worst is None or (members[0], i) < worst[0]):
                worst = ((members[0], i), positions)
            members.append(i)
    if worst is None:
        return DisjointnessResult(True)
    return DisjointnessResult(False, worst[0], worst[1])


def verify_edge_disjoint(copies):
    """
    Check that no edge belongs to two copies.

    Args:
        copies: Sequence of edge collections (edges as sorted tuples)

    Returns:
        DisjointnessResult naming the first two copies found sharing an edge
    """
    owner = {}
    for i, edges in enumerate(copies):
        for e in edges:
            e = tuple(sorted(e))
            j = owner.setdefault(e, i)
            if j != i:
                return DisjointnessResult(False, (j, i), e)
    return DisjointnessResult(True)
