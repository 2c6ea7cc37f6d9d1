"""
Structure of the 2-shadow: chordality, cliques and witness sets.

A non-k-partite core F falls in one of two cases. Either its 2-shadow has
an induced cycle of length at least 4 (cycle witness), or the shadow is
chordal, hence perfect, hence holds a (k+1)-clique X, and a smallest subset
of X covered by no edge of F is a simplex witness.
"""

import itertools
import json
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import networkx as nx
import numpy as np

from hyperremoval.config import DEFAULT_CORE_VERTEX_CAP, DEFAULT_NODE_BUDGET
from hyperremoval.errors import ParameterError, PreconditionError, VerificationError, require
from hyperremoval.homomorphism import core, is_core
from hyperremoval.hypergraph import KGraph, is_k_partite, partition_classes, random_kgraph, shadow

logger = logging.getLogger(__name__)

__all__ = [
    'CycleWitness', 'CliqueWitness', 'ChordalityResult', 'AnalysisReport',
    'lex_bfs', 'chordality', 'max_clique_chordal', 'shortest_induced_cycle',
    'find_witness', 'validate_witness', 'is_cycle_witness_valid', 'analyze',
    'search_cycle_cores', 'random_cores',
]


@dataclass(frozen=True)
class CycleWitness:
    """I spans a cycle of the 2-shadow and no edge meets the cycle in 3 vertices."""

    I: Tuple[int, ...]
    cycle: Tuple[int, ...]

    kind = 'cycle'

    @property
    def s(self):
        return len(self.I)

    def to_dict(self):
        return {'type': self.kind, 'I': list(self.I), 'cycle': list(self.cycle)}


@dataclass(frozen=True)
class CliqueWitness:
    """Every (s-1)-subset of I lies in an edge, I itself in none."""

    I: Tuple[int, ...]
    s: int

    kind = 'clique'

    def to_dict(self):
        return {'type': self.kind, 'I': list(self.I), 's': self.s}


@dataclass(frozen=True)
class ChordalityResult:
    """Exactly one of peo / cycle is set."""

    peo: Optional[Tuple[int, ...]] = None
    cycle: Optional[Tuple[int, ...]] = None

    @property
    def is_chordal(self):
        return self.peo is not None


def lex_bfs(G):
    """
    Lexicographic breadth-first search.

    Returns:
        Vertices in visiting order; for a chordal graph the reverse order is
        a perfect elimination ordering. Ties go to the smallest vertex.
    """
    labels = {x: [] for x in G.nodes}
    visited = []
    remaining = set(G.nodes)
    for stamp in range(len(labels), 0, -1):
        x = max(remaining, key=lambda y: (labels[y], -y))
        remaining.remove(x)
        visited.append(x)
        for y in G.neighbors(x):
            if y in remaining:
                labels[y].append(stamp)
    return visited


def peo_violation(G, order):
    """
    First vertex whose later neighbours are not a clique.

    Returns:
        (x, u, w) with u, w later non-adjacent neighbours of x, or None.
    """
    position = {x: i for i, x in enumerate(order)}
    for x in order:
        later = sorted((y for y in G.neighbors(x) if position[y] > position[x]), key=position.get)
        for u, w in itertools.combinations(later, 2):
            if not G.has_edge(u, w):
                return x, u, w
    return None


def is_induced_cycle(G, cycle):
    """True iff cycle (a vertex sequence) is a chordless cycle of G of length >= 4."""
    if len(cycle) < 4 or len(set(cycle)) != len(cycle):
        return False
    if not all(G.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))):
        return False
    return G.subgraph(cycle).number_of_edges() == len(cycle)


def _cycle_through(G, x, u, w):
    """A chordless cycle x-u-...-w-x avoiding the rest of x's closed neighbourhood."""
    blocked = (set(G.neighbors(x)) | {x}) - {u, w}
    try:
        path = nx.shortest_path(G.subgraph(set(G.nodes) - blocked), u, w)
    except nx.NetworkXNoPath:
        return None
    return (x, *path)


def _chordless_cycle_scan(G):
    """
    Shortest chordless cycle found by scanning every vertex and pair of
    non-adjacent neighbours. Complete: every chordless cycle shows up
    through one of its vertices.
    """
    best = None
    for x in sorted(G.nodes):
        for u, w in itertools.combinations(sorted(G.neighbors(x)), 2):
            if G.has_edge(u, w):
                continue
            cycle = _cycle_through(G, x, u, w)
            if cycle is not None and (best is None or len(cycle) < len(best)):
                best = cycle
    return best


def chordality(G):
    """
    Certify chordality of G.

    Runs Lex-BFS and checks the reversed order as a perfect elimination
    ordering. On failure a chordless cycle is extracted from the violating
    vertex, falling back to a full scan.

    Returns:
        ChordalityResult with either a verified PEO or a verified chordless cycle
    """
    peo = tuple(reversed(lex_bfs(G)))
    violation = peo_violation(G, peo)
    if violation is None:
        return ChordalityResult(peo=peo)
    cycle = _cycle_through(G, *violation) or _chordless_cycle_scan(G)
    require(cycle is not None and is_induced_cycle(G, cycle),
            'PEO check failed but no chordless cycle was found')
    return ChordalityResult(cycle=cycle)


def max_clique_chordal(G, peo):
    """
    Maximum clique of a chordal graph from a perfect elimination ordering.

    Returns:
        Sorted tuple of the clique's vertices
    """
    if sorted(peo) != sorted(G.nodes):
        raise ParameterError('ordering is not a permutation of the vertices')
    if peo_violation(G, peo) is not None:
        raise ParameterError('ordering is not a perfect elimination ordering')
    position = {x: i for i, x in enumerate(peo)}
    best = ()
    for x in peo:
        clique = (x,) + tuple(y for y in G.neighbors(x) if position[y] > position[x])
        if len(clique) > len(best):
            best = clique
    return tuple(sorted(best))


def _canonical_rotation(G, vertices):
    """Walk the cycle on `vertices` from its smallest vertex towards the smaller neighbour."""
    sub = G.subgraph(vertices)
    start = min(vertices)
    walk = [start, min(sub.neighbors(start))]
    while len(walk) < len(vertices):
        walk.append(next(y for y in sub.neighbors(walk[-1]) if y != walk[-2]))
    return tuple(walk)


def shortest_induced_cycle(G):
    """
    Shortest chordless cycle of length >= 4; ties go to the lexicographically
    smallest sorted vertex tuple.

    Returns:
        The cycle in canonical rotation, or None when G is chordal
    """
    found = _chordless_cycle_scan(G)
    if found is None:
        return None
    length = len(found)
    for vertices in itertools.combinations(sorted(G.nodes), length):
        sub = G.subgraph(vertices)
        if sub.number_of_edges() == length and all(d == 2 for _, d in sub.degree()) \
                and nx.is_connected(sub):
            return _canonical_rotation(G, vertices)
    raise VerificationError('chordless cycle vanished during the ordered search')


def _covered(F, vertices):
    vertices = set(vertices)
    return any(vertices <= set(e) for e in F.edges)


def is_cycle_witness_valid(F, cycle):
    """
    General cycle condition: cycle is a cycle of the 2-shadow and no edge of F
    meets its vertex set in more than two vertices. Chords are allowed.
    """
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    for i, x in enumerate(cycle):
        if cycle[(i + 1) % len(cycle)] not in F.neighbors(x):
            return False
    on_cycle = set(cycle)
    return all(len(on_cycle.intersection(e)) <= 2 for e in F.edges)


def validate_witness(F, witness):
    """Raise VerificationError unless witness satisfies all of its invariants for F."""
    if isinstance(witness, CycleWitness):
        require(set(witness.cycle) <= set(witness.I), 'cycle %s leaves I', witness.cycle)
        require(is_cycle_witness_valid(F, witness.cycle),
                'cycle %s is not a valid cycle witness', witness.cycle)
        require(all(len(set(witness.I).intersection(e)) <= 2 for e in F.edges),
                'an edge meets I in more than two vertices')
    elif isinstance(witness, CliqueWitness):
        s, I = witness.s, witness.I
        require(3 <= s <= F.k + 1, 'simplex size %d outside [3, %d]', s, F.k + 1)
        require(len(set(I)) == s, 'I has %d vertices, expected %d', len(set(I)), s)
        for face in itertools.combinations(I, s - 1):
            require(_covered(F, face), '(s-1)-subset %s of I lies in no edge', face)
        require(all(len(set(I).intersection(e)) <= s - 1 for e in F.edges),
                'an edge contains all of I')
    else:
        raise ParameterError(f'unknown witness {witness!r}')


def find_witness(F, assume_core=False, node_budget=DEFAULT_NODE_BUDGET):
    """
    Pick the witness set for a non-k-partite core F.

    Args:
        F: Normalized KGraph, a core, not k-partite
        assume_core: Skip the (expensive) is_core precondition check
        node_budget: Node budget for the core check

    Returns:
        CycleWitness or CliqueWitness, validated
    """
    if not F.is_normalized:
        raise PreconditionError('find_witness needs a normalized hypergraph')
    if is_k_partite(F) is not None:
        raise PreconditionError(f'{F!r} is {F.k}-partite; no witness exists')
    if not assume_core and not is_core(F, node_budget=node_budget):
        raise PreconditionError(f'{F!r} is not a core; reduce it with core() first')

    G = shadow(F, 2)
    cycle = shortest_induced_cycle(G)
    if cycle is not None:
        witness = CycleWitness(I=tuple(sorted(cycle)), cycle=cycle)
    else:
        result = chordality(G)
        require(result.is_chordal, 'shadow without chordless cycles failed the PEO check')
        clique = max_clique_chordal(G, result.peo)
        require(len(clique) >= F.k + 1,
                'chordal shadow of a non-%d-partite graph has clique number %d', F.k, len(clique))
        X = clique[:F.k + 1]
        I = next(subset for size in range(2, F.k + 2)
                 for subset in itertools.combinations(X, size) if not _covered(F, subset))
        witness = CliqueWitness(I=I, s=len(I))
    validate_witness(F, witness)
    logger.info('Witness for %r: %s', F, witness.to_dict())
    return witness


@dataclass(frozen=True)
class AnalysisReport:
    """Outcome of the structural analysis of F (after isolated-vertex removal)."""

    graph: KGraph
    k_partite: bool
    partition: Optional[list]
    core: KGraph
    core_embedding: Tuple[int, ...]
    is_core_already: bool
    witness: Optional[object]
    removed_isolated: Tuple[int, ...] = ()

    @property
    def lemma_path(self):
        if self.k_partite:
            return 'k-partite'
        return 'induced-cycle' if isinstance(self.witness, CycleWitness) else 'simplex'

    def to_dict(self):
        data = {
            'kPartite': self.k_partite,
            'core': self.core.to_dict(),
            'coreEmbedding': list(self.core_embedding),
            'isCoreAlready': self.is_core_already,
            'lemmaPath': self.lemma_path,
            'removedIsolated': list(self.removed_isolated),
            'witness': self.witness.to_dict() if self.witness is not None else None,
        }
        if self.partition is not None:
            data['partition'] = self.partition
        return data

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)


def analyze(F, core_vertex_cap=DEFAULT_CORE_VERTEX_CAP, node_budget=DEFAULT_NODE_BUDGET):
    """
    Run the full case analysis on F.

    Returns:
        AnalysisReport; the witness refers to the core's vertex labels
    """
    graph, removed = F.normalize()
    coloring = is_k_partite(graph)
    result = core(graph, core_vertex_cap=core_vertex_cap, node_budget=node_budget)
    if coloring is not None:
        require(result.is_single_edge, 'k-partite graph with a core of %d edges', result.core.num_edges)
        return AnalysisReport(graph, True, partition_classes(coloring, graph.k), result.core,
                              result.embedding, graph.num_edges == 1, None, removed)
    require(not result.is_single_edge, 'non-k-partite graph with a single-edge core')
    witness = find_witness(result.core, assume_core=True, node_budget=node_budget)
    return AnalysisReport(graph, False, None, result.core, result.embedding,
                          result.core.num_edges == graph.num_edges, witness, removed)


def search_cycle_cores(k, max_vertices, node_budget=DEFAULT_NODE_BUDGET):
    """
    Enumerate k-graphs without isolated vertices (by vertex count, edge count,
    then lexicographic edge choice) and yield the cores whose analysis takes
    the induced-cycle path.

    Yields:
        Tuples (KGraph, CycleWitness)
    """
    for v in range(k + 1, max_vertices + 1):
        candidates = list(itertools.combinations(range(v), k))
        for size in range(1, len(candidates) + 1):
            for edges in itertools.combinations(candidates, size):
                F = KGraph(k, v, edges)
                if not F.is_normalized or is_k_partite(F) is not None:
                    continue
                if shortest_induced_cycle(shadow(F, 2)) is None:
                    continue
                if not is_core(F, node_budget=node_budget):
                    continue
                yield F, find_witness(F, assume_core=True)


def random_cores(k, count, max_vertices, seed=0, node_budget=DEFAULT_NODE_BUDGET):
    """
    Random non-k-partite cores: sample random k-graphs and keep those that
    pass is_core; everything else is rejected and resampled.

    Returns:
        List of `count` normalized KGraphs
    """
    rng = np.random.default_rng(seed)
    cores = []
    while len(cores) < count:
        v = int(rng.integers(k + 1, max_vertices + 1))
        F, _ = random_kgraph(k, v, float(rng.uniform(0.25, 0.6)), rng).normalize()
        if F.num_edges == 0 or is_k_partite(F) is not None:
            continue
        if not is_core(F, node_budget=node_budget):
            continue
        cores.append(F)
    return cores
