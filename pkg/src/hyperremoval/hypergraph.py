"""
k-uniform hypergraphs and their primitive operations.

Vertices are dense integers 0..v-1, edges are sorted k-tuples kept in
canonical (sorted) order, so two equal hypergraphs serialize identically.
The 2-shadow is returned as a networkx Graph; higher shadows as KGraphs.

Text format (canonical):

    k v
    0 1 2
    0 1 3

JSON mirror: {"k": 3, "v": 4, "edges": [[0, 1, 2], [0, 1, 3]]}
"""

import itertools
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import networkx as nx
import numpy as np

from hyperremoval.errors import ParameterError, require

logger = logging.getLogger(__name__)

__all__ = [
    'KGraph', 'VertexMap', 'shadow', 'blowup', 'is_k_partite',
    'partition_classes', 'read_kgraph', 'write_kgraph', 'random_kgraph',
]


class KGraph:
    """
    An immutable k-uniform hypergraph on the vertices 0..v-1.

    Isolated vertices are allowed; `normalize()` removes them and records
    the removed ids in `meta['removed_isolated']`.
    """

    __slots__ = ('k', 'v', 'edges', 'edge_set', 'meta', '_incidence', '_neighbors', '_bits')

    def __init__(self, k, v, edges, meta=None):
        if k < 2:
            raise ParameterError(f'uniformity must be at least 2, got {k}')
        if v < 0:
            raise ParameterError(f'vertex count must be non-negative, got {v}')
        canonical = []
        for edge in edges:
            e = tuple(sorted(int(x) for x in edge))
            if len(e) != k or len(set(e)) != k:
                raise ParameterError(f'edge {tuple(edge)} does not have {k} distinct vertices')
            if e[0] < 0 or e[-1] >= v:
                raise ParameterError(f'edge {e} uses a vertex outside 0..{v - 1}')
            canonical.append(e)
        edge_set = frozenset(canonical)
        if len(edge_set) != len(canonical):
            raise ParameterError('duplicate edges')
        self.k = k
        self.v = v
        self.edges = tuple(sorted(edge_set))
        self.edge_set = edge_set
        self.meta = dict(meta or {})
        self._incidence = None
        self._neighbors = None
        self._bits = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_edges(cls, k, edges, v=None, meta=None):
        """Build a KGraph; v defaults to one more than the largest vertex."""
        edges = [tuple(e) for e in edges]
        if v is None:
            v = max((max(e) for e in edges), default=-1) + 1
        return cls(k, v, edges, meta)

    @classmethod
    def complete(cls, k, v):
        """K_v^(k): all k-subsets of v vertices."""
        return cls(k, v, itertools.combinations(range(v), k))

    @classmethod
    def cycle(cls, v):
        """The graph cycle C_v."""
        if v < 3:
            raise ParameterError(f'a cycle needs at least 3 vertices, got {v}')
        return cls(2, v, [(i, (i + 1) % v) for i in range(v)])

    @classmethod
    def single_edge(cls, k):
        return cls(k, k, [tuple(range(k))])

    # -- basic queries ----------------------------------------------------

    @property
    def vertices(self):
        return range(self.v)

    @property
    def num_edges(self):
        return len(self.edges)

    def incident(self, x):
        """Edges containing vertex x."""
        if self._incidence is None:
            incidence = [[] for _ in range(self.v)]
            for e in self.edges:
                for y in e:
                    incidence[y].append(e)
            self._incidence = tuple(tuple(es) for es in incidence)
        return self._incidence[x]

    def degree(self, x):
        return len(self.incident(x))

    def neighbors(self, x):
        """Neighbours of x in the 2-shadow."""
        if self._neighbors is None:
            nbrs = [set() for _ in range(self.v)]
            for e in self.edges:
                for a, b in itertools.combinations(e, 2):
                    nbrs[a].add(b)
                    nbrs[b].add(a)
            self._neighbors = tuple(frozenset(s) for s in nbrs)
        return self._neighbors[x]

    def shadow_bits(self):
        """2-shadow adjacency as one integer bitmask per vertex."""
        if self._bits is None:
            self._bits = tuple(sum(1 << y for y in self.neighbors(x)) for x in self.vertices)
        return self._bits

    def shadow_degree(self, x):
        return len(self.neighbors(x))

    def isolated_vertices(self):
        return [x for x in self.vertices if not self.incident(x)]

    @property
    def is_normalized(self):
        return not self.isolated_vertices()

    def has_edge(self, vertices):
        return tuple(sorted(vertices)) in self.edge_set

    # -- derived hypergraphs ----------------------------------------------

    def normalize(self):
        """
        Remove isolated vertices.

        Returns:
            Tuple (normalized KGraph, tuple of removed vertex ids). The new
            graph's meta records the removed ids and the kept original ids.
        """
        removed = tuple(self.isolated_vertices())
        if not removed:
            return self, ()
        dropped = set(removed)
        kept = [x for x in self.vertices if x not in dropped]
        graph, _ = self.induced(kept)
        graph.meta.update(self.meta)
        graph.meta['removed_isolated'] = list(removed)
        graph.meta['original_ids'] = kept
        logger.debug('Removed %d isolated vertices', len(removed))
        return graph, removed

    def induced(self, vertices):
        """
        Sub-hypergraph induced on `vertices`, relabelled densely.

        Returns:
            Tuple (KGraph, tuple of original ids in new-label order).
        """
        order = tuple(sorted(set(vertices)))
        position = {x: i for i, x in enumerate(order)}
        edges = [tuple(position[x] for x in e) for e in self.edges if all(x in position for x in e)]
        return KGraph(self.k, len(order), edges), order

    def with_edges(self, edges):
        """Same vertex set, a different edge set."""
        return KGraph(self.k, self.v, edges)

    def without_edge(self, edge):
        edge = tuple(sorted(edge))
        return KGraph(self.k, self.v, [e for e in self.edges if e != edge])

    def relabel(self, new_label):
        """
        Rename vertices: x becomes new_label[x] (a permutation of 0..v-1).
        """
        if sorted(new_label) != list(range(self.v)):
            raise ParameterError('relabelling must be a permutation of the vertices')
        return KGraph(self.k, self.v, [tuple(new_label[x] for x in e) for e in self.edges])

    def __eq__(self, other):
        return isinstance(other, KGraph) and (self.k, self.v, self.edges) == (other.k, other.v, other.edges)

    def __hash__(self):
        return hash((self.k, self.v, self.edges))

    def __repr__(self):
        return f'KGraph(k={self.k}, v={self.v}, edges={len(self.edges)})'

    # -- serialization ----------------------------------------------------

    def to_text(self):
        lines = [f'{self.k} {self.v}'] + [' '.join(map(str, e)) for e in self.edges]
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text):
        lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith('#')]
        if not lines:
            raise ParameterError('empty hypergraph file')
        try:
            k, v = (int(x) for x in lines[0].split())
            edges = [tuple(int(x) for x in line.split()) for line in lines[1:]]
        except ValueError as e:
            raise ParameterError(f'malformed hypergraph text: {e}')
        return cls(k, v, edges)

    def to_dict(self):
        return {'k': self.k, 'v': self.v, 'edges': [list(e) for e in self.edges]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(int(data['k']), int(data['v']), [tuple(e) for e in data['edges']])
        except (KeyError, TypeError) as e:
            raise ParameterError(f'malformed hypergraph JSON: {e}')

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class VertexMap:
    """A total map from 0..domain_size-1 into 0..image_size-1."""

    domain_size: int
    image_size: int
    mapping: tuple

    def __post_init__(self):
        if len(self.mapping) != self.domain_size:
            raise ParameterError('vertex map must be total on its domain')
        if any(not 0 <= y < self.image_size for y in self.mapping):
            raise ParameterError('vertex map sends a vertex outside its image range')

    @classmethod
    def identity(cls, v):
        return cls(v, v, tuple(range(v)))

    def __call__(self, x):
        return self.mapping[x]

    def compose(self, inner):
        """Return self ∘ inner, i.e. x -> self(inner(x))."""
        if inner.image_size != self.domain_size:
            raise ParameterError('cannot compose maps with mismatched domains')
        return VertexMap(inner.domain_size, self.image_size, tuple(self.mapping[y] for y in inner.mapping))

    @property
    def is_injective(self):
        return len(set(self.mapping)) == len(self.mapping)

    def image_edge(self, edge):
        return tuple(sorted(self.mapping[x] for x in edge))

    def is_homomorphism(self, source, target):
        """True iff every edge of source is sent onto an edge of target."""
        if source.v != self.domain_size or target.v != self.image_size:
            return False
        return all(self.image_edge(e) in target.edge_set for e in source.edges)


def shadow(F, level):
    """
    The level-shadow of F: all level-subsets contained in some edge.

    Args:
        F: KGraph
        level: Shadow level, 2 <= level <= k

    Returns:
        networkx.Graph on F's vertices when level == 2, otherwise a KGraph
    """
    if not 2 <= level <= F.k:
        raise ParameterError(f'shadow level must lie in [2, {F.k}], got {level}')
    faces = {f for e in F.edges for f in itertools.combinations(e, level)}
    if level == 2:
        graph = nx.Graph()
        graph.add_nodes_from(F.vertices)
        graph.add_edges_from(sorted(faces))
        return graph
    return KGraph(level, F.v, faces)


def blowup(H, b):
    """
    The b-blowup of H: vertex x becomes clones x*b .. x*b+b-1 and every edge
    all b^k transversal edges.

    Returns:
        Tuple (KGraph, natural homomorphism VertexMap onto H)
    """
    if b < 1:
        raise ParameterError(f'blowup factor must be positive, got {b}')
    edges = []
    for e in H.edges:
        clones = [range(x * b, x * b + b) for x in e]
        edges.extend(itertools.product(*clones))
    graph = KGraph(H.k, H.v * b, edges)
    natural = VertexMap(H.v * b, H.v, tuple(x // b for x in range(H.v * b)))
    require(natural.is_homomorphism(graph, H), 'natural map of a blowup is not a homomorphism')
    return graph, natural


def _saturation_coloring(adjacency, colors_allowed):
    """Backtracking colouring with a saturation-first (DSatur) vertex choice."""
    v = len(adjacency)
    coloring = [-1] * v

    def choose():
        best, best_key = None, None
        for x in range(v):
            if coloring[x] >= 0:
                continue
            saturation = len({coloring[y] for y in adjacency[x] if coloring[y] >= 0})
            key = (saturation, len(adjacency[x]), -x)
            if best_key is None or key > best_key:
                best, best_key = x, key
        return best

    def extend(done, used):
        if done == v:
            return True
        x = choose()
        forbidden = {coloring[y] for y in adjacency[x]}
        for c in range(min(used + 1, colors_allowed)):
            if c in forbidden:
                continue
            coloring[x] = c
            if extend(done + 1, max(used, c + 1)):
                return True
        coloring[x] = -1
        return False

    return tuple(coloring) if extend(0, 0) else None


def is_k_partite(F):
    """
    Decide whether F is k-partite, i.e. whether its 2-shadow is k-colorable.

    Returns:
        A tuple giving the class (0..k-1) of every vertex, or None. Every
        edge of F meets every class exactly once (checked).
    """
    adjacency = [F.neighbors(x) for x in F.vertices]
    coloring = _saturation_coloring(adjacency, F.k)
    if coloring is None:
        return None
    for e in F.edges:
        require(sorted(coloring[x] for x in e) == list(range(F.k)),
                'edge %s does not meet every class exactly once', e)
    return coloring


def partition_classes(coloring, k):
    """Turn a vertex colouring into k sorted vertex classes."""
    return [[x for x, c in enumerate(coloring) if c == i] for i in range(k)]


def random_kgraph(k, v, p, rng):
    """
    Random k-graph: every k-subset of v vertices is an edge with probability p.

    Args:
        rng: numpy Generator (or a seed)
    """
    rng = np.random.default_rng(rng)
    candidates = list(itertools.combinations(range(v), k))
    keep = rng.random(len(candidates)) < p
    return KGraph(k, v, [e for e, kept in zip(candidates, keep) if kept])


def read_kgraph(path):
    """Read a hypergraph from the text format, or JSON when the suffix is .json."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ParameterError(f'cannot read {path}: {e}')
    if path.suffix == '.json':
        return KGraph.from_json(text)
    return KGraph.from_text(text)


def write_kgraph(F, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(F.to_json() if path.suffix == '.json' else F.to_text())
