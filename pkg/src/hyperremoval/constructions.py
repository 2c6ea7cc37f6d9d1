"""
Explicit hard instances.

Partite hosts use the fixed identification of part i with the values
1..n: value v of part i is vertex i*n + (v-1). Copy families store values,
one coordinate per part, and PartiteInstance turns them into vertex ids.

The pipeline for a non-k-partite core F with witness I:

    Behrend set  ->  rs_graph / rs_simplex  ->  extend_family  ->  hard_instance

and from there `amplify_blowup` (blowups with disjoint transversal copies)
and `lift_to_supergraph` (from the core back to F).
"""

import itertools
import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Optional, Tuple

import networkx as nx
import numpy as np

from hyperremoval.behrend import behrend_set
from hyperremoval.config import DEFAULT_CORE_VERTEX_CAP, DEFAULT_NODE_BUDGET, DEFAULT_ORACLE_CAP, \
    DEFAULT_RETRY_CAP
from hyperremoval.counting import verify_edge_disjoint, verify_pairwise_disjoint
from hyperremoval.errors import ConstructionError, ParameterError, PreconditionError, \
    VerificationError, require
from hyperremoval.homomorphism import find_homomorphism, is_core
from hyperremoval.hypergraph import KGraph, VertexMap, blowup, shadow
from hyperremoval.structure_analysis import CycleWitness, analyze, validate_witness

logger = logging.getLogger(__name__)

__all__ = [
    'CopyFamily', 'PartiteInstance', 'AmplifiedInstance', 'LiftResult', 'CoreReduction',
    'rs_graph', 'rs_simplex', 'extend_family', 'disjoint_family', 'hard_instance',
    'amplify_blowup', 'lift_to_supergraph', 'reduce_to_core_instance', 'copy_edge_sets',
]


def _get_logger(x):
    return logging.getLogger(__name__ + '.' + x.__name__)


@dataclass(frozen=True)
class CopyFamily:
    """
    Tuples of values in 1..n; coordinate i lives in part parts[i].

    `level` is the declared disjointness: any two tuples agree on at most
    level-1 coordinates (0 means nothing is declared).
    """

    parts: Tuple[int, ...]
    tuples: Tuple[Tuple[int, ...], ...]
    level: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def length(self):
        return len(self.parts)

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)


@dataclass(frozen=True)
class PartiteInstance:
    """
    A k-graph on num_parts parts of n vertices each, with the copies that
    were placed on purpose.
    """

    k: int
    n: int
    num_parts: int
    edges: Tuple[Tuple[int, ...], ...]
    placed: CopyFamily
    meta: dict = field(default_factory=dict, compare=False)

    def vertex_id(self, part, value):
        if not 1 <= value <= self.n:
            raise ParameterError(f'value {value} outside 1..{self.n}')
        return part * self.n + value - 1

    def part_of(self, vertex):
        return vertex // self.n

    @cached_property
    def graph(self):
        return KGraph(self.k, self.num_parts * self.n, self.edges)

    @property
    def parts(self):
        return [list(range(i * self.n, (i + 1) * self.n)) for i in range(self.num_parts)]

    def placed_vertex_tuples(self):
        """Placed copies as vertex tuples; coordinate i lies in part placed.parts[i]."""
        return [tuple(self.vertex_id(p, v) for p, v in zip(self.placed.parts, t))
                for t in self.placed.tuples]

    def collapse_map(self):
        """V_j -> j, a map from the host onto the part indices."""
        return VertexMap(self.num_parts * self.n, self.num_parts,
                         tuple(x // self.n for x in range(self.num_parts * self.n)))

    def is_partite(self):
        return all(len({self.part_of(x) for x in e}) == self.k for e in self.edges)

    def to_dict(self):
        return {
            'k': self.k,
            'n': self.n,
            'parts': self.parts,
            'edges': [list(e) for e in self.edges],
            'placed': [{'tuple': list(t)} for t in self.placed_vertex_tuples()],
            'placedLevel': self.placed.level,
            'meta': self.meta,
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data):
        try:
            k, n = int(data['k']), int(data['n'])
            num_parts = len(data['parts'])
            placed = [tuple(p['tuple']) for p in data['placed']]
            edges = tuple(tuple(e) for e in data['edges'])
        except (KeyError, TypeError) as e:
            raise ParameterError(f'malformed instance JSON: {e}')
        parts = tuple(x // n for x in placed[0]) if placed else ()
        values = tuple(tuple(x % n + 1 for x in t) for t in placed)
        family = CopyFamily(parts, values, int(data.get('placedLevel', 0)))
        return cls(k, n, num_parts, edges, family, dict(data.get('meta', {})))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def copy_edge_sets(F, copies):
    """Edge sets of copies of F given as vertex tuples (coordinate x plays vertex x)."""
    return [[tuple(sorted(t[x] for x in e)) for e in F.edges] for t in copies]


def _as_graph(S):
    if isinstance(S, nx.Graph):
        return S
    if isinstance(S, KGraph) and S.k == 2:
        graph = nx.Graph()
        graph.add_nodes_from(S.vertices)
        graph.add_edges_from(S.edges)
        return graph
    raise ParameterError(f'expected a graph, got {S!r}')


def _check_behrend(B, m, t):
    if B.t != t:
        raise ParameterError(f'Behrend set was built for t={B.t}, the construction needs t={t}')
    if B.elements and (B.elements[0] < 1 or B.elements[-1] > m):
        raise ParameterError(f'Behrend set is not contained in [1..{m}]')


def _seed_sequence(seed):
    return seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)


def rs_graph(S, n, B, cycle=None):
    """
    Canonical copies S_{x,y} of a graph S on [s] with v_i = x + i*y for the
    cycle position i of vertex v_i.

    Args:
        S: Graph on 0..s-1 (networkx.Graph or 2-uniform KGraph) with a cycle
        n: Part size
        B: BehrendSet on [1..n//s] for t = cycle length
        cycle: Optional cycle of S as a vertex sequence (default: one found
               by networkx); it decides the permutation of coordinates

    Returns:
        PartiteInstance (k=2) whose placed copies are pairwise 2-disjoint
    """
    G = _as_graph(S)
    s = G.number_of_nodes()
    if sorted(G.nodes) != list(range(s)):
        raise ParameterError('S must have vertices 0..s-1')
    if cycle is None:
        try:
            cycle = [u for u, _ in nx.find_cycle(G, source=min(G.nodes))]
        except nx.NetworkXNoCycle:
            raise ParameterError('S has no cycle')
    cycle = tuple(cycle)
    t = len(cycle)
    if t < 3 or len(set(cycle)) != t or \
            not all(G.has_edge(cycle[i], cycle[(i + 1) % t]) for i in range(t)):
        raise ParameterError(f'{cycle} is not a cycle of S')
    q = n // s
    _check_behrend(B, q, t)
    permutation = cycle + tuple(sorted(set(range(s)) - set(cycle)))
    position = {x: p for p, x in enumerate(permutation)}

    tuples = []
    for x in range(1, q + 1):
        for y in B.elements:
            values = tuple(x + position[i] * y for i in range(s))
            require(max(values) <= n, 'copy S_{%d,%d} does not fit in [1..%d]', x, y, n)
            tuples.append(values)
    family = CopyFamily(tuple(range(s)), tuple(tuples), level=2)
    check = verify_pairwise_disjoint(family, 2)
    require(check.ok, 'canonical copies %s are not 2-disjoint', check.pair)
    require(len(tuples) == q * len(B), 'placed %d copies, expected %d', len(tuples), q * len(B))

    edges = {tuple(sorted((u * n + c[u] - 1, w * n + c[w] - 1))) for c in tuples for u, w in G.edges}
    meta = {'construction': 'rs_graph', 'n': n, 's': s, 't': t,
            'permutation': list(permutation), 'B': B.to_dict()}
    logger.info('Placed %d canonical copies of S (s=%d, t=%d, n=%d)', len(tuples), s, t, n)
    return PartiteInstance(2, n, s, tuple(sorted(edges)), family, meta)


def rs_simplex(s, n, B):
    """
    Canonical copies K_{x_1..x_{s-2},y} of K_s^(s-1) on
    (x_1, ..., x_{s-2}, y + sum x_i, 2y + sum x_i).

    Args:
        s: Number of parts (>= 3); the instance is (s-1)-uniform
        n: Part size
        B: BehrendSet on [1..n//s] for t = 3

    Returns:
        PartiteInstance whose placed copies are pairwise (s-1)-disjoint
    """
    if s < 3:
        raise ParameterError(f'simplex size must be at least 3, got {s}')
    q = n // s
    _check_behrend(B, q, 3)
    tuples = []
    for xs in itertools.product(range(1, q + 1), repeat=s - 2):
        base = sum(xs)
        for y in B.elements:
            tuples.append(xs + (y + base, 2 * y + base))
    family = CopyFamily(tuple(range(s)), tuple(tuples), level=s - 1)
    check = verify_pairwise_disjoint(family, s - 1)
    require(check.ok, 'simplex copies %s are not (s-1)-disjoint', check.pair)
    require(all(t[-1] <= n for t in tuples), 'a simplex copy leaves [1..%d]', n)

    edges = set()
    for t in tuples:
        ids = [i * n + v - 1 for i, v in enumerate(t)]
        edges.update(itertools.combinations(ids, s - 1))
    meta = {'construction': 'rs_simplex', 'n': n, 's': s, 'B': B.to_dict()}
    logger.info('Placed %d simplex copies (s=%d, n=%d)', len(tuples), s, n)
    return PartiteInstance(s - 1, n, s, tuple(sorted(edges)), family, meta)


def _alteration_constant(r, s, k, l):
    return sum(comb(r, d) * comb(s, max(0, k - d)) for d in range(k - l, r + 1))


def _sample(base, n, r, keep, stream):
    if keep >= 1:
        grid = list(itertools.product(range(1, n + 1), repeat=r))
        return [S + A for S in base for A in grid]
    total = n ** r
    sampled = []
    for S, child in zip(base, stream.spawn(len(base))):
        rng = np.random.default_rng(child)
        count = int(rng.binomial(total, keep))
        if not count:
            continue
        for index in np.sort(rng.choice(total, size=count, replace=False)):
            index = int(index)
            digits = []
            for _ in range(r):
                index, d = divmod(index, n)
                digits.append(d + 1)
            sampled.append(S + tuple(reversed(digits)))
    return sampled


def _violations(tuples, s, k, l):
    """Pairs (i, j), i < j, that share >= k coordinates and >= k-l of the new ones."""
    if not tuples:
        return []
    length = len(tuples[0])
    buckets = defaultdict(list)
    for i, t in enumerate(tuples):
        for positions in itertools.combinations(range(length), k):
            buckets[positions, tuple(t[p] for p in positions)].append(i)
    pairs = set()
    for members in buckets.values():
        for i, j in itertools.combinations(members, 2):
            if (i, j) in pairs:
                continue
            agree = sum(tuples[i][p] == tuples[j][p] for p in range(s, length))
            if agree >= k - l:
                pairs.add((i, j))
    return sorted(pairs)


def extend_family(S_family, n, r, k, l, seed=0, C=None, retry_cap=DEFAULT_RETRY_CAP, parts=None):
    """
    Extend an l-disjoint family on s parts by r new coordinates.

    Every tuple of S_family times [n]^r is kept independently with
    probability 1/(C n^(r-k+l)); then, for each pair sharing at least k
    coordinates of which at least k-l are new, the later tuple is deleted.
    Attempts whose result is below beta*|S|*n^(k-l), beta = 1/(4C), are
    retried with the next random stream.

    Args:
        S_family: CopyFamily, pairwise l-disjoint
        n: Part size
        r: Number of new coordinates (r >= k-l)
        k: Uniformity
        l: Disjointness level of S_family (k >= l >= 0)
        seed: Integer seed or numpy SeedSequence
        C: Sampling constant; None derives it from (r, s, k, l)
        retry_cap: Maximal number of attempts
        parts: Part indices of the new coordinates (default: after S's parts)

    Returns:
        CopyFamily on s+r coordinates; meta holds C, beta, the keep
        probability, the lower bound and the attempt statistics
    """
    log = _get_logger(extend_family)
    s = S_family.length
    if not 0 <= l <= k:
        raise ParameterError(f'need 0 <= l <= k, got l={l}, k={k}')
    if r < k - l:
        raise ParameterError(f'need r >= k - l, got r={r}, k={k}, l={l}')
    if n < 1:
        raise ParameterError(f'part size must be positive, got {n}')
    if l >= 1 and len(S_family) > 1:
        check = verify_pairwise_disjoint(S_family, l)
        if not check.ok:
            raise PreconditionError(f'input family is not {l}-disjoint: pair {check.pair}')

    A = _alteration_constant(r, s, k, l)
    if C is None:
        C = 1 if r == k - l else 2 * A
    if C <= 0:
        raise ParameterError(f'C must be positive, got {C}')
    keep = 1.0 / (C * n ** (r - k + l))
    beta = 1.0 / (4 * C)
    lower_bound = beta * len(S_family) * n ** (k - l)
    if parts is None:
        start = max(S_family.parts) + 1 if S_family.parts else 0
        parts = tuple(range(start, start + r))
    parts = S_family.parts + tuple(parts)
    base = sorted(S_family.tuples)
    allowed = set(base)
    log.info('Extending %d tuples by %d coordinates: C=%s, keep=%.3g, lower bound %.1f',
             len(base), r, C, keep, lower_bound)

    root = _seed_sequence(seed)
    for attempt, stream in enumerate(root.spawn(retry_cap), 1):
        sampled = _sample(base, n, r, keep, stream)
        deleted = set()
        for i, j in _violations(sampled, s, k, l):
            if i not in deleted and j not in deleted:
                deleted.add(j)
        kept = tuple(t for i, t in enumerate(sampled) if i not in deleted)
        log.debug('Attempt %d: sampled %d, deleted %d', attempt, len(sampled), len(deleted))
        if len(kept) >= lower_bound:
            require(all(t[:s] in allowed for t in kept), 'extended tuple leaves the input family')
            require(not _violations(list(kept), s, k, l), 'violations survived the deletion pass')
            meta = {'C': C, 'beta': beta, 'keep_probability': keep, 'lower_bound': lower_bound,
                    'attempts': attempt, 'sampled': len(sampled), 'deleted': len(deleted)}
            log.info('Extended family has %d tuples after %d attempt(s)', len(kept), attempt)
            return CopyFamily(parts, kept, level=0, meta=meta)
        log.warning('Attempt %d gave %d tuples, below %.1f; retrying', attempt, len(kept), lower_bound)
    raise ConstructionError(f'extension stayed below {lower_bound:.1f} tuples in {retry_cap} attempts')


def _next_prime(x):
    p = max(2, x)
    while any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        p += 1
    return p


def _algebraic_family(n, r, k):
    """
    Pairwise k-disjoint tuples from a systematic MDS code: a sum check digit
    modulo n when r <= k+1, a Cauchy matrix over a prime field otherwise
    (keeping only codewords with every value below n).
    """
    tuples = []
    if r <= k + 1:
        for a in itertools.product(range(n), repeat=k):
            word = a + ((sum(a) % n,) if r == k + 1 else ())
            tuples.append(tuple(v + 1 for v in word))
        return tuples, None
    p = _next_prime(max(n, r))
    xs = range(r - k)
    ys = range(r - k, r)
    cauchy = [[pow(x - y, -1, p) for y in ys] for x in xs]
    for a in itertools.product(range(n), repeat=k):
        checks = tuple(sum(c * v for c, v in zip(row, a)) % p for row in cauchy)
        if all(v < n for v in checks):
            tuples.append(tuple(v + 1 for v in a + checks))
    return tuples, p


def disjoint_family(n, r, k, seed=0, deterministic=False, retry_cap=DEFAULT_RETRY_CAP):
    """
    A pairwise k-disjoint family in [n]^r.

    The default route is the random extension of the empty family; the
    deterministic route uses an algebraic code (exactly n^k tuples when
    r <= k+1).

    Returns:
        CopyFamily on parts 0..r-1 with level k
    """
    if not 1 <= k <= r:
        raise ParameterError(f'need 1 <= k <= r, got k={k}, r={r}')
    if deterministic:
        tuples, p = _algebraic_family(n, r, k)
        family = CopyFamily(tuple(range(r)), tuple(tuples), level=k,
                            meta={'design': 'algebraic', 'prime': p})
    else:
        empty = CopyFamily((), ((),), level=0)
        extended = extend_family(empty, n, r, k, 0, seed=seed, retry_cap=retry_cap)
        family = CopyFamily(extended.parts, extended.tuples, level=k,
                            meta=dict(extended.meta, design='random'))
    check = verify_pairwise_disjoint(family, k)
    require(check.ok, 'disjoint family has the overlapping pair %s', check.pair)
    return family


def _placement_order(F, witness):
    I = list(witness.cycle) if isinstance(witness, CycleWitness) else sorted(witness.I)
    return I + sorted(set(F.vertices) - set(I))


def hard_instance(F, witness, n, seed=0, retry_cap=DEFAULT_RETRY_CAP, assume_core=False,
                  oracle_cap=DEFAULT_ORACLE_CAP, node_budget=DEFAULT_NODE_BUDGET):
    """
    Many edge-disjoint copies of a core F in an F-partite host with few
    copies of F overall.

    F is relabelled so the witness set comes first (in cycle order for a
    cycle witness); the copies of S = F[I] come from rs_graph (l=2) or
    rs_simplex (l=s-1) and are extended over the remaining r vertices. On
    output part x corresponds to the original vertex x of F.

    Args:
        F: Normalized core
        witness: CycleWitness or CliqueWitness for F
        n: Part size
        seed: Seed for the extension step
        assume_core: Skip the core check

    Returns:
        PartiteInstance with num_parts = v(F)
    """
    if not F.is_normalized:
        raise PreconditionError('hard_instance needs a normalized hypergraph')
    try:
        validate_witness(F, witness)
    except VerificationError as e:
        raise PreconditionError(f'witness does not fit F: {e}')
    if not assume_core and not is_core(F, node_budget=node_budget):
        raise PreconditionError(f'{F!r} is not a core')
    s = witness.s
    if n < s:
        raise ParameterError(f'part size n={n} is smaller than the witness size {s}')

    order = _placement_order(F, witness)
    new_label = [0] * F.v
    for p, x in enumerate(order):
        new_label[x] = p
    relabelled = F.relabel(new_label)
    r = F.v - s
    q = n // s

    if isinstance(witness, CycleWitness):
        G = shadow(relabelled, 2).subgraph(range(s))
        B = behrend_set(q, s, oracle_cap=oracle_cap)
        base = rs_graph(nx.convert_node_labels_to_integers(G, ordering='sorted'), n, B,
                        cycle=tuple(range(s)))
        l = 2
    else:
        B = behrend_set(q, 3, oracle_cap=oracle_cap)
        base = rs_simplex(s, n, B)
        l = s - 1

    family = extend_family(base.placed, n, r, F.k, l, seed=seed, retry_cap=retry_cap)
    copies = [tuple(t[new_label[x]] for x in F.vertices) for t in family.tuples]
    placed = CopyFamily(tuple(F.vertices), tuple(copies), level=0)
    vertex_copies = [tuple(x * n + v - 1 for x, v in enumerate(c)) for c in copies]
    edge_sets = copy_edge_sets(F, vertex_copies)
    check = verify_edge_disjoint(edge_sets)
    require(check.ok, 'placed copies %s share an edge', check.pair)
    edges = tuple(sorted({e for es in edge_sets for e in es}))

    meta = {
        'seed': int(seed) if not isinstance(seed, np.random.SeedSequence) else None,
        's': s,
        'r': r,
        'l': l,
        'C': family.meta['C'],
        'B': B.to_dict(),
        'permutation': order,
        'construction': 'hard_instance',
        'lemmaPath': 'induced-cycle' if isinstance(witness, CycleWitness) else 'simplex',
        'witness': witness.to_dict(),
        'basePlaced': len(base.placed),
        'lowerBound': family.meta['lower_bound'],
        'F': F.to_dict(),
    }
    instance = PartiteInstance(F.k, n, F.v, edges, placed, meta)
    require(instance.is_partite(), 'hard instance has an edge meeting a part twice')
    require(instance.collapse_map().is_homomorphism(instance.graph, F),
            'collapsing the parts is not a homomorphism onto F')
    logger.info('Hard instance for %r at n=%d: %d edge-disjoint copies, %d edges',
                F, n, len(copies), len(edges))
    return instance


@dataclass(frozen=True)
class AmplifiedInstance:
    """A blowup with its certified edge-disjoint copies of F."""

    graph: KGraph
    copies: Tuple[Tuple[int, ...], ...]
    natural: VertexMap
    homomorphism: VertexMap
    b: int


def amplify_blowup(H, F, N, seed=0, deterministic=False, retry_cap=DEFAULT_RETRY_CAP):
    """
    Blow a hard instance up to about N vertices.

    With b = N // v(H), each placed copy of F in H turns into a k-disjoint
    family of transversal copies inside its b-blowup.

    Args:
        H: PartiteInstance whose parts correspond to the vertices of F
        F: The core
        N: Target vertex count (>= v(H))

    Returns:
        AmplifiedInstance
    """
    hv = H.num_parts * H.n
    if N < hv:
        raise ParameterError(f'N={N} is below v(H)={hv}')
    if H.num_parts != F.v or H.k != F.k:
        raise ParameterError('instance parts do not match the vertices of F')
    phi = H.collapse_map()
    require(phi.is_homomorphism(H.graph, F), 'instance is not homomorphic to F')
    b = N // hv
    G, psi = blowup(H.graph, b)
    base = H.placed_vertex_tuples()
    if b == 1:
        copies = base
    else:
        copies = []
        streams = _seed_sequence(seed).spawn(len(base))
        for h, stream in zip(base, streams):
            family = disjoint_family(b, F.v, F.k, seed=stream, deterministic=deterministic,
                                     retry_cap=retry_cap)
            copies.extend(tuple(h[x] * b + c[x] - 1 for x in F.vertices) for c in family.tuples)
    check = verify_edge_disjoint(copy_edge_sets(F, copies))
    require(check.ok, 'amplified copies %s share an edge', check.pair)
    hom = phi.compose(psi)
    require(hom.is_homomorphism(G, F), 'blowup is not homomorphic to F')
    logger.info('Blowup by %d: %d vertices, %d edge-disjoint copies', b, G.v, len(copies))
    return AmplifiedInstance(G, tuple(copies), psi, hom, b)


@dataclass(frozen=True)
class LiftResult:
    graph: KGraph
    copies: Tuple[Tuple[int, ...], ...]
    embedding: VertexMap


def lift_to_supergraph(host, copies, C, F, node_budget=DEFAULT_NODE_BUDGET):
    """
    Turn copies of a core C into copies of F, where C is a subgraph of F
    and F maps homomorphically onto C.

    The host is blown up v(F) times; F embeds into the v(F)-blowup of C,
    and that embedding is translated into each copy's blowup.

    Args:
        host: KGraph containing the C-copies
        copies: Vertex tuples, coordinate c being the host vertex playing c
        C: The core
        F: The supergraph

    Returns:
        LiftResult with one F-copy per input copy
    """
    if find_homomorphism(C, F, injective=True, node_budget=node_budget) is None:
        raise PreconditionError(f'{C!r} is not a subgraph of {F!r}')
    if find_homomorphism(F, C, node_budget=node_budget) is None:
        raise PreconditionError(f'{F!r} has no homomorphism onto {C!r}')
    b = F.v
    G, _ = blowup(host, b)
    blown, _ = blowup(C, b)
    embedding = find_homomorphism(F, blown, injective=True, node_budget=node_budget)
    require(embedding is not None, 'F does not embed into the blowup of C')

    lifted = []
    for t in copies:
        image = tuple(t[embedding(x) // b] * b + embedding(x) % b for x in F.vertices)
        require(all(tuple(sorted(image[x] for x in e)) in G.edge_set for e in F.edges),
                'lifted copy %s is not in the blowup', image)
        lifted.append(image)
    if verify_edge_disjoint(copy_edge_sets(C, copies)).ok:
        check = verify_edge_disjoint(copy_edge_sets(F, lifted))
        require(check.ok, 'lifted copies %s share an edge', check.pair)
    logger.info('Lifted %d copies of %r to %r', len(lifted), C, F)
    return LiftResult(G, tuple(lifted), embedding)


@dataclass(frozen=True)
class CoreReduction:
    """Hard instance for core(F), lifted back to F when F is not a core."""

    report: object
    instance: PartiteInstance
    graph: KGraph
    copies: Tuple[Tuple[int, ...], ...]
    lifted: bool
    embedding: Optional[VertexMap] = None


def reduce_to_core_instance(F, n, seed=0, retry_cap=DEFAULT_RETRY_CAP, oracle_cap=DEFAULT_ORACLE_CAP,
                            node_budget=DEFAULT_NODE_BUDGET, core_vertex_cap=DEFAULT_CORE_VERTEX_CAP):
    """
    Analyze F, build the hard instance of its core, and lift it to F.

    Copies refer to the vertex labels of F after isolated vertices are removed.

    Returns:
        CoreReduction
    """
    report = analyze(F, core_vertex_cap=core_vertex_cap, node_budget=node_budget)
    if report.k_partite:
        raise PreconditionError(
            f'{F!r} is {F.k}-partite: its removal lemma is polynomial and no hard instance exists')
    instance = hard_instance(report.core, report.witness, n, seed=seed, retry_cap=retry_cap,
                             assume_core=True, oracle_cap=oracle_cap, node_budget=node_budget)
    copies = instance.placed_vertex_tuples()
    if report.is_core_already:
        return CoreReduction(report, instance, instance.graph, tuple(copies), False)
    lift = lift_to_supergraph(instance.graph, copies, report.core, report.graph, node_budget=node_budget)
    return CoreReduction(report, instance, lift.graph, lift.copies, True, lift.embedding)
