"""
Homomorphism search, isomorphism testing and cores of k-graphs.

The backtracking engine `HomSearch` is shared with the counting module:
source vertices are placed one at a time in a fixed order (largest
2-shadow degree first, then the vertex with most already-placed
neighbours), candidate images are kept as integer bitsets over the target
vertices, and every partially placed edge must map onto a face of some
target edge. The first map found is always the same for the same input.
"""

import itertools
import logging
from dataclasses import dataclass

from hyperremoval.config import DEFAULT_CORE_VERTEX_CAP, DEFAULT_NODE_BUDGET
from hyperremoval.errors import BudgetExceededError, ParameterError, PreconditionError, require
from hyperremoval.hypergraph import KGraph, VertexMap

logger = logging.getLogger(__name__)

__all__ = [
    'HomSearch', 'CoreResult', 'find_homomorphism', 'iter_homomorphisms',
    'are_isomorphic', 'automorphism_count', 'core', 'is_core',
    'core_bruteforce', 'check_core_rigidity',
]


def iter_bits(mask):
    """Yield the positions of the set bits of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def search_order(source):
    """Placement order: largest shadow degree first, then most placed neighbours."""
    remaining = set(source.vertices)
    order = []
    placed = set()
    while remaining:
        x = max(remaining, key=lambda y: (len(source.neighbors(y) & placed),
                                          source.shadow_degree(y), source.degree(y), -y))
        order.append(x)
        placed.add(x)
        remaining.remove(x)
    return order


class HomSearch:
    """
    Backtracking search for homomorphisms source -> target.

    Args:
        source: KGraph to map
        target: KGraph mapped into
        injective: Only injective maps (embeddings)
        domains: Optional list of bitsets, one per source vertex, restricting
                 its possible images (used for partite counting)
        node_budget: Maximal number of placement attempts, None for no limit
    """

    def __init__(self, source, target, injective=False, domains=None, node_budget=None):
        if source.k != target.k:
            raise ParameterError(f'uniformity mismatch: {source.k} vs {target.k}')
        self.source = source
        self.target = target
        self.injective = injective
        self.node_budget = node_budget
        self.nodes = 0

        self.order = search_order(source)
        position = {x: i for i, x in enumerate(self.order)}
        self.faces = {f for e in target.edges for size in range(2, target.k + 1)
                      for f in itertools.combinations(e, size)}
        self.bits = target.shadow_bits()

        covered = 0
        for x in target.vertices:
            if target.incident(x):
                covered |= 1 << x
        everything = (1 << target.v) - 1
        self.domains = []
        for x in source.vertices:
            mask = covered if source.incident(x) else everything
            if domains is not None:
                mask &= domains[x]
            if injective:
                mask &= self._degree_mask(x)
            self.domains.append(mask)

        # Neighbours placed earlier, and partially placed edges to check, per position.
        self.prior = []
        self.checks = []
        for i, x in enumerate(self.order):
            self.prior.append([y for y in source.neighbors(x) if position[y] < i])
            partial = set()
            for e in source.incident(x):
                placed = tuple(y for y in e if position[y] <= i)
                if len(placed) >= 2:
                    partial.add(placed)
            self.checks.append(sorted(partial))
        self.image = [-1] * source.v

    def _degree_mask(self, x):
        need_deg, need_shadow = self.source.degree(x), self.source.shadow_degree(x)
        mask = 0
        for y in self.target.vertices:
            if self.target.degree(y) >= need_deg and self.target.shadow_degree(y) >= need_shadow:
                mask |= 1 << y
        return mask

    def candidates(self, i, used):
        x = self.order[i]
        mask = self.domains[x]
        for y in self.prior[i]:
            mask &= self.bits[self.image[y]]
        if self.injective:
            mask &= ~used
        return mask

    def consistent(self, i):
        image = self.image
        for placed in self.checks[i]:
            mapped = tuple(sorted(image[y] for y in placed))
            if mapped not in self.faces:
                return False
        return True

    def _tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExceededError(
                f'homomorphism search exceeded its node budget of {self.node_budget}',
                limit=self.node_budget, used=self.nodes)

    def root_candidates(self):
        """Images the first placed vertex may take."""
        return list(iter_bits(self.candidates(0, 0))) if self.order else []

    def __iter__(self):
        """Yield every homomorphism as a tuple (image of vertex 0, 1, ...)."""
        if not self.order:
            yield ()
            return
        yield from self._walk(0, 0)

    def _walk(self, i, used):
        x = self.order[i]
        last = i + 1 == len(self.order)
        for y in iter_bits(self.candidates(i, used)):
            self._tick()
            self.image[x] = y
            if not self.consistent(i):
                continue
            if last:
                yield tuple(self.image)
            else:
                yield from self._walk(i + 1, used | (1 << y))
        self.image[x] = -1

    def count(self, root=None):
        """
        Count homomorphisms, optionally only those sending the first placed
        vertex to `root`.
        """
        if not self.order:
            return 1
        return self._count(0, 0, root)

    def _count(self, i, used, root=None):
        x = self.order[i]
        last = i + 1 == len(self.order)
        mask = self.candidates(i, used)
        if root is not None:
            mask &= 1 << root
        total = 0
        for y in iter_bits(mask):
            self._tick()
            self.image[x] = y
            if not self.consistent(i):
                continue
            total += 1 if last else self._count(i + 1, used | (1 << y))
        self.image[x] = -1
        return total


def find_homomorphism(source, target, injective=False, node_budget=DEFAULT_NODE_BUDGET):
    """
    Find a homomorphism source -> target.

    Args:
        source: KGraph F1
        target: KGraph F2 of the same uniformity
        injective: Require an injective map
        node_budget: Search node limit (BudgetExceededError beyond it)

    Returns:
        VertexMap, or None if no homomorphism exists (the search is complete)
    """
    search = HomSearch(source, target, injective=injective, node_budget=node_budget)
    for image in search:
        phi = VertexMap(source.v, target.v, image)
        require(phi.is_homomorphism(source, target), 'search returned a non-homomorphism')
        return phi
    return None


def iter_homomorphisms(source, target, injective=False, node_budget=None):
    """Yield every homomorphism source -> target as a VertexMap."""
    for image in HomSearch(source, target, injective=injective, node_budget=node_budget):
        yield VertexMap(source.v, target.v, image)


def _invariants(F):
    return (F.k, F.v, F.num_edges,
            sorted(F.degree(x) for x in F.vertices),
            sorted(F.shadow_degree(x) for x in F.vertices))


def are_isomorphic(F1, F2, node_budget=DEFAULT_NODE_BUDGET):
    """Isomorphism test: degree-sequence prefilter, then injective maps both ways."""
    if _invariants(F1) != _invariants(F2):
        return False
    forward = find_homomorphism(F1, F2, injective=True, node_budget=node_budget)
    if forward is None:
        return False
    return find_homomorphism(F2, F1, injective=True, node_budget=node_budget) is not None


def automorphism_count(F, node_budget=DEFAULT_NODE_BUDGET):
    """|Aut(F)|, counted as the injective homomorphisms F -> F."""
    return HomSearch(F, F, injective=True, node_budget=node_budget).count()


@dataclass(frozen=True)
class CoreResult:
    """
    The core of F.

    Attributes:
        core: The core, relabelled densely
        retraction: Homomorphism from F onto the core's vertices
        embedding: core vertex -> F vertex, exhibiting the core as a subgraph of F
    """

    core: KGraph
    retraction: VertexMap
    embedding: tuple

    @property
    def is_single_edge(self):
        return self.core.num_edges == 1


def _image_subgraph(graph, phi):
    """The hom-image of graph under phi, relabelled densely, plus the relabelling."""
    image_edges = {phi.image_edge(e) for e in graph.edges}
    kept = sorted({x for e in image_edges for x in e})
    position = {x: i for i, x in enumerate(kept)}
    sub = KGraph(graph.k, len(kept), [tuple(position[x] for x in e) for e in image_edges])
    step = VertexMap(graph.v, len(kept), tuple(position[phi(x)] for x in graph.vertices))
    return sub, step, kept


def _require_normalized(F, what):
    if not F.is_normalized:
        raise PreconditionError(f'{what} needs a hypergraph without isolated vertices; call normalize() first')


def core(F, core_vertex_cap=DEFAULT_CORE_VERTEX_CAP, node_budget=DEFAULT_NODE_BUDGET):
    """
    Compute the core of F by iterated retraction.

    Each round first tries to fold F onto itself minus one vertex (lowest
    shadow degree first); when no vertex can be removed it tries every
    single-edge deletion, which is exhaustive: a homomorphism into a proper
    sub-edge-set lands inside F minus some edge. Stops at the fixpoint.

    Args:
        F: Normalized KGraph
        core_vertex_cap: Largest vertex count the exhaustive phase accepts
        node_budget: Node budget for each homomorphism search

    Returns:
        CoreResult
    """
    _require_normalized(F, 'core()')
    current = F
    retraction = VertexMap.identity(F.v)
    embedding = tuple(F.vertices)
    while current.num_edges > 1:
        phi = None
        for x in sorted(current.vertices, key=lambda y: (current.shadow_degree(y), y)):
            target = current.with_edges([e for e in current.edges if x not in e])
            phi = find_homomorphism(current, target, node_budget=node_budget)
            if phi is not None:
                logger.debug('Folded vertex %d away (%d edges left)', x, target.num_edges)
                break
        if phi is None:
            if current.v > core_vertex_cap:
                raise BudgetExceededError(
                    f'core search needs the exhaustive phase on {current.v} vertices '
                    f'(cap {core_vertex_cap})', limit=core_vertex_cap, used=current.v)
            for e in current.edges:
                phi = find_homomorphism(current, current.without_edge(e), node_budget=node_budget)
                if phi is not None:
                    break
        if phi is None:
            break
        current, step, kept = _image_subgraph(current, phi)
        retraction = step.compose(retraction)
        embedding = tuple(embedding[x] for x in kept)

    result = CoreResult(current, retraction, embedding)
    require(retraction.is_homomorphism(F, current), 'retraction is not a homomorphism onto the core')
    require(all(tuple(sorted(embedding[x] for x in e)) in F.edge_set for e in current.edges),
            'core is not a subgraph of F under its embedding')
    logger.info('Core of %r has %d vertices and %d edges', F, current.v, current.num_edges)
    return result


def is_core(F, node_budget=DEFAULT_NODE_BUDGET):
    """True iff no homomorphism maps F into a proper subset of its edges."""
    _require_normalized(F, 'is_core()')
    for e in F.edges:
        if find_homomorphism(F, F.without_edge(e), node_budget=node_budget) is not None:
            return False
    return True


def core_bruteforce(F):
    """
    Exhaustive core oracle: the first edge subset, by size then lexicographic
    order, that receives a homomorphism from F. Meant for tiny inputs.

    Returns:
        The core as a normalized KGraph
    """
    for size in range(1, F.num_edges + 1):
        for subset in itertools.combinations(F.edges, size):
            sub = F.with_edges(subset)
            if find_homomorphism(F, sub, node_budget=None) is not None:
                return sub.normalize()[0]
    return F


def check_core_rigidity(host, F, phi, node_budget=DEFAULT_NODE_BUDGET):
    """
    For a core F and a homomorphism phi: host -> F, check that phi restricted
    to every copy of F in host is an isomorphism onto F.

    Copies carry their own edge sets: an embedding psi of F into host gives
    the copy psi(E(F)), and phi maps it onto E(F) bijectively exactly when
    phi ∘ psi is an automorphism of F.

    Returns:
        Number of distinct copies checked
    """
    if not phi.is_homomorphism(host, F):
        raise ParameterError('phi is not a homomorphism from host to F')
    seen = set()
    for psi in iter_homomorphisms(F, host, injective=True, node_budget=node_budget):
        copy = frozenset(psi.image_edge(e) for e in F.edges)
        if copy in seen:
            continue
        seen.add(copy)
        composite = phi.compose(psi)
        require(composite.is_injective and composite.is_homomorphism(F, F),
                'copy %s is not mapped isomorphically onto the core', sorted(copy))
    return len(seen)
