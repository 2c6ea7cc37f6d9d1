import numpy as np
import pytest

from hyperremoval.behrend import BehrendSet
from hyperremoval.constructions import CopyFamily, rs_graph
from hyperremoval.counting import count_canonical_copies, count_copies, count_copies_naive, \
    enumerate_copies, verify_edge_disjoint, verify_pairwise_disjoint
from hyperremoval.errors import ParameterError, PreconditionError
from hyperremoval.homomorphism import automorphism_count
from hyperremoval.hypergraph import KGraph, blowup, random_kgraph


@pytest.mark.parametrize('host, expected', [
    (KGraph.complete(2, 3), 1),
    (KGraph.complete(2, 4), 4),
    (blowup(KGraph.complete(2, 3), 2)[0], 8),
])
def test_triangle_counts(triangle, host, expected):
    report = count_copies(host, triangle)
    assert report.count == expected
    assert report.status == 'exact'
    assert report.count * report.automorphisms == report.labeled


def test_copies_carry_their_own_edges():
    # C4 has one copy in K4 per cyclic order of the four vertices.
    assert count_copies(KGraph.complete(2, 4), KGraph.cycle(4)).count == 3
    assert len(enumerate_copies(KGraph.complete(2, 4), KGraph.cycle(4))) == 3


def test_k4_3_in_k5_3(k4_3):
    assert count_copies(KGraph.complete(3, 5), k4_3).count == 5


def test_budget_exceeded_is_flagged(triangle):
    report = count_copies(KGraph.complete(2, 8), triangle, node_budget=5)
    assert report.exceeded
    assert report.count is None
    assert report.to_dict()['status'] == 'cap_exceeded'


def test_count_preconditions(triangle, k4_3):
    with pytest.raises(ParameterError):
        count_copies(k4_3, triangle)
    with pytest.raises(PreconditionError):
        count_copies(KGraph.complete(2, 4), KGraph(2, 4, [(0, 1), (1, 2), (0, 2)]))


def test_worker_count_does_not_change_the_report(c5):
    host = random_kgraph(2, 9, 0.6, np.random.default_rng(3))
    one = count_copies(host, c5, workers=1)
    two = count_copies(host, c5, workers=2)
    assert one.to_dict() == two.to_dict()


def test_worker_count_does_not_change_a_capped_report(c5):
    host = KGraph.complete(2, 9)
    one = count_copies(host, c5, node_budget=3000, workers=1)
    two = count_copies(host, c5, node_budget=3000, workers=2)
    assert one.exceeded and two.exceeded
    assert one.to_dict() == two.to_dict()
    assert one.nodes == 3001


@pytest.mark.parametrize('seed', range(6))
def test_matches_naive_counter(seed, triangle, c5, k4_3):
    rng = np.random.default_rng(seed)
    graph = random_kgraph(2, 8, 0.5, rng)
    hyper = random_kgraph(3, 7, 0.4, rng)
    for host, F in [(graph, triangle), (graph, c5), (graph, KGraph.cycle(4)), (hyper, k4_3)]:
        assert count_copies(host, F).count == count_copies_naive(host, F)


def test_canonical_copies_of_rs_graph(triangle):
    B = BehrendSet(3, 3, (1, 2), 'external', 'verified')
    inst = rs_graph(triangle, 9, B)
    canonical = count_canonical_copies(inst, triangle)
    assert canonical == 6
    assert canonical <= count_copies(inst.graph, triangle).count * automorphism_count(triangle)


def test_canonical_copies_of_empty_instance(triangle):
    inst = rs_graph(triangle, 9, BehrendSet(3, 3, (), 'external', 'verified'))
    assert count_canonical_copies(inst, triangle) == 0


def test_canonical_copies_need_enough_parts(triangle):
    inst = rs_graph(triangle, 9, BehrendSet(3, 3, (1,), 'external', 'verified'))
    with pytest.raises(ParameterError):
        count_canonical_copies(inst, KGraph.cycle(4))


def test_pairwise_disjoint():
    same = CopyFamily((0, 1, 2), ((1, 2, 3), (1, 2, 3)))
    assert verify_pairwise_disjoint(same, 3).pair == (0, 1)
    family = CopyFamily((0, 1, 2), ((1, 2, 3), (1, 4, 5), (2, 2, 5), (1, 4, 6)))
    assert verify_pairwise_disjoint(family, 2).pair == (1, 3)
    assert verify_pairwise_disjoint(family, 3).ok
    assert not verify_pairwise_disjoint(family, 1).ok


def test_edge_disjoint():
    result = verify_edge_disjoint([[(0, 1), (1, 2)], [(3, 4)], [(2, 1), (5, 6)]])
    assert not result.ok
    assert result.pair == (0, 2)
    assert result.shared == (1, 2)
    assert verify_edge_disjoint([[(0, 1), (1, 2), (0, 2)]]).ok
