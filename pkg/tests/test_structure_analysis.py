import itertools
import json

import networkx as nx
import pytest

from hyperremoval.errors import ParameterError, PreconditionError, VerificationError
from hyperremoval.homomorphism import is_core
from hyperremoval.hypergraph import KGraph, is_k_partite, shadow
from hyperremoval.structure_analysis import CliqueWitness, CycleWitness, analyze, chordality, \
    find_witness, is_cycle_witness_valid, lex_bfs, max_clique_chordal, random_cores, \
    search_cycle_cores, shortest_induced_cycle, validate_witness


def test_lex_bfs_visits_every_vertex():
    G = nx.path_graph(5)
    order = lex_bfs(G)
    assert sorted(order) == list(range(5))
    assert order[0] == 0


def test_chordal_graph_gets_a_peo():
    result = chordality(nx.complete_graph(4))
    assert result.is_chordal
    assert sorted(result.peo) == [0, 1, 2, 3]


def test_non_chordal_graph_gets_a_chordless_cycle():
    result = chordality(nx.cycle_graph(6))
    assert not result.is_chordal
    assert sorted(result.cycle) == list(range(6))


def test_max_clique_of_chordal_graph():
    G = nx.complete_graph(4)
    G.remove_edge(0, 3)
    clique = max_clique_chordal(G, chordality(G).peo)
    assert len(clique) == 3
    assert all(G.has_edge(a, b) for a, b in itertools.combinations(clique, 2))


def test_max_clique_rejects_bad_ordering():
    G = nx.cycle_graph(4)
    with pytest.raises(ParameterError):
        max_clique_chordal(G, (0, 1, 2, 3))


def test_shortest_induced_cycle_prefers_short_and_small():
    G = nx.disjoint_union(nx.cycle_graph(5), nx.cycle_graph(4))
    assert shortest_induced_cycle(G) == (5, 6, 7, 8)
    assert shortest_induced_cycle(nx.cycle_graph(6)) == (0, 1, 2, 3, 4, 5)
    assert shortest_induced_cycle(nx.complete_graph(5)) is None


def test_cycle_witness_of_c5(c5):
    witness = find_witness(c5)
    assert isinstance(witness, CycleWitness)
    assert witness.I == (0, 1, 2, 3, 4)
    assert witness.cycle == (0, 1, 2, 3, 4)
    assert witness.s == 5


def test_clique_witness_of_triangle(triangle):
    witness = find_witness(triangle)
    assert witness == CliqueWitness(I=(0, 1, 2), s=3)


def test_clique_witness_of_k4_3(k4_3):
    assert find_witness(k4_3) == CliqueWitness(I=(0, 1, 2, 3), s=4)


def test_cycle_witness_of_odd_wheel(odd_wheel):
    witness = find_witness(odd_wheel)
    assert isinstance(witness, CycleWitness)
    assert witness.I == (1, 2, 3, 4, 5)
    assert witness.cycle == (1, 2, 3, 4, 5)


def test_witness_preconditions(pendant_triangle):
    with pytest.raises(PreconditionError):
        find_witness(KGraph.cycle(4))
    with pytest.raises(PreconditionError):
        find_witness(pendant_triangle)


def test_validate_witness_catches_broken_invariants(triangle, k4_3):
    with pytest.raises(VerificationError):
        validate_witness(triangle, CliqueWitness(I=(0, 1), s=2))
    with pytest.raises(VerificationError):
        validate_witness(k4_3, CycleWitness(I=(0, 1, 2, 3), cycle=(0, 1, 2, 3)))


def test_general_cycle_condition_allows_chords():
    F = KGraph(2, 4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    assert is_cycle_witness_valid(F, (0, 1, 2, 3))
    assert not is_cycle_witness_valid(F, (0, 1, 3, 2))


def test_analyze_k_partite():
    report = analyze(KGraph.cycle(4))
    assert report.k_partite
    assert report.lemma_path == 'k-partite'
    assert report.core.num_edges == 1
    assert report.witness is None
    assert report.to_dict()['partition'] == [[0, 2], [1, 3]]


def test_analyze_reduces_to_the_core(pendant_triangle):
    report = analyze(pendant_triangle)
    assert not report.k_partite
    assert not report.is_core_already
    assert report.core.num_edges == 3
    assert report.lemma_path == 'simplex'
    assert report.to_dict()['witness'] == {'type': 'clique', 'I': [0, 1, 2], 's': 3}


def test_analyze_records_isolated_vertices():
    report = analyze(KGraph(2, 4, [(0, 1), (1, 3), (0, 3)]))
    assert report.removed_isolated == (2,)
    assert report.is_core_already


def test_random_cores_are_cores():
    for F in random_cores(2, 5, 6, seed=1):
        assert F.is_normalized
        assert is_k_partite(F) is None
        assert is_core(F)


@pytest.mark.slow
def test_cycle_core_search_finds_a_3_graph():
    F, witness = next(search_cycle_cores(3, 6))
    assert isinstance(witness, CycleWitness)
    assert len(witness.cycle) >= 4
    assert shortest_induced_cycle(shadow(F, 2)) == witness.cycle


def test_report_json(triangle):
    data = json.loads(analyze(triangle).to_json())
    assert data['lemmaPath'] == 'simplex'
    assert data['kPartite'] is False
