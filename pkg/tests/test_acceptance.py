"""End-to-end checks with exact counts at finite n."""

import itertools
import json

import numpy as np
import pytest

from hyperremoval.behrend import behrend_set, max_solution_free_bruteforce, verify_solution_free
from hyperremoval.constructions import CopyFamily, PartiteInstance, amplify_blowup, copy_edge_sets, \
    disjoint_family, extend_family, hard_instance, lift_to_supergraph, rs_graph, rs_simplex
from hyperremoval.counting import count_canonical_copies, count_copies, enumerate_copies, \
    verify_edge_disjoint, verify_pairwise_disjoint
from hyperremoval.homomorphism import HomSearch, are_isomorphic, automorphism_count, core, \
    core_bruteforce
from hyperremoval.hypergraph import KGraph, is_k_partite, random_kgraph
from hyperremoval.structure_analysis import CliqueWitness, CycleWitness, analyze, find_witness, \
    random_cores, search_cycle_cores, validate_witness
from hyperremoval.supermain import run


def _check_hard_instance(F, inst):
    n = inst.n
    copies = inst.placed_vertex_tuples()
    assert verify_edge_disjoint(copy_edge_sets(F, copies)).ok
    phi = inst.collapse_map()
    assert all(phi.image_edge(e) in F.edge_set for e in inst.graph.edges)
    report = count_copies(inst.graph, F)
    assert not report.exceeded
    assert len(copies) <= report.count <= n ** (F.v - 1)
    return report


@pytest.mark.parametrize('n', [30, 99])
def test_graph_copies_from_a_behrend_set(triangle, n):
    B = behrend_set(n // 3, 3)
    inst = rs_graph(triangle, n, B)
    assert len(inst.placed) == (n // 3) * B.size
    canonical = count_canonical_copies(inst, triangle)
    assert canonical == len(inst.placed)
    assert canonical <= n ** 2
    assert verify_pairwise_disjoint(inst.placed, 2).ok


def test_simplex_has_no_other_copies(k4_3):
    inst = rs_simplex(4, 40, behrend_set(10, 3))
    assert count_copies(inst.graph, k4_3).count == len(inst.placed)
    assert verify_pairwise_disjoint(inst.placed, 3).ok


def test_extension_over_many_seeds():
    base = rs_graph(KGraph.complete(2, 3), 30, behrend_set(10, 3)).placed
    above = 0
    for seed in range(20):
        family = extend_family(base, 30, 1, 3, 2, seed=seed, C=6)
        allowed = set(base.tuples)
        assert all(t[:3] in allowed for t in family.tuples)
        for a, b in itertools.combinations(family.tuples, 2):
            if sum(x == y for x, y in zip(a, b)) >= 3:
                assert a[3] != b[3]
        if family.meta['attempts'] == 1:
            above += 1
    assert above >= 18


def test_disjoint_family_sizes():
    family = disjoint_family(10, 3, 2, seed=1)
    assert len(family) >= family.meta['beta'] * 100
    assert verify_pairwise_disjoint(family, 2).ok
    assert len(disjoint_family(10, 3, 2, deterministic=True)) == 100


@pytest.mark.slow
def test_simplex_path_end_to_end(k4_3):
    report = analyze(k4_3)
    assert report.witness == CliqueWitness((0, 1, 2, 3), 4)
    inst = hard_instance(report.core, report.witness, 40)
    _check_hard_instance(k4_3, inst)


def test_cycle_path_end_to_end_for_graphs(c5, triangle):
    witness = analyze(c5).witness
    assert isinstance(witness, CycleWitness)
    inst = hard_instance(c5, witness, 50)
    assert verify_edge_disjoint(copy_edge_sets(c5, inst.placed_vertex_tuples())).ok
    assert count_canonical_copies(inst, c5) <= 50 ** 4

    assert analyze(triangle).witness.s == 3
    inst = hard_instance(triangle, analyze(triangle).witness, 60)
    assert count_copies(inst.graph, triangle).count == len(inst.placed)


@pytest.mark.slow
def test_cycle_path_exists_for_3_graphs():
    F, witness = next(search_cycle_cores(3, 7))
    assert analyze(F).lemma_path == 'induced-cycle'
    inst = hard_instance(F, witness, 20, assume_core=True)
    _check_hard_instance(F, inst)


@pytest.mark.slow
def test_every_random_core_gets_a_valid_witness():
    cores = random_cores(2, 100, 7, seed=0) + random_cores(3, 100, 7, seed=1)
    for F in cores:
        witness = find_witness(F, assume_core=True)
        validate_witness(F, witness)


def _corpus():
    rng = np.random.default_rng(2024)
    corpus = []
    for k, p in ((2, 0.5), (3, 0.3)):
        while sum(F.k == k for F in corpus) < 25:
            F, _ = random_kgraph(k, int(rng.integers(k + 1, 7)), p, rng).normalize()
            if F.num_edges and F.num_edges <= 9:
                corpus.append(F)
    return corpus


@pytest.mark.slow
def test_core_matches_the_exhaustive_oracle():
    for F in _corpus():
        found = core(F).core
        assert are_isomorphic(found, core_bruteforce(F))
        assert (is_k_partite(F) is not None) == (found.num_edges == 1)


@pytest.mark.slow
def test_every_small_behrend_set_verifies():
    for m in range(1, 201):
        assert verify_solution_free(behrend_set(m, 3).elements, 3, m)
    for m in (10, 50, 120):
        assert verify_solution_free(behrend_set(m, 4).elements, 4, m)


def test_half_of_the_maximum_at_nine():
    best, _ = max_solution_free_bruteforce(9, 3)
    assert 2 * behrend_set(9, 3).size >= best


def _check_blowup(H, F, b):
    blown = amplify_blowup(H, F, b * H.num_parts * H.n, deterministic=True)
    assert blown.b == b
    H_copies = enumerate_copies(H.graph, F)
    G_copies = enumerate_copies(blown.graph, F)
    assert len(G_copies) <= len(H_copies) * b ** F.v
    for copy in G_copies:
        assert frozenset(blown.natural.image_edge(e) for e in copy) in H_copies


def test_blowup_and_lift_counts(triangle, pendant_triangle):
    H = PartiteInstance(2, 1, 3, triangle.edges, CopyFamily((0, 1, 2), ((1, 1, 1),)))
    for b in (2, 3, 4):
        _check_blowup(H, triangle, b)
    _check_blowup(hard_instance(triangle, CliqueWitness((0, 1, 2), 3), 3), triangle, 2)

    host = KGraph(2, 5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    lift = lift_to_supergraph(host, [(0, 1, 2), (2, 3, 4)], triangle, pendant_triangle)
    assert verify_edge_disjoint(copy_edge_sets(pendant_triangle, lift.copies)).ok
    # Every copy in the blowup projects to a homomorphism into the host, and
    # each homomorphism lifts to at most b^v(F) embeddings.
    b = v = pendant_triangle.v
    homs = HomSearch(pendant_triangle, host).count()
    lifted = enumerate_copies(lift.graph, pendant_triangle)
    assert len(lift.copies) <= len(lifted) <= homs * b ** v // automorphism_count(pendant_triangle)


def test_construct_is_byte_identical(tmp_path, triangle):
    source = tmp_path / 'F.txt'
    source.write_text(triangle.to_text())
    outputs = []
    for name in ('a.json', 'b.json'):
        out = tmp_path / name
        assert run(['construct', str(source), '--seed', '42', '--n', '20', '--out', str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    document = json.loads(outputs[0])
    assert document['seed'] == 42
    assert PartiteInstance.from_dict(document['instance']).to_dict() == document['instance']
