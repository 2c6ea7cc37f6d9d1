import json

import pandas as pd
import pytest

from hyperremoval.errors import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED
from hyperremoval.hypergraph import KGraph, write_kgraph
from hyperremoval.supermain import REPORT_COLUMNS, build_parser, run, run_report


@pytest.fixture
def triangle_file(tmp_path, triangle):
    path = tmp_path / 'triangle.txt'
    write_kgraph(triangle, path)
    return path


def _read(path):
    with open(path, encoding='utf-8') as f:
        return json.load(f)


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_behrend(tmp_path):
    out = tmp_path / 'b.json'
    assert run(['behrend', '--m', '9', '--t', '3', '--verify', '--out', str(out)]) == EXIT_OK
    document = _read(out)
    assert document['tool'] == 'hyperremoval'
    assert document['behrend']['size'] == 5
    assert document['behrend']['verification'] == 'verified'


def test_analyze(tmp_path, triangle_file):
    out = tmp_path / 'a.json'
    assert run(['analyze', str(triangle_file), '--out', str(out)]) == EXIT_OK
    analysis = _read(out)['analysis']
    assert analysis['witness']['type'] == 'clique'


def test_construct_then_verify(tmp_path, triangle_file):
    instance = tmp_path / 'instance.json'
    checked = tmp_path / 'checked.json'
    assert run(['construct', str(triangle_file), '--n', '12', '--seed', '3',
                '--out', str(instance)]) == EXIT_OK
    document = _read(instance)
    assert document['seed'] == 3
    assert document['lifted'] is None
    assert run(['verify', str(instance), '--out', str(checked)]) == EXIT_OK
    result = _read(checked)
    assert result['passed']
    assert result['count']['count'] == result['placed']


def test_tampered_instance_fails(tmp_path, triangle_file):
    instance = tmp_path / 'instance.json'
    run(['construct', str(triangle_file), '--n', '12', '--out', str(instance)])
    document = _read(instance)
    placed = document['instance']['placed']
    placed.append(placed[0])
    instance.write_text(json.dumps(document))
    assert run(['verify', str(instance), '--out', str(tmp_path / 'c.json')]) == EXIT_VERIFICATION_FAILED


def test_same_seed_same_output(tmp_path, triangle_file):
    first, second = tmp_path / 'one.json', tmp_path / 'two.json'
    for out in (first, second):
        run(['construct', str(triangle_file), '--n', '15', '--seed', '8', '--out', str(out)])
    assert first.read_text() == second.read_text()


def test_report_csv(tmp_path, triangle_file):
    out = tmp_path / 'report.csv'
    plot = tmp_path / 'report.png'
    assert run(['report', str(triangle_file), '--n-grid', '9', '12', '--out', str(out),
                '--plot', str(plot)]) == EXIT_OK
    assert out.read_text().startswith('# tool=hyperremoval')
    frame = pd.read_csv(out, comment='#')
    assert list(frame.columns) == REPORT_COLUMNS
    assert list(frame['n']) == [9, 12]
    assert (frame['total_F_copies'] == frame['placed_edge_disjoint_count']).all()
    assert plot.exists()


def test_report_rows(triangle):
    frame = run_report(triangle, [10])
    row = frame.iloc[0]
    assert row['status'] == 'exact'
    assert row['eps'] == row['placed_edge_disjoint_count'] / 100
    assert row['bound'] == pytest.approx(0.1)


def test_k_partite_input_is_a_usage_error(tmp_path):
    path = tmp_path / 'c4.txt'
    write_kgraph(KGraph.cycle(4), path)
    assert run(['report', str(path), '--n-grid', '10', '--out', str(tmp_path / 'r.csv')]) == EXIT_USAGE


def test_missing_file(tmp_path):
    assert run(['analyze', str(tmp_path / 'nope.txt')]) == EXIT_USAGE


def test_negative_seed_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        run(['behrend', '--m', '9', '--seed', '-1'])
    assert info.value.code == EXIT_USAGE
