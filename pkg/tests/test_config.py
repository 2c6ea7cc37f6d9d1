import pytest

from hyperremoval import __version__
from hyperremoval.config import DEFAULT_NODE_BUDGET, SCHEMA_VERSION, RunConfig
from hyperremoval.errors import ParameterError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ('SEED', 'N', 'NODE_BUDGET', 'WORKERS', 'DETERMINISTIC_DESIGN', 'FORMAT'):
        monkeypatch.delenv(f'HYPERREMOVAL_{name}', raising=False)


def test_defaults(tmp_path):
    config = RunConfig.from_env(tmp_path / 'missing.env')
    assert config.seed == 0
    assert config.node_budget == DEFAULT_NODE_BUDGET
    assert not config.deterministic_design


def test_environment_and_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv('HYPERREMOVAL_SEED', '7')
    monkeypatch.setenv('HYPERREMOVAL_DETERMINISTIC_DESIGN', 'yes')
    config = RunConfig.from_env(tmp_path / 'missing.env', n=12, seed=None)
    assert config.seed == 7
    assert config.n == 12
    assert config.deterministic_design
    assert RunConfig.from_env(tmp_path / 'missing.env', seed=3).seed == 3


def test_dotenv_file(monkeypatch, tmp_path):
    # Registered first so teardown also drops what load_dotenv writes.
    monkeypatch.setenv('HYPERREMOVAL_WORKERS', '1')
    monkeypatch.delenv('HYPERREMOVAL_WORKERS')
    dotenv = tmp_path / '.env'
    dotenv.write_text('HYPERREMOVAL_WORKERS=4\n')
    assert RunConfig.from_env(dotenv).workers == 4


def test_bad_values(monkeypatch, tmp_path):
    monkeypatch.setenv('HYPERREMOVAL_SEED', 'seven')
    with pytest.raises(ParameterError):
        RunConfig.from_env(tmp_path / 'missing.env')
    with pytest.raises(ParameterError):
        RunConfig(node_budget=0)
    with pytest.raises(ParameterError):
        RunConfig(format='xml')
    with pytest.raises(ParameterError):
        RunConfig(seed=-1)


def test_hash_ignores_paths_and_workers():
    a = RunConfig(seed=5, input_path='a.txt', workers=1)
    b = RunConfig(seed=5, input_path='b.txt', output_path='out.json', workers=4)
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != a.with_changes(seed=6).config_hash()
    assert len(a.config_hash()) == 64


def test_provenance():
    provenance = RunConfig(seed=9).provenance()
    assert provenance['tool'] == 'hyperremoval'
    assert provenance['version'] == __version__
    assert provenance['schema'] == SCHEMA_VERSION
    assert provenance['seed'] == 9
