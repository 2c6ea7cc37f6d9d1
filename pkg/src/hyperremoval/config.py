"""
Run configuration.

Defaults live here as module constants. A RunConfig can be overridden from
the environment (HYPERREMOVAL_<FIELD>, optionally read from a .env file via
python-dotenv); explicit command line flags win over the environment.
"""

import hashlib
import json
import logging
import os
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Tuple

from dotenv import load_dotenv

from hyperremoval import __version__
from hyperremoval.errors import ParameterError

logger = logging.getLogger(__name__)

ENV_PREFIX = 'HYPERREMOVAL_'

DEFAULT_SEED = 0
DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_RETRY_CAP = 8
DEFAULT_ORACLE_CAP = 2_000_000
DEFAULT_CORE_VERTEX_CAP = 16
EXHAUSTIVE_CAP = 64

SCHEMA_VERSION = 1

# Fields that do not change results and are left out of the config hash.
_UNHASHED = ('command', 'input_path', 'output_path', 'workers')

_ENV_FIELDS = {
    'seed': int,
    'n': int,
    'node_budget': int,
    'retry_cap': int,
    'oracle_cap': int,
    'core_vertex_cap': int,
    'workers': int,
    'format': str,
    'deterministic_design': lambda x: x.strip().lower() in ('1', 'true', 'yes', 'on'),
}


@dataclass(frozen=True)
class RunConfig:
    """Settings of one command line run."""

    command: str = 'analyze'
    input_path: Optional[str] = None
    n: int = 30
    n_grid: Tuple[int, ...] = field(default_factory=tuple)
    seed: int = DEFAULT_SEED
    node_budget: int = DEFAULT_NODE_BUDGET
    retry_cap: int = DEFAULT_RETRY_CAP
    oracle_cap: int = DEFAULT_ORACLE_CAP
    core_vertex_cap: int = DEFAULT_CORE_VERTEX_CAP
    output_path: Optional[str] = None
    format: str = 'json'
    deterministic_design: bool = False
    workers: int = 1

    def __post_init__(self):
        for name in ('node_budget', 'retry_cap', 'oracle_cap', 'core_vertex_cap', 'workers'):
            if getattr(self, name) <= 0:
                raise ParameterError(f'{name} must be positive, got {getattr(self, name)}')
        if self.seed < 0:
            raise ParameterError(f'seed must be non-negative, got {self.seed}')
        if self.n <= 0:
            raise ParameterError(f'n must be positive, got {self.n}')
        if self.format not in ('json', 'csv'):
            raise ParameterError(f'format must be json or csv, got {self.format!r}')

    @classmethod
    def from_env(cls, dotenv_path=None, **overrides):
        """
        Build a config from HYPERREMOVAL_* environment variables.

        Args:
            dotenv_path: Optional .env file (default: search upwards from cwd)
            overrides: Explicit values; None values are ignored

        Returns:
            RunConfig
        """
        load_dotenv(dotenv_path)
        values = {}
        for name, parse in _ENV_FIELDS.items():
            raw = os.environ.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                values[name] = parse(raw)
            except ValueError:
                raise ParameterError(f'bad value for {ENV_PREFIX}{name.upper()}: {raw!r}')
            logger.debug('Config %s=%r taken from environment', name, values[name])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_changes(self, **changes):
        return replace(self, **changes)

    def hashed_fields(self):
        data = asdict(self)
        for name in _UNHASHED:
            data.pop(name)
        data['n_grid'] = list(data['n_grid'])
        return data

    def config_hash(self):
        """Return the sha256 of the canonical JSON of the result-affecting fields."""
        payload = json.dumps(self.hashed_fields(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(payload.encode('utf-8')).hexdigest()

    def provenance(self):
        """Header embedded in every command line output."""
        return {
            'tool': 'hyperremoval',
            'version': __version__,
            'schema': SCHEMA_VERSION,
            'seed': self.seed,
            'config_hash': self.config_hash(),
        }
