"""
Configuration management for pcw
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError

FORMATS = ('text', 'json')
COLOR_MODES = ('auto', 'always', 'never')


def _default_color() -> str:
    mode = os.environ.get('PCW_COLOR', 'auto').lower()
    return mode if mode in COLOR_MODES else 'auto'


@dataclass
class SearchConfig:
    """Backward proof search limits"""
    depth: int = 8
    cr_copies: int = 2
    max_nodes: int = 200000


@dataclass
class OracleConfig:
    """Finite-model oracle bounds"""
    bound: int = 3
    max_bound: int = 4


@dataclass
class OutputConfig:
    """Output format configuration"""
    format: str = 'text'
    pretty: bool = False
    color: str = field(default_factory=_default_color)


@dataclass
class CorpusConfig:
    """Golden proof corpus location"""
    corpus_dir: str = 'proofs'


@dataclass
class CacheConfig:
    """Verdict cache configuration"""
    enabled: bool = False
    cache_file: str = field(default_factory=lambda: os.path.expanduser('~/.pcw/verdicts.db'))


def _section(data: Dict[str, Any], name: str) -> Dict[str, Any]:
    value = data.get(name) or {}
    if not isinstance(value, dict):
        raise ConfigError(f"section '{name}' must be a mapping")
    return value


def _int(section: Dict[str, Any], key: str, default: int, minimum: int) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{key}' must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"'{key}' must be at least {minimum}, got {value}")
    return value


def _choice(value: str, choices: tuple, key: str) -> str:
    if value not in choices:
        raise ConfigError(f"'{key}' must be one of {', '.join(choices)}, got {value!r}")
    return value


@dataclass
class Config:
    """Main configuration class"""
    search: SearchConfig = field(default_factory=SearchConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    cache: CacheConfig = field(default_factory=CacheConfig)

    verbose: bool = False
    quiet: bool = False
    log_file: Optional[str] = None
    config_file: Optional[str] = None

    @classmethod
    def from_file(cls, config_file: str) -> 'Config':
        """Load configuration from YAML file"""
        try:
            with open(config_file, 'r') as f:
                data = yaml.safe_load(f) or {}
        except OSError as e:
            raise ConfigError(f"cannot read {config_file}: {e}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML in {config_file}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{config_file} must contain a mapping")

        config = cls(config_file=config_file)

        if 'search' in data:
            search_data = _section(data, 'search')
            config.search = SearchConfig(
                depth=_int(search_data, 'depth', 8, 1),
                cr_copies=_int(search_data, 'cr_copies', 2, 2),
                max_nodes=_int(search_data, 'max_nodes', 200000, 1)
            )

        if 'oracle' in data:
            oracle_data = _section(data, 'oracle')
            config.oracle = OracleConfig(
                bound=_int(oracle_data, 'bound', 3, 1),
                max_bound=_int(oracle_data, 'max_bound', 4, 1)
            )
            if config.oracle.bound > config.oracle.max_bound:
                raise ConfigError(f"oracle bound {config.oracle.bound} exceeds "
                                  f"max_bound {config.oracle.max_bound}")

        if 'output' in data:
            output_data = _section(data, 'output')
            config.output = OutputConfig(
                format=_choice(output_data.get('format', 'text'), FORMATS, 'format'),
                pretty=bool(output_data.get('pretty', False)),
                color=_choice(output_data.get('color', config.output.color), COLOR_MODES,
                              'color')
            )

        if 'corpus' in data:
            corpus_data = _section(data, 'corpus')
            config.corpus = CorpusConfig(
                corpus_dir=str(corpus_data.get('corpus_dir', 'proofs'))
            )

        if 'cache' in data:
            cache_data = _section(data, 'cache')
            config.cache = CacheConfig(
                enabled=bool(cache_data.get('enabled', False)),
                cache_file=os.path.expanduser(
                    str(cache_data.get('cache_file', config.cache.cache_file)))
            )

        config.verbose = bool(data.get('verbose', False))
        config.quiet = bool(data.get('quiet', False))
        config.log_file = data.get('log_file')

        return config

    @classmethod
    def from_cli_args(cls, **kwargs: Any) -> 'Config':
        """Create configuration from CLI arguments"""
        if kwargs.get('config_file'):
            config = cls.from_file(kwargs['config_file'])
        else:
            config = cls()

        # Search options
        if kwargs.get('depth') is not None:
            config.search.depth = _int(kwargs, 'depth', 8, 1)
        if kwargs.get('max_nodes') is not None:
            config.search.max_nodes = _int(kwargs, 'max_nodes', 200000, 1)

        # Oracle options
        if kwargs.get('bound') is not None:
            config.oracle.bound = _int(kwargs, 'bound', 3, 1)

        # Output options
        if kwargs.get('output_format'):
            config.output.format = _choice(kwargs['output_format'], FORMATS, 'format')
        if kwargs.get('pretty'):
            config.output.pretty = kwargs['pretty']
        if kwargs.get('color'):
            config.output.color = _choice(kwargs['color'], COLOR_MODES, 'color')

        # Corpus options
        if kwargs.get('corpus_dir'):
            config.corpus.corpus_dir = kwargs['corpus_dir']

        # Cache options
        if kwargs.get('no_cache'):
            config.cache.enabled = False
        elif kwargs.get('cache_file'):
            config.cache.enabled = True
            config.cache.cache_file = kwargs['cache_file']

        # Other options
        if kwargs.get('verbose'):
            config.verbose = kwargs['verbose']
        if kwargs.get('quiet'):
            config.quiet = kwargs['quiet']
        if kwargs.get('log_file'):
            config.log_file = kwargs['log_file']

        return config

    def ensure_directories(self) -> None:
        """Ensure necessary directories exist"""
        directories = []
        if self.cache.enabled:
            directories.append(os.path.dirname(self.cache.cache_file))
        if self.log_file:
            directories.append(os.path.dirname(self.log_file))

        for directory in directories:
            if directory:
                Path(directory).mkdir(parents=True, exist_ok=True)
