#!/usr/bin/env python3
"""
Tests for pcw configuration
"""

import os
import tempfile

import pytest

from pcw.config import Config
from pcw.errors import ConfigError


def _write_yaml(content):
    with tempfile.NamedTemporaryFile(mode='w', suffix='.yaml', delete=False) as f:
        f.write(content)
        return f.name


def test_defaults():
    """Test default configuration"""
    config = Config()
    assert config.search.depth == 8
    assert config.search.cr_copies == 2
    assert config.oracle.bound == 3
    assert config.oracle.max_bound == 4
    assert config.output.format == 'text'
    assert config.corpus.corpus_dir == 'proofs'
    assert config.cache.enabled is False
    assert config.cache.cache_file.endswith('.pcw/verdicts.db')


def test_cli_args():
    """Test configuration from CLI arguments"""
    config = Config.from_cli_args(depth=12, bound=2, output_format='json', pretty=True,
                                  corpus_dir='/tmp/golden', verbose=True)
    assert config.search.depth == 12
    assert config.oracle.bound == 2
    assert config.output.format == 'json'
    assert config.output.pretty is True
    assert config.corpus.corpus_dir == '/tmp/golden'
    assert config.verbose is True


def test_cli_cache_flags():
    config = Config.from_cli_args(cache_file='/tmp/pcw-test/verdicts.db')
    assert config.cache.enabled is True
    assert config.cache.cache_file == '/tmp/pcw-test/verdicts.db'

    config = Config.from_cli_args(cache_file='/tmp/pcw-test/verdicts.db', no_cache=True)
    assert config.cache.enabled is False


def test_yaml_config():
    """Test YAML configuration loading"""
    temp_yaml = _write_yaml("""
search:
  depth: 10
  cr_copies: 3

oracle:
  bound: 2
  max_bound: 3

output:
  format: json
  pretty: true
  color: never

corpus:
  corpus_dir: golden

verbose: true
""")
    try:
        config = Config.from_file(temp_yaml)
        assert config.search.depth == 10
        assert config.search.cr_copies == 3
        assert config.oracle.bound == 2
        assert config.oracle.max_bound == 3
        assert config.output.format == 'json'
        assert config.output.pretty is True
        assert config.output.color == 'never'
        assert config.corpus.corpus_dir == 'golden'
        assert config.verbose is True
        assert config.config_file == temp_yaml
    finally:
        os.unlink(temp_yaml)


def test_cli_overrides_file():
    temp_yaml = _write_yaml("search:\n  depth: 10\n")
    try:
        config = Config.from_cli_args(config_file=temp_yaml, depth=4)
        assert config.search.depth == 4
    finally:
        os.unlink(temp_yaml)


def test_empty_file():
    temp_yaml = _write_yaml("")
    try:
        config = Config.from_file(temp_yaml)
        assert config.search.depth == 8
    finally:
        os.unlink(temp_yaml)


@pytest.mark.parametrize('content', [
    "search:\n  depth: zero\n",
    "search:\n  cr_copies: 1\n",
    "oracle:\n  bound: 4\n  max_bound: 3\n",
    "output:\n  format: xml\n",
    "output: [1, 2]\n",
    "- just\n- a list\n",
    "search: {depth: [\n",
])
def test_invalid_config(content):
    temp_yaml = _write_yaml(content)
    try:
        with pytest.raises(ConfigError):
            Config.from_file(temp_yaml)
    finally:
        os.unlink(temp_yaml)


def test_missing_file():
    with pytest.raises(ConfigError):
        Config.from_file('/nonexistent/pcw.yaml')


def test_invalid_cli_values():
    with pytest.raises(ConfigError):
        Config.from_cli_args(depth=0)
    with pytest.raises(ConfigError):
        Config.from_cli_args(output_format='yaml')


def test_ensure_directories():
    with tempfile.TemporaryDirectory() as tmp:
        config = Config.from_cli_args(cache_file=os.path.join(tmp, 'cache', 'v.db'),
                                      log_file=os.path.join(tmp, 'logs', 'pcw.log'))
        config.ensure_directories()
        assert os.path.isdir(os.path.join(tmp, 'cache'))
        assert os.path.isdir(os.path.join(tmp, 'logs'))
