"""
Tests for the command line interface
"""

import json
import os
import tempfile

import pytest
from click.testing import CliRunner

from pcw import __version__
from pcw.cli import EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, cli, main

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'proofs')
PEIRCE = '((p -> q) -> p) -> p'


def _invoke(*args):
    return CliRunner().invoke(cli, ['--corpus-dir', CORPUS, '--color', 'never'] + list(args))


def _golden(name):
    return os.path.join(CORPUS, f"{name}.json")


def test_version():
    result = CliRunner().invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_parse():
    result = _invoke('parse', '--logic', 'int', 'p -> q')
    assert result.exit_code == EXIT_OK
    assert result.output.strip() == 'p => q'

    result = _invoke('--format', 'json', 'parse', 'p -> q')
    assert json.loads(result.output)['formula'][0] == 'imp'

    assert _invoke('parse', '--logic', 'modal', 'p /\\ q').exit_code == EXIT_USAGE


def test_check():
    result = _invoke('check', _golden('scp-peirce'))
    assert result.exit_code == EXIT_OK
    assert 'ok: proof checks in scp' in result.output

    # the L(IL) proof uses (ref), which the reachability variant lacks
    result = _invoke('check', '--variant', 'reach', _golden('lil-imp-refl'))
    assert result.exit_code == EXIT_NEGATIVE
    assert 'failed' in result.output


def test_prove():
    result = _invoke('prove', '-c', 'scp', PEIRCE)
    assert result.exit_code == EXIT_OK
    assert '[imp_r] |- ' in result.output

    result = _invoke('prove', '-c', 'scp', 'p -> q')
    assert result.exit_code == EXIT_NEGATIVE
    assert 'no proof in scp' in result.output

    assert _invoke('prove', PEIRCE).exit_code == EXIT_USAGE
    assert _invoke('prove', '-c', 'scp', '--depth', '0', PEIRCE).exit_code == EXIT_USAGE
    assert _invoke('prove', '-c', 'linear', PEIRCE).exit_code == EXIT_USAGE


def test_prove_and_save():
    with tempfile.TemporaryDirectory() as tmp:
        runner = CliRunner()
        result = runner.invoke(cli, ['--corpus-dir', tmp, 'prove', '-c', 'scp', '--save',
                                     'peirce', PEIRCE])
        assert result.exit_code == EXIT_OK
        saved = os.path.join(tmp, 'peirce.json')
        assert os.path.exists(saved)
        assert runner.invoke(cli, ['check', saved]).exit_code == EXIT_OK


def test_translate():
    result = _invoke('translate', '--from', 'lil', '--to', 'nil', _golden('lil-imp-refl'))
    assert result.exit_code == EXIT_OK
    assert 'ok: proof checks in nil' in result.output

    result = _invoke('translate', '--from', 'scp', '--to', 'nil', _golden('scp-peirce'))
    assert result.exit_code == EXIT_USAGE


def test_oracles():
    assert _invoke('valid', '--logic', 'modal', '--frame', 'reflexive',
                   '[]p -> p').exit_code == EXIT_OK
    result = _invoke('valid', '--logic', 'modal', '--bound', '2', '[]p -> p')
    assert result.exit_code == EXIT_NEGATIVE
    assert 'countermodel for []p -> p' in result.output

    result = _invoke('countermodel', '-c', 'scp', 'p -> q')
    assert result.exit_code == EXIT_NEGATIVE
    assert '  p = true' in result.output
    assert '  q = false' in result.output

    assert _invoke('countermodel', 'p -> p').exit_code == EXIT_INCONCLUSIVE
    assert _invoke('countermodel', '--logic', 'int', 'p \\/ ~p').exit_code == EXIT_NEGATIVE


def test_corpus_commands():
    result = _invoke('corpus', 'list')
    assert result.exit_code == EXIT_OK
    assert 'scp-peirce\tscp' in result.output

    result = _invoke('corpus', 'check-all')
    assert result.exit_code == EXIT_OK
    assert 'ok\tnkt-axiom-k\tnkt' in result.output


def test_cache_commands():
    with tempfile.TemporaryDirectory() as tmp:
        cache_file = os.path.join(tmp, 'verdicts.db')
        args = ['--cache-file', cache_file]
        assert _invoke(*args, 'prove', '-c', 'scp', PEIRCE).exit_code == EXIT_OK
        result = _invoke(*args, 'cache', 'stats')
        assert result.exit_code == EXIT_OK
        assert 'entries: 1' in result.output

        assert _invoke(*args, 'cache', 'clear').exit_code == EXIT_OK
        assert 'entries: 0' in _invoke(*args, 'cache', 'stats').output


def test_main_exit_codes():
    with pytest.raises(SystemExit) as excinfo:
        main(['--no-such-option'])
    assert excinfo.value.code == EXIT_USAGE

    with pytest.raises(SystemExit) as excinfo:
        main(['--corpus-dir', CORPUS, 'check', _golden('nkt-axiom-k')])
    assert excinfo.value.code == EXIT_OK
