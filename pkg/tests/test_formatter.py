"""
Tests for output formatting
"""

import json

from pcw.config import Config
from pcw.formatter import OutputFormatter
from pcw.gentzen import calculus_scp
from pcw.kernel import OPEN, Proof, check
from pcw.models import truth_table_valid
from pcw.syntax import parse, parse_sequent


def _formatter(**kwargs):
    return OutputFormatter(Config.from_cli_args(color='never', **kwargs))


def _small_proof():
    seq = parse_sequent('|- p -> p', 'gentzen', 'cpc')
    return Proof('imp_r', seq, (Proof('id', parse_sequent('p |- p', 'gentzen', 'cpc')),))


def test_proof_lines():
    """Conclusion first, premises indented below"""
    lines = _formatter().proof_lines(_small_proof())
    assert lines == ['[imp_r] |- p -> p', '  [id] p |- p']


def test_report_text():
    formatter = _formatter()
    calc = calculus_scp()
    assert formatter.format_report(check(calc, _small_proof()), 'scp') == \
        'ok: proof checks in scp'

    broken = Proof(OPEN, parse_sequent('p |- q', 'gentzen', 'cpc'))
    text = formatter.format_report(check(calc, broken), 'scp')
    assert text.startswith('failed: 1 node(s)')
    assert 'at root: open leaf' in text


def test_report_json():
    formatter = _formatter(output_format='json')
    data = json.loads(formatter.format_report(check(calculus_scp(), _small_proof()), 'scp'))
    assert data == {'ok': True, 'failures': [], 'calculus': 'scp'}


def test_proof_json():
    formatter = _formatter(output_format='json')
    data = json.loads(formatter.format_proof(_small_proof(), 'scp'))
    assert data['calculus'] == 'scp'
    assert data['proof']['rule'] == 'imp_r'
    assert len(data['proof']['premises']) == 1


def test_verdict():
    formatter = _formatter()
    valid = truth_table_valid(parse('p -> p', 'cpc'))
    assert formatter.format_verdict(valid, 'p -> p').startswith('valid up to 1 world(s)')

    refuted = truth_table_valid(parse('p', 'cpc'))
    text = formatter.format_verdict(refuted, 'p')
    assert text.splitlines()[0] == 'countermodel for p at world 0'
    assert 'model (kripke)' in text

    data = json.loads(_formatter(output_format='json').format_verdict(refuted, 'p'))
    assert data['verdict'] == 'countermodel'
    assert data['formula'] == 'p'


def test_valuation():
    text = _formatter().format_valuation({'p': True, 'q': False}, 'p -> q')
    assert text.splitlines() == ['countermodel for p -> q', '  p = true', '  q = false']


def test_data():
    assert _formatter().format_data({'b': 2, 'a': 1}) == 'a: 1\nb: 2'
    assert _formatter().format_data(['x', 'y']) == 'x\ny'
    assert json.loads(_formatter(output_format='json').format_data([1, 2])) == [1, 2]


def test_streams(capsys):
    formatter = _formatter(verbose=True)
    formatter.output_result('result')
    formatter.output_error('broken')
    formatter.output_verbose('detail')
    captured = capsys.readouterr()
    assert captured.out == 'result\n'
    assert 'Error: broken' in captured.err
    assert '[VERBOSE] detail' in captured.err

    _formatter(quiet=True).output_error('hidden')
    assert capsys.readouterr().err == ''
