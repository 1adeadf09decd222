"""
Tests for the calculus registry, translation routes and the Workbench
"""

import os
import tempfile

import pytest

from pcw.config import Config
from pcw.corpus import read_document
from pcw.errors import ModelError, RuleError
from pcw.gentzen import calculus_scp
from pcw.kernel import decode_proof
from pcw.labeled import calculus_lil
from pcw.nested import calculus_nil, calculus_nkt
from pcw.sequents import KtNode
from pcw.syntax import parse
from pcw.workbench import (CALCULUS_IDS, Workbench, get_calculus, read_goal, route, split_id,
                           translation_graph, variant_names)

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'proofs')


def _golden(name, calc):
    return decode_proof(read_document(os.path.join(CORPUS, f"{name}.json"))['proof'], calc)


def _workbench(**kwargs):
    return Workbench(Config.from_cli_args(corpus_dir=CORPUS, **kwargs))


def test_calculus_lookup():
    assert get_calculus('scp').id == 'scp'
    assert get_calculus('lil+reach').id == 'lil+reach'
    assert get_calculus('lil', 'reach').id == 'lil+reach'
    assert get_calculus('lkt', 'tra,ref').id == 'lkt+ref+tra'
    assert split_id('glv+struct') == ('glv', 'struct')
    assert split_id('nkt') == ('nkt', None)
    for calc_id in CALCULUS_IDS:
        assert get_calculus(calc_id).id == calc_id


@pytest.mark.parametrize('calc_id, variant', [
    ('linear', None),
    ('scp', 'reach'),
    ('lil+reach', 'struct'),
    ('lkt', 'dense'),
])
def test_calculus_lookup_errors(calc_id, variant):
    with pytest.raises(RuleError):
        get_calculus(calc_id, variant)


def test_variant_names():
    assert variant_names('lil') == ['core', 'reach', 'struct', 'full']
    assert variant_names('nkt') == ['core']
    assert 'ref' in variant_names('lkt')


def test_routes():
    steps = route('sil', 'nil')
    assert [(t.source, t.target) for t in steps] == [('sil', 'lil'), ('lil', 'lil+reach'),
                                                      ('lil+reach', 'nil')]
    assert [t.target for t in route('ls5', 'hs5a')] == ['hs5a']
    with pytest.raises(RuleError):
        route('scp', 'nil')
    with pytest.raises(RuleError):
        route('nil', 'sil')
    assert translation_graph().number_of_edges() == 8


def test_read_goal():
    assert read_goal(calculus_scp(), 'p -> p').text == '|- p -> p'
    assert read_goal(calculus_scp(), 'p |- p').text == 'p |- p'
    imp_refl = '(p -> q) -> p -> q'
    assert read_goal(calculus_lil(), imp_refl) == _golden('lil-imp-refl', calculus_lil()).conclusion
    assert read_goal(calculus_nil(), imp_refl) == _golden('nil-imp-refl', calculus_nil()).conclusion
    # one-sided tense calculi get the negation normal form
    nnf = KtNode((parse('<>~p \\/ []q', 'tense'),))
    assert read_goal(calculus_nkt(), '[]p -> []q') == nnf


def test_parse():
    data = _workbench().parse('p -> q')
    assert data['logic'] == 'cpc'
    assert data['text'] == 'p -> q'
    assert data['formula'][0] == 'imp'
    assert _workbench().parse('p |- q', kind='gentzen') == {'kind': 'gentzen', 'text': 'p |- q'}


def test_check_and_translate():
    wb = _workbench()
    calc, report = wb.check(os.path.join(CORPUS, 'nkt-axiom-k.json'))
    assert calc.id == 'nkt'
    assert report.ok

    _, proof = wb.load_proof(os.path.join(CORPUS, 'lil-imp-refl.json'))
    names, result, report = wb.translate(proof, 'lil', 'nil')
    assert names == ['lil', 'lil+reach', 'nil']
    assert report.ok
    assert result.conclusion == _golden('nil-imp-refl', calculus_nil()).conclusion


def test_prove_uses_cache():
    with tempfile.TemporaryDirectory() as tmp:
        wb = _workbench(cache_file=os.path.join(tmp, 'verdicts.db'))
        _, first = wb.prove('scp', '((p -> q) -> p) -> p')
        _, second = wb.prove('scp', '((p -> q) -> p) -> p')
        assert first.found and second.found
        assert second.proof == first.proof
        assert wb.cache.stats()['hits'] == 1


def test_countermodels():
    wb = _workbench()
    kind, valuation = wb.countermodel('p -> q', calc_id='scp')
    assert kind == 'valuation'
    assert valuation == {'p': True, 'q': False}

    kind, verdict = wb.countermodel('[]p -> p', logic='modal', bound=2)
    assert kind == 'verdict'
    assert not verdict.valid

    with pytest.raises(ModelError):
        wb.countermodel('p -> p', calc_id='sil')

    assert wb.valid('modal', '[]p -> p', frame=('reflexive',)).valid


def test_corpus_check():
    rows = _workbench().check_corpus()
    assert len(rows) == len([f for f in os.listdir(CORPUS) if f.endswith('.json')])
    assert all(row['ok'] for row in rows)


@pytest.mark.slow
def test_corpus_check_with_translations():
    rows = _workbench().check_corpus(translate=True)
    translated = [row for row in rows if ' -> ' in row['name']]
    assert len(translated) == 13
    assert all(row['ok'] for row in translated), [r for r in translated if not r['ok']]
    assert {'name': 'lil-imp-refl -> lil+reach', 'calculus': 'lil+reach', 'ok': True,
            'failures': 0} in translated
