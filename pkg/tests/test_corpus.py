"""
Tests for the golden proof store
"""

import json
import os
import tempfile

import pytest

from pcw.corpus import Entry, ProofStore, read_document
from pcw.errors import CorpusError
from pcw.kernel import check
from pcw.models import brute_force_valid, tense_valid, truth_table_valid
from pcw.sequents import formula_interpretation
from pcw.workbench import get_calculus

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'proofs')


def test_every_golden_proof_checks():
    store = ProofStore(CORPUS, get_calculus)
    names = store.list()
    assert 'scp-peirce' in names
    assert len(names) >= 20
    for entry in store.entries():
        report = check(get_calculus(entry.calculus, entry.variant), entry.proof)
        assert report.ok, f"{entry.name}: {report.failures}"


@pytest.mark.parametrize('name, holds', [
    ('scp-excluded-middle', lambda s: truth_table_valid(s.suc[0])),
    ('sil-imp-refl', lambda s: brute_force_valid(s.suc[0], 'int', 2)),
    ('ls5-axiom-5', lambda s: brute_force_valid(s.suc[0].formula, 'modal', 3, semantics='s5')),
    ('nkt-axiom-k', lambda s: tense_valid(formula_interpretation(s), 2)),
    ('igv-pref-refl', lambda s: brute_force_valid(s.suc[0], 'cond', 2)),
])
def test_golden_theorems_hold_in_small_models(name, holds):
    """Every proved endsequent survives the finite-model oracle"""
    entry = ProofStore(CORPUS, get_calculus).load(name)
    assert holds(entry.proof.conclusion).valid


def test_entry_ids():
    store = ProofStore(CORPUS, get_calculus)
    assert store.load('lil-reach-imp-refl').calc_id == 'lil+reach'
    assert store.load('scp-peirce').calc_id == 'scp'


def test_save_and_reload():
    store = ProofStore(CORPUS, get_calculus)
    entry = store.load('scp-peirce')
    with tempfile.TemporaryDirectory() as tmp:
        target = ProofStore(os.path.join(tmp, 'golden'), get_calculus)
        path = target.save(Entry('copy', entry.calculus, entry.variant, entry.proof))
        assert os.path.exists(path)
        assert not os.path.exists(f"{path}.tmp")
        assert target.list() == ['copy']
        assert target.load('copy').proof == entry.proof


def test_staged_entries_written_on_close():
    entry = ProofStore(CORPUS, get_calculus).load('lil-reach-imp-refl')
    with tempfile.TemporaryDirectory() as tmp:
        with ProofStore(tmp, get_calculus) as target:
            target.stage(entry)
            assert target.list() == []
        assert target.list() == ['lil-reach-imp-refl']
        assert read_document(target.path_for('lil-reach-imp-refl'))['variant'] == 'reach'


def test_bare_proof_document():
    with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
        json.dump({'rule': 'id', 'sequent': 'p |- p', 'premises': []}, f)
        path = f.name
    try:
        assert read_document(path)['proof']['rule'] == 'id'
        with pytest.raises(CorpusError):
            ProofStore(os.path.dirname(path), get_calculus).load(path)
    finally:
        os.unlink(path)


def test_unreadable_documents():
    with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
        f.write('{"calculus": ')
        path = f.name
    try:
        with pytest.raises(CorpusError):
            read_document(path)
    finally:
        os.unlink(path)
    with pytest.raises(CorpusError):
        read_document('/nonexistent/proof.json')
