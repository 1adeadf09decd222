"""
Tests for the proof kernel: checking, search and tree helpers
"""

import os
import random
from functools import lru_cache

import pytest

from pcw.errors import ShapeError
from pcw.formula import And, Atom, Imp, Not, Or
from pcw.gentzen import box_t, calculus_scp, calculus_sil, sup_l
from pcw.kernel import (OPEN, Proof, check, count_rule, countermodel_cpc, decode_proof,
                        encode_proof, node_at, proof_height, proof_size, random_derivation,
                        replace_at, rule_multiset, search, skeleton)
from pcw.labeled import calculus_lil
from pcw.models import truth_table_valid
from pcw.sequents import GentzenSequent
from pcw.syntax import parse, parse_sequent
from pcw.corpus import read_document

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'proofs')


def _golden(name, calc):
    return decode_proof(read_document(os.path.join(CORPUS, f"{name}.json"))['proof'], calc)


def _goal(text):
    return GentzenSequent((), (parse(text, 'cpc'),))


def test_golden_proof_checks():
    calc = calculus_scp()
    report = check(calc, _golden('scp-peirce', calc))
    assert report.ok
    assert report.to_dict() == {'ok': True, 'failures': []}


def test_wrong_rule_is_reported():
    calc = calculus_scp()
    seq = parse_sequent('|- p \\/ ~p', 'gentzen', 'cpc')
    bogus = Proof('neg_r', seq, (Proof('id', parse_sequent('p |- p', 'gentzen', 'cpc')),))
    report = check(calc, bogus)
    assert not report.ok
    assert report.failures[0][0] == ()
    assert 'neg_r' in report.failures[0][1]


def test_open_leaf_and_unknown_rule():
    calc = calculus_scp()
    seq = parse_sequent('p |- p', 'gentzen', 'cpc')
    assert check(calc, Proof(OPEN, seq)).failures == [((), 'open leaf')]
    assert check(calc, Proof('magic', seq)).failures == [((), 'rule not in calculus')]


def test_freshness_violation():
    calc = calculus_lil()
    concl = parse_sequent('|- w:p -> p', 'labeled', 'int')
    premise = parse_sequent('w <= w ; w:p |- w:p', 'labeled', 'int')
    report = check(calc, Proof('sup_r', concl, (Proof('id', premise),)))
    assert report.failures == [((), 'freshness violated')]


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        check(calculus_scp(), Proof('id', parse_sequent('|- p', 'hyper')))


def test_search_finds_checkable_proof():
    calc = calculus_scp()
    result = search(calc, _goal('((p -> q) -> p) -> p'), depth=8)
    assert result.found
    assert result.status == 'proof'
    assert check(calc, result.proof).ok
    assert result.explored > 0


def test_search_in_intuitionistic_calculus():
    calc = calculus_sil()
    valid = search(calc, GentzenSequent((), (parse('p -> p \\/ q', 'int'),)), depth=6)
    assert valid.found
    peirce = search(calc, GentzenSequent((), (parse('((p -> q) -> p) -> p', 'int'),)), depth=6)
    assert not peirce.found


def test_countermodel_from_open_derivation():
    result = search(calculus_scp(), _goal('p -> q'), depth=4)
    assert result.status == 'open'
    assert result.derivation is not None
    assert countermodel_cpc(result.derivation) == {'p': True, 'q': False}


def test_tree_helpers():
    calc = calculus_scp()
    proof = _golden('scp-peirce', calc)
    assert proof_height(proof) == 4
    assert proof_size(proof) == 5
    assert rule_multiset(proof) == {'imp_r': 2, 'imp_l': 1, 'id': 2}
    assert count_rule(proof, 'id') == 2
    assert node_at(proof, (0, 1)).conclusion.text == 'p |- p'
    leaf = Proof(OPEN, node_at(proof, (0, 1)).conclusion)
    opened = replace_at(proof, (0, 1), leaf)
    assert check(calc, opened).failures == [((0, 1), 'open leaf')]
    assert skeleton(proof) == skeleton(_golden('scp-peirce', calc))


def test_encoding_survives_decoding():
    calc = calculus_scp()
    proof = _golden('scp-contraposition', calc)
    data = encode_proof(proof)
    assert data['rule'] == 'imp_r'
    assert decode_proof(data, calc) == proof


def test_random_derivations_only_leave_open_leaves():
    calc = calculus_scp()
    rng = random.Random(7)
    for text in ['(p -> q) -> ~q -> ~p', 'p /\\ (q \\/ r) -> p /\\ q \\/ p /\\ r']:
        tree = random_derivation(calc, _goal(text), 6, rng)
        report = check(calc, tree)
        assert all(reason == 'open leaf' for _, reason in report.failures)


@lru_cache(maxsize=None)
def _formulas(size):
    """Every formula over p and q with exactly size symbols"""
    if size == 1:
        return (Atom('p'), Atom('q'))
    found = [Not(f) for f in _formulas(size - 1)]
    for k in range(1, size - 1):
        for a in _formulas(k):
            for b in _formulas(size - 1 - k):
                found.extend(cls(a, b) for cls in (And, Or, Imp))
    return tuple(found)


@pytest.mark.slow
def test_classical_search_agrees_with_truth_tables():
    calc = calculus_scp()
    for size in range(1, 7):
        for f in _formulas(size):
            result = search(calc, GentzenSequent((), (f,)), depth=8)
            assert result.status == ('proof' if truth_table_valid(f).valid else 'open'), f.text


def test_search_skips_repeated_left_rules():
    f = parse('[]p', 'modal')
    s = GentzenSequent((f, f.sub), (parse('q', 'modal'),))
    assert list(box_t(s, searching=True)) == []
    assert len(list(box_t(s))) == 1

    g = parse('p -> q', 'int')
    s = GentzenSequent((g, g.right), (parse('r', 'int'),))
    assert list(sup_l(s, searching=True)) == []
    assert len(list(sup_l(s))) == 1
