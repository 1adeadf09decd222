"""
Tests for labeled calculi and their shape certificates
"""

import random

import pytest

from pcw.errors import RuleError
from pcw.formula import to_nnf
from pcw.kernel import OPEN, Proof, check, proof_nodes, random_derivation
from pcw.labeled import (GEOMETRIC, calculus_lil, calculus_lkt, polytree_cert, reachable,
                         tree_cert)
from pcw.syntax import parse, parse_sequent
from pcw.workbench import theorem_goal


def _tense(text):
    return parse_sequent(text, 'labeled', 'tense')


def _int(text):
    return parse_sequent(text, 'labeled', 'int')


def test_polytree_certificates():
    cert = polytree_cert(_tense('w R u, v R u ; |- w:p, v:q'))
    assert cert.ok
    assert cert.root == 'u'
    assert set(cert.order) == {'u', 'v', 'w'}

    assert polytree_cert(_tense('w R u, u R w ; |- w:p')).reason == 'cycle'
    assert polytree_cert(_tense('w R u, v R x ; |- w:p')).reason == 'disconnected'
    assert polytree_cert(_tense('|- w:p, u:q')).reason.startswith('dangling label')
    assert polytree_cert(_tense('|- w:p')).to_dict() == {'ok': True, 'root': 'w',
                                                         'order': ['w'], 'reason': None}


def test_tree_certificates():
    cert = tree_cert(_int('w <= u, w <= v ; w:p |- u:q'))
    assert cert.ok
    assert cert.root == 'w'
    assert cert.order[0] == 'w'
    # a polytree that is not a directed tree
    assert not tree_cert(_int('w <= u, v <= u ; |- u:q')).ok
    assert tree_cert(_int('w <= u, v <= u ; |- u:q')).reason == 'several parents'


def test_reachability():
    rel = _int('w <= u, u <= v ; |- w:p').rel
    assert reachable(rel, 'w', 'v')
    assert reachable(rel, 'v', 'v')
    assert not reachable(rel, 'v', 'w')


def test_geometric_extensions():
    assert calculus_lkt().id == 'lkt'
    assert calculus_lkt(['euc', 'ser']).id == 'lkt+ser+euc'
    assert set(GEOMETRIC) == {'ser', 'ref', 'tra', 'sym', 'euc'}
    with pytest.raises(RuleError):
        calculus_lkt(['dense'])


def test_symmetry_rule_checks():
    premise = Proof(OPEN, _tense('w R u, u R w ; |- w:p'))
    step = Proof('sym', _tense('w R u ; |- w:p'), (premise,))
    assert check(calculus_lkt(['sym']), step).failures == [((0,), 'open leaf')]
    assert ((), 'rule not in calculus') in check(calculus_lkt(), step).failures


TENSE_GOALS = ['p -> []<b>p', 'p -> [b]<>p', '[](p -> q) -> []p -> []q',
               '<>[b]p -> p \\/ <b>q']
IL_GOALS = ['((p -> q) -> p) -> p \\/ q', '(p -> q) -> (q -> r) -> p -> r',
            '((p -> bot) -> bot) -> p', '(p \\/ q -> r) -> (p -> r) /\\ (q -> r)']


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(200))
def test_tense_traces_stay_polytrees(seed):
    calc = calculus_lkt()
    text = TENSE_GOALS[seed % len(TENSE_GOALS)]
    goal = theorem_goal(calc, to_nnf(parse(text, 'kt')))
    tree = random_derivation(calc, goal, 8 + seed % 5, random.Random(seed))
    for _, node in proof_nodes(tree):
        assert polytree_cert(node.conclusion).ok, node.conclusion.text


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(200))
def test_intuitionistic_traces_stay_trees(seed):
    calc = calculus_lil('reach')
    text = IL_GOALS[seed % len(IL_GOALS)]
    goal = theorem_goal(calc, parse(text, 'int'))
    tree = random_derivation(calc, goal, 8 + seed % 5, random.Random(seed))
    for _, node in proof_nodes(tree):
        assert tree_cert(node.conclusion).ok, node.conclusion.text
