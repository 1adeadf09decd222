"""
Tests for bunches, LBI search and GBI search
"""

import random

import pytest

from pcw.bunched import (bunch_equiv, calculus_lbi, lbi_hopeless, lbi_theorem, normal_form,
                         nf_text)
from pcw.gbi import calculus_gbi, gbi_theorem, theorem_sequent
from pcw.kernel import check, count_rule
from pcw.sequents import BLeaf, BNode, BUnit, BunchedSequent, formula_interpretation
from pcw.syntax import parse, parse_sequent
from pcw.xlate import bunch_reconstruct
from pcw.xlate.bi import gbi_image

LEAVES = [parse(text, 'bi') for text in ('p', 'q', 'r', 'p * q', 'p -* q')]

UNIT = {',': 'm', ';': 'a'}


def _bunch(text):
    return parse_sequent(f"{text} |- p", 'bunched').bunch


def test_structural_equivalence():
    assert bunch_equiv(_bunch('p, (q ; r)'), _bunch('(r ; q), p'))
    assert bunch_equiv(_bunch('p, mI'), _bunch('p'))
    assert bunch_equiv(_bunch('(p ; q) ; r'), _bunch('p ; (q ; r)'))
    assert not bunch_equiv(_bunch('p ; q'), _bunch('p, q'))
    assert not bunch_equiv(_bunch('p ; aI'), _bunch('p, aI'))
    assert nf_text(normal_form(_bunch('q, p, mI'))) == '(p , q)'


def test_bunch_interpretation():
    s = parse_sequent('p, q |- r', 'bunched')
    assert formula_interpretation(s) == parse('p * q => r', 'bi')


def test_lbi_search():
    calc = calculus_lbi()
    result = lbi_theorem(parse('p -* p', 'bi'), 3)
    assert result.found
    assert check(calc, result.proof).ok

    result = lbi_theorem(parse('p * q -* q * p', 'bi'), 5)
    assert result.found
    assert check(calc, result.proof).ok

    assert not lbi_theorem(parse('p', 'bi'), 3).found


def test_gbi_search():
    result = gbi_theorem(parse('p => p', 'bi'), 4)
    assert result.found
    assert result.proof.conclusion == theorem_sequent(parse('p => p', 'bi'))
    assert check(calculus_gbi(), result.proof).ok

    assert gbi_theorem(parse('p -* p', 'bi'), 5).found


CONTRACTION = '((p -* (q => r)) /\\ (p -* q)) * p -* r'


def test_search_that_needs_contraction():
    result = lbi_theorem(parse(CONTRACTION, 'bi'), 14)
    assert result.found
    assert check(calculus_lbi(), result.proof).ok
    assert count_rule(result.proof, 'cr') >= 1


def test_node_budget_bounds_search():
    result = lbi_theorem(parse(CONTRACTION, 'bi'), 14, max_nodes=50)
    assert result.status == 'exhausted'
    assert result.explored <= 51


def test_atomic_goals_out_of_reach():
    assert lbi_hopeless(parse_sequent('p -* q, p |- r', 'bunched'))
    assert not lbi_hopeless(parse_sequent('p -* (q => r), p |- r', 'bunched'))
    assert not lbi_hopeless(parse_sequent('bot, p |- r', 'bunched'))
    # only atomic goals are pruned
    assert not lbi_hopeless(parse_sequent('p |- q -* q', 'bunched'))


def test_bunches_keep_written_order():
    b = _bunch('q, p')
    assert b.text == '(q , p)'
    assert b != _bunch('p, q')
    assert bunch_equiv(b, _bunch('p, q'))


def _random_bunch(rng, leaves):
    if leaves == 1:
        if rng.random() < 0.2:
            return BUnit(rng.choice('ma'))
        return BLeaf(rng.choice(LEAVES))
    left = rng.randint(1, leaves - 1)
    return BNode(rng.choice(',;'), _random_bunch(rng, left), _random_bunch(rng, leaves - left))


def _reshape(rng, b):
    """An equivalent bunch: children swapped, units added, nodes reassociated"""
    if not isinstance(b, BNode):
        return b
    left, right = _reshape(rng, b.left), _reshape(rng, b.right)
    move = rng.randrange(4)
    if move == 0:
        return BNode(b.op, right, left)
    if move == 1:
        return BNode(b.op, BNode(b.op, left, right), BUnit(UNIT[b.op]))
    if move == 2 and isinstance(left, BNode) and left.op == b.op:
        return BNode(b.op, left.left, BNode(b.op, left.right, right))
    return BNode(b.op, left, right)


def _plug(rng, b, other):
    op = rng.choice(',;')
    return BNode(op, b, other) if rng.random() < 0.5 else BNode(op, other, b)


def test_equivalence_is_a_congruence():
    rng = random.Random(11)
    for _ in range(300):
        b = _random_bunch(rng, rng.randint(1, 4))
        reshaped = _reshape(rng, b)
        assert bunch_equiv(b, reshaped)
        other = _random_bunch(rng, rng.randint(1, 2))
        state = rng.getstate()
        outer = _plug(rng, b, other)
        rng.setstate(state)
        assert bunch_equiv(outer, _plug(rng, reshaped, other))


@pytest.mark.slow
def test_bunches_survive_labeling():
    rng = random.Random(5)
    for _ in range(500):
        b = _random_bunch(rng, rng.randint(1, 4))
        s = BunchedSequent(b, parse('p', 'bi'))
        assert bunch_reconstruct(gbi_image(s), 'd').text == b.text
