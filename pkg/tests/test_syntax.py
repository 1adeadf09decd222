"""
Tests for formula and sequent parsing
"""

import pytest

from pcw.errors import LogicError, ParseError
from pcw.formula import (And, Atom, Bot, Box, Imp, Not, Or, Pref, Star, Sup, Wand, atoms,
                         from_json, size, to_json, to_nnf)
from pcw.sequents import (BunchedSequent, GentzenSequent, Hypersequent, ILNode, KtNode,
                          LabeledSequent)
from pcw.syntax import parse, parse_sequent


def test_connective_readings():
    assert parse('p -> q', 'cpc') == Imp(Atom('p'), Atom('q'))
    assert parse('p -> q', 'int') == Sup(Atom('p'), Atom('q'))
    assert parse('p => q', 'bi') == Sup(Atom('p'), Atom('q'))
    assert parse('p -* q', 'bi') == Wand(Atom('p'), Atom('q'))
    assert parse('p * q', 'bi') == Star(Atom('p'), Atom('q'))
    assert parse('p =< q', 'cond') == Pref(Atom('p'), Atom('q'))
    assert parse('~p', 'int') == Sup(Atom('p'), Bot())
    assert parse('~p', 'cpc') == Not(Atom('p'))


def test_precedence():
    f = parse('p /\\ q \\/ r -> s', 'cpc')
    assert f == Imp(Or(And(Atom('p'), Atom('q')), Atom('r')), Atom('s'))
    # implication associates to the right
    assert parse('p -> q -> r', 'cpc') == Imp(Atom('p'), Imp(Atom('q'), Atom('r')))
    assert parse('[]~p', 'modal') == Box(Not(Atom('p')))


def test_printing_round_trips():
    for text in ['(p -> q) -> p', 'p -> q -> r', '~(p /\\ q)', 'p \\/ q /\\ r']:
        f = parse(text, 'cpc')
        assert parse(f.text, 'cpc') == f


def test_logic_restrictions():
    with pytest.raises(LogicError):
        parse('p /\\ q', 'modal')
    with pytest.raises(LogicError):
        parse('[]p', 'cpc')
    with pytest.raises(LogicError):
        parse('~(p /\\ q)', 'tense')
    with pytest.raises(LogicError):
        parse('p', 'linear')


def test_parse_error_offset():
    with pytest.raises(ParseError) as excinfo:
        parse('p /\\', 'cpc')
    assert excinfo.value.offset is not None


def test_json_and_measures():
    f = parse('(p -> q) -> p', 'cpc')
    assert from_json(to_json(f)) == f
    assert to_json(Atom('p')) == ['atom', 'p']
    assert atoms(f) == frozenset({'p', 'q'})
    assert size(f) == 5
    with pytest.raises(ParseError):
        from_json(['nope'])


def test_nnf():
    f = to_nnf(parse('[]p -> []q', 'kt'))
    assert f.text == parse('<>~p \\/ []q', 'tense').text


def test_gentzen_sequent():
    s = parse_sequent('q, p |- p -> q', 'gentzen', 'cpc')
    assert isinstance(s, GentzenSequent)
    assert s == parse_sequent('p, q |- p -> q', 'gentzen', 'cpc')
    assert parse_sequent('|-', 'gentzen').text == '|-'


def test_hypersequent():
    h = parse_sequent('|- []p | []p |-', 'hyper')
    assert isinstance(h, Hypersequent)
    assert len(h.components) == 2


def test_nested_sequents():
    k = parse_sequent('~p, o[<b>p, b[q]]', 'ktnest')
    assert isinstance(k, KtNode)
    assert k.formula_count() == 3
    n = parse_sequent('p |- [ q |- r ]_w0', 'ilnest')
    assert isinstance(n, ILNode)
    assert n.labels() == frozenset({'r', 'w0'})


def test_labeled_sequent():
    s = parse_sequent('w <= u ; w:p |- u:p', 'labeled', 'int')
    assert isinstance(s, LabeledSequent)
    assert s.labels() == frozenset({'w', 'u'})
    with pytest.raises(ParseError):
        parse_sequent('w:p |- u:', 'labeled', 'int')


def test_bunched_sequent():
    s = parse_sequent('p, (q ; r) |- p * q', 'bunched')
    assert isinstance(s, BunchedSequent)
    with pytest.raises(ParseError):
        parse_sequent('p |- q', 'lattice')
