"""
Tests for nested sequents, display equivalence and formula interpretation
"""

import pytest

from pcw.display import display_equivalent, display_path, residuate, structure_graph
from pcw.errors import ShapeError, TranslationError
from pcw.nested import il_labels_distinct, kt_n_translate, nested_reachable
from pcw.sequents import formula_interpretation
from pcw.syntax import parse, parse_sequent
from pcw.xlate import d_translate, n_translate


def _kt(text):
    return parse_sequent(text, 'ktnest')


def test_tree_to_nested_tense_sequent():
    lam = parse_sequent('w R u, w R v ; |- w:p, u:q, v:r', 'labeled', 'tense')
    assert kt_n_translate(lam) == _kt('p, o[q], o[r]')
    with pytest.raises(TranslationError):
        kt_n_translate(parse_sequent('w R u, v R u ; |- u:q', 'labeled', 'tense'))


def test_nested_reachability():
    s = parse_sequent('p |- [ q |- [ |- r ]_v ]_u', 'ilnest')
    assert nested_reachable(s, 'u', 'v')
    assert nested_reachable(s, 'r', 'v')
    assert not nested_reachable(s, 'v', 'u')
    assert il_labels_distinct(s)
    with pytest.raises(ShapeError):
        nested_reachable(s, 'z', 'u')


def test_formula_interpretation():
    assert formula_interpretation(_kt('p, o[q]')) == parse('p \\/ []q', 'tense')
    il = parse_sequent('p |- [ q |- r ]_u', 'ilnest')
    assert formula_interpretation(il) == parse('p -> q -> r', 'int')
    gentzen = parse_sequent('p, q |- r', 'gentzen', 'cpc')
    assert formula_interpretation(gentzen).text == 'p /\\ q -> r'
    with pytest.raises(ShapeError):
        formula_interpretation(parse_sequent('|- w:p', 'labeled', 'tense'))


def test_residuation():
    start = _kt('p, o[q]')
    assert list(residuate(start, 'o')) == [_kt('q, b[p]')]
    assert list(residuate(start, 'b')) == []
    assert list(residuate(_kt('q, b[p]'), 'b')) == [start]


def test_display_equivalence():
    a = _kt('p, o[q, b[r]]')
    b = _kt('r, o[q, b[p]]')
    assert display_equivalent(a, a, 0)
    assert display_equivalent(a, b, 2)
    assert not display_equivalent(a, b, 1)
    path = display_path(a, b, 2)
    assert path[0] == a and path[-1] == b
    assert len(path) == 3
    assert not display_equivalent(a, _kt('p, o[q]'), 4)
    with pytest.raises(ShapeError):
        display_equivalent(a, b, -1)


def test_structure_graphs():
    s = parse_sequent('p o .(q o .r) => s', 'display')
    ant = structure_graph(s.lhs, 'ant')
    assert sorted(ant.edges) == [(1, 0), (2, 1)]
    assert [ant.nodes[n]['content'] for n in sorted(ant.nodes)] == ['p', 'q', 'r']
    suc = structure_graph(s.lhs, 'suc')
    assert sorted(suc.edges) == [(0, 1), (1, 2)]
    with pytest.raises(ShapeError):
        structure_graph(s.lhs, 'middle')


def test_polytree_rootings_are_display_equivalent():
    lam = parse_sequent('w R v, v R u ; |- w:<>q, w:r \\/ q, v:p, v:q, u:[b]p', 'labeled', 'tense')
    images = {x: d_translate(lam, x) for x in 'wvu'}
    assert images['w'] == _kt('<>q, r \\/ q, o[p, q, o[[b]p]]')
    assert images['v'] == _kt('p, q, o[[b]p], b[<>q, r \\/ q]')
    assert images['u'] == _kt('[b]p, b[p, q, b[<>q, r \\/ q]]')
    for a in images.values():
        for b in images.values():
            assert display_equivalent(a, b, 6)


def test_intuitionistic_tree_to_nested_sequent():
    lam = parse_sequent('w <= v, v <= u ; v:p, u:p |- w:p -> q, v:r, u:q', 'labeled', 'int')
    nested = n_translate(lam)
    assert nested.label == 'w'
    assert nested.text == '|- p -> q, [ p |- r, [ p |- q ]_u ]_v'
    assert nested == parse_sequent('|- p -> q, [ p |- r, [ p |- q ]_u ]_v', 'ilnest')
