"""
Tests for the finite-model oracles
"""

import pytest

from pcw.errors import ModelError
from pcw.formula import Atom, Box
from pcw.gentzen import calculus_sil
from pcw.hypersequent import calculus_hs5_a
from pcw.kernel import search
from pcw.models import (KripkeModel, SphereModel, brute_force_valid, evaluate, s5_frame_valid,
                        tense_valid, truth_table_valid)
from pcw.syntax import parse
from pcw.workbench import theorem_goal


def test_truth_tables():
    assert truth_table_valid(parse('((p -> q) -> p) -> p', 'cpc')).valid
    verdict = truth_table_valid(parse('p -> q', 'cpc'))
    assert not verdict.valid
    assert verdict.countermodel is not None
    assert verdict.to_dict()['verdict'] == 'countermodel'


def test_modal_frames():
    axiom_t = parse('[]p -> p', 'modal')
    verdict = brute_force_valid(axiom_t, 'modal', 2)
    assert not verdict.valid
    assert verdict.world is not None
    assert brute_force_valid(axiom_t, 'modal', 2, frame=('reflexive',)).valid


def test_s5():
    axiom_5 = parse('~[]p -> []~[]p', 'modal')
    assert brute_force_valid(axiom_5, 'modal', 3, semantics='s5').valid
    assert s5_frame_valid(axiom_5, 2).valid
    assert not brute_force_valid(axiom_5, 'modal', 2).valid


def test_tense():
    assert tense_valid(parse('~p \\/ []<b>p', 'tense'), 2).valid
    assert not tense_valid(parse('~p \\/ []p', 'tense'), 2).valid


def test_intuitionistic():
    assert brute_force_valid(parse('p -> p \\/ q', 'int'), 'int', 2).valid
    verdict = brute_force_valid(parse('p \\/ ~p', 'int'), 'int', 2)
    assert not verdict.valid
    assert verdict.countermodel.to_dict()['kind'] == 'intuitionistic'


def test_conditional():
    assert brute_force_valid(parse('p =< p', 'cond'), 'cond', 2).valid
    verdict = brute_force_valid(parse('p =< q', 'cond'), 'cond', 2)
    assert not verdict.valid
    assert verdict.countermodel.to_dict()['kind'] == 'spheres'


def test_bi():
    assert brute_force_valid(parse('p -* p', 'bi'), 'bi', 2).valid
    assert brute_force_valid(parse('p * q => q * p', 'bi'), 'bi', 2).valid
    verdict = brute_force_valid(parse('p', 'bi'), 'bi', 2)
    assert not verdict.valid
    assert verdict.to_dict()['countermodel']['kind'] == 'resource'


def test_bounds():
    f = parse('[]p -> p', 'modal')
    with pytest.raises(ModelError):
        brute_force_valid(f, 'modal', 0)
    with pytest.raises(ModelError):
        brute_force_valid(f, 'modal', 5, max_bound=4)
    with pytest.raises(ModelError):
        brute_force_valid(f, 'modal', 2, semantics='fuzzy')
    with pytest.raises(ModelError):
        brute_force_valid(f, 'modal', 2, frame=('dense',))


def test_model_validation():
    with pytest.raises(ModelError):
        KripkeModel((0, 1), frozenset({(0, 0), (1, 1), (0, 1)}),
                    {'p': frozenset({0})}, intuitionistic=True).validate()
    with pytest.raises(ModelError):
        SphereModel((0, 1, 2), {0: (frozenset({0, 1}), frozenset({1, 2}))}).validate()
    model = KripkeModel((0, 1), frozenset({(0, 1)}), {'p': frozenset({1})}).validate()
    assert evaluate(model, 0, Box(Atom('p')))
    assert evaluate(model, 1, Atom('p'))
    with pytest.raises(ModelError):
        evaluate(model, 7, Atom('p'))


S5_CORPUS = [
    ('[]p -> p', True),
    ('~[]p -> []~[]p', True),
    ('[]p -> [][]p', True),
    ('[](p -> q) -> []p -> []q', True),
    ('p -> []~[]~p', True),
    ('p -> []p', False),
    ('~[]~p -> p', False),
    ('[](p -> q) -> []q', False),
    ('~[]p -> []~p', False),
    ('p -> q', False),
]


@pytest.mark.slow
@pytest.mark.parametrize('text,theorem', S5_CORPUS)
def test_s5_oracle_agrees_with_hypersequent_search(text, theorem):
    f = parse(text, 'modal')
    assert brute_force_valid(f, 'modal', 3, semantics='s5').valid == theorem
    calc = calculus_hs5_a()
    assert search(calc, theorem_goal(calc, f), depth=10).found == theorem


def test_excluded_middle_is_not_intuitionistic():
    f = parse('p \\/ (p -> bot)', 'int')
    verdict = brute_force_valid(f, 'int', 3)
    assert not verdict.valid
    assert verdict.countermodel is not None
    calc = calculus_sil()
    assert search(calc, theorem_goal(calc, f), depth=8).status == 'open'
