"""
Conditional logic V: the labeled calculus G_lV and the structured calculus IG(V)
"""

import logging
from typing import Callable, Final, Iterator, List, Optional, Tuple, Type

from .errors import RuleError
from .formula import And, Atom, Bot, Formula, Imp, Not, Or, Pref, Top
from .gentzen import CLASSICAL, LocalRule, id_atomic
from .kernel import Annotations, Calculus, Expansion, Rule, Supply
from .sequents import (Block, BlockSequent, Forces, GentzenSequent, GlvSequent, LabeledFormula,
                       Member, SphereOf, Structure, Sub, canon_set, multiset_minus)

LOGGER: Final = logging.getLogger(__name__)

GlvFn = Callable[[GlvSequent, Supply], Iterator[Expansion]]

GLV_VARIANTS: Final = ('core', 'struct')


def glv_rule(name: str, fn: GlvFn, **kwargs: object) -> Rule:
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if isinstance(seq, GlvSequent):
            yield from fn(seq, supply)
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


def _terms(side: Tuple[object, ...], cls: type) -> List:
    return [t for t in side if isinstance(t, cls)]


def _labeled(side: Tuple[object, ...], cls: Type[Formula]) -> Iterator[LabeledFormula]:
    for t in side:
        if isinstance(t, LabeledFormula) and isinstance(t.formula, cls):
            yield t


def _ann(term: Structure, **extra: object) -> Annotations:
    return dict({'principal': term.text}, **extra)


# Initial sequents and labeled classical rules

def _glv_id(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.ant, Atom):
        if t in s.suc:
            yield (), _ann(t)
            return


def _glv_bot_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.ant, Bot):
        yield (), _ann(t)
        return


def _glv_top_r(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.suc, Top):
        yield (), _ann(t)
        return


def _glv_neg_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.ant, Not):
        yield (s.drop(ant=[t]).add(suc=[LabeledFormula(t.label, t.formula.sub)]),), _ann(t)


def _glv_neg_r(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.suc, Not):
        yield (s.drop(suc=[t]).add(ant=[LabeledFormula(t.label, t.formula.sub)]),), _ann(t)


def _glv_and_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.ant, And):
        x, f = t.label, t.formula
        yield (s.drop(ant=[t]).add(ant=[LabeledFormula(x, f.left),
                                        LabeledFormula(x, f.right)]),), _ann(t)


def _glv_and_r(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.suc, And):
        x, f, rest = t.label, t.formula, s.drop(suc=[t])
        yield (rest.add(suc=[LabeledFormula(x, f.left)]),
               rest.add(suc=[LabeledFormula(x, f.right)])), _ann(t)


def _glv_or_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.ant, Or):
        x, f, rest = t.label, t.formula, s.drop(ant=[t])
        yield (rest.add(ant=[LabeledFormula(x, f.left)]),
               rest.add(ant=[LabeledFormula(x, f.right)])), _ann(t)


def _glv_or_r(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.suc, Or):
        x, f = t.label, t.formula
        yield (s.drop(suc=[t]).add(suc=[LabeledFormula(x, f.left),
                                        LabeledFormula(x, f.right)]),), _ann(t)


def _glv_imp_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.ant, Imp):
        x, f, rest = t.label, t.formula, s.drop(ant=[t])
        yield (rest.add(suc=[LabeledFormula(x, f.left)]),
               rest.add(ant=[LabeledFormula(x, f.right)])), _ann(t)


def _glv_imp_r(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.suc, Imp):
        x, f = t.label, t.formula
        yield (s.drop(suc=[t]).add(ant=[LabeledFormula(x, f.left)],
                                   suc=[LabeledFormula(x, f.right)]),), _ann(t)


# Sphere rules

def _forces_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    """a ||- A on the left: some fresh world y of a satisfies A"""
    for t in _terms(s.ant, Forces):
        y = supply.fresh('y')
        yield (s.drop(ant=[t]).add(ant=[Member(y, t.sphere), LabeledFormula(y, t.formula)]),), \
            _ann(t, world=y)


def _forces_r(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    """a ||- A on the right and x in a: x:A joins the succedent"""
    for t in _terms(s.suc, Forces):
        for m in _terms(s.ant, Member):
            if m.sphere != t.sphere:
                continue
            new = LabeledFormula(m.world, t.formula)
            if new in s.suc:
                continue
            yield (s.add(suc=[new]),), _ann(t, world=m.world)


def _pref_r(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.suc, Pref):
        a = supply.fresh('a')
        f = t.formula
        yield (s.drop(suc=[t]).add(ant=[SphereOf(a, t.label), Forces(a, f.right)],
                                   suc=[Forces(a, f.left)]),), _ann(t, sphere=a)


def _pref_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    for t in _labeled(s.ant, Pref):
        f = t.formula
        for so in _terms(s.ant, SphereOf):
            if so.world != t.label:
                continue
            right, left = Forces(so.sphere, f.right), Forces(so.sphere, f.left)
            if supply.searching and (right in s.suc or left in s.ant):
                continue
            yield (s.add(suc=[right]), s.add(ant=[left])), _ann(t, sphere=so.sphere)


def _sub_l(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    """x in a and a sub b give x in b"""
    for m in _terms(s.ant, Member):
        for inc in _terms(s.ant, Sub):
            if inc.small != m.sphere:
                continue
            new = Member(m.world, inc.big)
            if new in s.ant:
                continue
            yield (s.add(ant=[new]),), {'principal': inc.text, 'member': m.text}


def _nes(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    """Two spheres of one world are comparable"""
    spheres = _terms(s.ant, SphereOf)
    for i, first in enumerate(spheres):
        for second in spheres[i + 1:]:
            a, b = first.sphere, second.sphere
            if first.world != second.world or a == b:
                continue
            if supply.searching and (Sub(a, b) in s.ant or Sub(b, a) in s.ant):
                continue
            yield (s.add(ant=[Sub(a, b)]), s.add(ant=[Sub(b, a)])), \
                {'spheres': [a, b], 'world': first.world}


def _mon(s: GlvSequent, supply: Supply) -> Iterator[Expansion]:
    """a sub b, b ||- A on the right: a ||- A joins the succedent"""
    for inc in _terms(s.ant, Sub):
        for t in _terms(s.suc, Forces):
            if t.sphere != inc.big:
                continue
            new = Forces(inc.small, t.formula)
            if new in s.suc:
                continue
            yield (s.add(suc=[new]),), _ann(t, via=inc.text)


def verify_glv_wk(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    """The premise is a proper subsequent of the conclusion"""
    if len(premises) != 1 or not isinstance(concl, GlvSequent):
        return None
    p = premises[0]
    if not isinstance(p, GlvSequent) or p == concl:
        return None
    if not (set(p.ant) <= set(concl.ant) and set(p.suc) <= set(concl.suc)):
        return None
    dropped = [t.text for t in concl.ant if t not in p.ant]
    dropped += [t.text for t in concl.suc if t not in p.suc]
    return {'dropped': dropped}


def calculus_glv(variant: str = 'core') -> Calculus:
    """G_lV; 'struct' adds (mon) and weakening"""
    if variant not in GLV_VARIANTS:
        raise RuleError(f"unknown G_lV variant '{variant}' (expected one of "
                        f"{', '.join(GLV_VARIANTS)})")
    rules = [
        glv_rule('id', _glv_id, axiom=True),
        glv_rule('bot_l', _glv_bot_l, axiom=True),
        glv_rule('top_r', _glv_top_r, axiom=True),
        glv_rule('neg_l', _glv_neg_l, invertible=True),
        glv_rule('neg_r', _glv_neg_r, invertible=True),
        glv_rule('and_l', _glv_and_l, invertible=True),
        glv_rule('and_r', _glv_and_r, invertible=True),
        glv_rule('or_l', _glv_or_l, invertible=True),
        glv_rule('or_r', _glv_or_r, invertible=True),
        glv_rule('imp_l', _glv_imp_l, invertible=True),
        glv_rule('imp_r', _glv_imp_r, invertible=True),
        glv_rule('forces_l', _forces_l, invertible=True, fresh=1),
        glv_rule('forces_r', _forces_r),
        glv_rule('pref_r', _pref_r, invertible=True, fresh=1),
        glv_rule('pref_l', _pref_l),
        glv_rule('sub_l', _sub_l),
        glv_rule('nes', _nes),
    ]
    calc = Calculus('glv', GlvSequent, 'glv', 'cond', rules,
                    'labeled calculus for Lewis logic V over sphere models')
    if variant == 'struct':
        return calc.extended('glv+struct', [
            glv_rule('mon', _mon, searchable=False),
            Rule('wk', verify=verify_glv_wk, searchable=False),
        ])
    return calc


# IG(V): formulas plus blocks [S <| B] in the succedent

def _lift(local: LocalRule) -> Callable[[Structure, Supply], Iterator[Expansion]]:
    """A Gentzen rule acting on the formula part of a block sequent"""
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if not isinstance(seq, BlockSequent):
            return
        flat = GentzenSequent(seq.ant, seq.suc)
        for premises, ann in local(flat, supply.searching):
            yield tuple(BlockSequent(p.ant, p.suc, seq.blocks) for p in premises), ann
    return expand


def _block_rule(name: str, fn: Callable[[BlockSequent, Supply], Iterator[Expansion]],
                **kwargs: object) -> Rule:
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if isinstance(seq, BlockSequent):
            yield from fn(seq, supply)
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


def _without_block(blocks: Tuple[Block, ...], block: Block) -> Tuple[Block, ...]:
    rest = multiset_minus(blocks, [block])
    assert rest is not None
    return rest


def _ig_bot_l(s: BlockSequent, supply: Supply) -> Iterator[Expansion]:
    if Bot() in s.ant:
        yield (), {'principal': Bot().text}


def _ig_top_r(s: BlockSequent, supply: Supply) -> Iterator[Expansion]:
    if Top() in s.suc:
        yield (), {'principal': Top().text}


def _ig_pref_r(s: BlockSequent, supply: Supply) -> Iterator[Expansion]:
    for f in canon_set(s.suc):
        if not isinstance(f, Pref):
            continue
        suc = multiset_minus(s.suc, [f])
        assert suc is not None
        yield (BlockSequent(s.ant, suc, s.blocks + (Block((f.left,), f.right),)),), \
            {'principal': f.text}


def _ig_pref_l(s: BlockSequent, supply: Supply) -> Iterator[Expansion]:
    for f in canon_set(s.ant):
        if not isinstance(f, Pref):
            continue
        for block in canon_set(s.blocks):
            if supply.searching and f.right in block.sigma:
                continue
            rest = _without_block(s.blocks, block)
            grown = Block(block.sigma + (f.right,), block.target)
            split = Block(block.sigma, f.left)
            yield (BlockSequent(s.ant, s.suc, rest + (grown,)),
                   BlockSequent(s.ant, s.suc, rest + (split, block))), \
                {'principal': f.text, 'block': block.text}


def _ig_com(s: BlockSequent, supply: Supply) -> Iterator[Expansion]:
    blocks = s.blocks
    for i, first in enumerate(blocks):
        for j in range(i + 1, len(blocks)):
            second = blocks[j]
            if supply.searching and (set(first.sigma) <= set(second.sigma)
                                     or set(second.sigma) <= set(first.sigma)):
                continue
            rest = blocks[:i] + blocks[i + 1:j] + blocks[j + 1:]
            union = first.sigma + second.sigma
            yield (BlockSequent(s.ant, s.suc, rest + (Block(union, first.target), second)),
                   BlockSequent(s.ant, s.suc, rest + (first, Block(union, second.target)))), \
                {'blocks': [first.text, second.text]}


def _ig_jump(s: BlockSequent, supply: Supply) -> Iterator[Expansion]:
    for block in canon_set(s.blocks):
        yield (BlockSequent((block.target,), block.sigma),), {'block': block.text}


def calculus_igv() -> Calculus:
    """IG(V): propositional rules on formulas plus the block rules"""
    rules = [
        Rule('id', expand=_lift(id_atomic), axiom=True),
        _block_rule('bot_l', _ig_bot_l, axiom=True),
        _block_rule('top_r', _ig_top_r, axiom=True),
    ]
    rules += [Rule(name, expand=_lift(fn), invertible=True) for name, fn in CLASSICAL]
    rules += [
        _block_rule('pref_r', _ig_pref_r, invertible=True),
        _block_rule('pref_l', _ig_pref_l),
        _block_rule('com', _ig_com),
        _block_rule('jump', _ig_jump),
    ]
    return Calculus('igv', BlockSequent, 'blockseq', 'cond', rules,
                    'structured calculus for Lewis logic V with blocks')
