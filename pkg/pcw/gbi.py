"""
Labeled calculus GBI for BI over resource-monoid constraints
"""

import logging
from typing import Any, Callable, Final, Iterator, List, Optional, Tuple, Type

from .formula import And, Bot, Formula, MTop, Or, Star, Sup, Top, Wand
from .kernel import Annotations, Calculus, Expansion, Rule, SearchResult, Supply, search
from .sequents import (UNITS, Compound, Constraint, GbiSequent, LabeledFormula, Structure,
                       canon_set, multiset_minus, remove_one)

LOGGER: Final = logging.getLogger(__name__)

GbiFn = Callable[[GbiSequent, Supply], Iterator[Expansion]]

# Unit label of each composition: m for m(.,.), a for a(.,.)
UNIT: Final = {'m': 'm', 'a': 'a'}
ABSURD: Final = 'abs'


def gbi_rule(name: str, fn: GbiFn, **kwargs: Any) -> Rule:
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if isinstance(seq, GbiSequent):
            yield from fn(seq, supply)
    return Rule(name, expand=expand, **kwargs)


def at(label: Any, f: Formula) -> LabeledFormula:
    return LabeledFormula(label, f)


def le(lo: Any, hi: Any) -> Constraint:
    return Constraint(lo, hi)


def _principal(side: Tuple[LabeledFormula, ...], cls: Type[Formula]
               ) -> Iterator[Tuple[LabeledFormula, Tuple[LabeledFormula, ...]]]:
    for lf in canon_set(side):
        if isinstance(lf.formula, cls):
            yield lf, remove_one(side, lf)


def _ann(lf: LabeledFormula, **extra: Any) -> Annotations:
    return dict({'principal': lf.text}, **extra)


def _compounds(s: GbiSequent, op: str) -> Iterator[Tuple[Constraint, Compound]]:
    for c in canon_set(s.constraints):
        if isinstance(c.lo, Compound) and c.lo.op == op:
            yield c, c.lo


def _extend(s: GbiSequent, constraints: Tuple[Constraint, ...] = (),
            ant: Tuple[LabeledFormula, ...] = (), suc: Tuple[LabeledFormula, ...] = ()
            ) -> GbiSequent:
    return GbiSequent(s.constraints + constraints, s.ant + ant, s.suc + suc)


# Axioms

def _id(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    for lf in canon_set(s.ant):
        if lf in s.suc:
            yield (), _ann(lf)
            return


def _bot_r(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    """Anything holds at a label above the absurd resource"""
    for c in canon_set(s.constraints):
        if c.lo != ABSURD:
            continue
        for lf in canon_set(s.suc):
            if lf.label == c.hi:
                yield (), _ann(lf)
                return


def _unit_r(cls: Type[Formula], unit: str) -> GbiFn:
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for lf in canon_set(s.suc):
            if isinstance(lf.formula, cls) and le(unit, lf.label) in s.constraints:
                yield (), _ann(lf)
                return
    return fn


# Logical rules

def _unit_l(cls: Type[Formula], unit: str) -> GbiFn:
    """l:bot, l:mtop, l:top become abs <= l, m <= l, a <= l"""
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for lf, rest in _principal(s.ant, cls):
            yield (GbiSequent(s.constraints + (le(unit, lf.label),), rest, s.suc),), _ann(lf)
    return fn


def _arrow_l(cls: Type[Formula], op: str) -> GbiFn:
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for lf in canon_set(s.ant):
            if not isinstance(lf.formula, cls):
                continue
            for c, comp in _compounds(s, op):
                if comp.left != lf.label:
                    continue
                first = at(comp.right, lf.formula.left)
                second = at(c.hi, lf.formula.right)
                if supply.searching and first in s.suc and second in s.ant:
                    continue
                yield (_extend(s, suc=(first,)), _extend(s, ant=(second,))), \
                    _ann(lf, constraint=c.text)
    return fn


def _arrow_r(cls: Type[Formula], op: str) -> GbiFn:
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for lf, rest in _principal(s.suc, cls):
            l1, l2 = supply.fresh('l'), supply.fresh('l')
            premise = GbiSequent(s.constraints + (le(Compound(op, lf.label, l1), l2),),
                                 s.ant + (at(l1, lf.formula.left),),
                                 rest + (at(l2, lf.formula.right),))
            yield (premise,), _ann(lf)
    return fn


def _conj_l(cls: Type[Formula], op: str) -> GbiFn:
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for lf, rest in _principal(s.ant, cls):
            l1, l2 = supply.fresh('l'), supply.fresh('l')
            premise = GbiSequent(s.constraints + (le(Compound(op, l1, l2), lf.label),),
                                 rest + (at(l1, lf.formula.left), at(l2, lf.formula.right)),
                                 s.suc)
            yield (premise,), _ann(lf)
    return fn


def _conj_r(cls: Type[Formula], op: str, keep: bool) -> GbiFn:
    """Split l:A o B along a constraint o(l1, l2) <= l; (*R) keeps the principal"""
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for lf, rest in _principal(s.suc, cls):
            base = s.suc if keep else rest
            for c, comp in _compounds(s, op):
                if c.hi != lf.label:
                    continue
                left, right = at(comp.left, lf.formula.left), at(comp.right, lf.formula.right)
                if supply.searching and keep and left in s.suc and right in s.suc:
                    continue
                yield (GbiSequent(s.constraints, s.ant, base + (left,)),
                       GbiSequent(s.constraints, s.ant, base + (right,))), \
                    _ann(lf, constraint=c.text)
    return fn


def _or_l(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.ant, Or):
        yield (GbiSequent(s.constraints, rest + (at(lf.label, lf.formula.left),), s.suc),
               GbiSequent(s.constraints, rest + (at(lf.label, lf.formula.right),), s.suc)), \
            _ann(lf)


def _or_r(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.suc, Or):
        for i, part in enumerate((lf.formula.left, lf.formula.right), 1):
            yield (GbiSequent(s.constraints, s.ant, rest + (at(lf.label, part),)),), \
                _ann(lf, side=i)


# Structural rules: constraints are only ever added when not yet present

def occurring(s: GbiSequent) -> List[Any]:
    """Atomic labels of the sequent together with the units"""
    found = {x for x in s.all_labels() if not isinstance(x, Compound)}
    return sorted(found | set(UNITS))


def _adding(s: GbiSequent, new: Constraint, **ann: Any) -> Iterator[Expansion]:
    if new not in s.constraints:
        yield (_extend(s, constraints=(new,)),), dict(ann, added=new.text)


def _refl(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    for x in occurring(s):
        yield from _adding(s, le(x, x))


def _trans(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    cons = canon_set(s.constraints)
    for c1 in cons:
        for c2 in cons:
            if c1 is not c2 and c1.hi == c2.lo:
                yield from _adding(s, le(c1.lo, c2.hi))


def _idem(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    for x in occurring(s):
        yield from _adding(s, le(Compound('a', x, x), x))


def _unit_law(op: str, first: bool) -> GbiFn:
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for x in sorted(s.labels()):
            comp = Compound(op, x, UNIT[op]) if first else Compound(op, UNIT[op], x)
            yield from _adding(s, le(comp, x))
    return fn


def _exchange(op: str) -> GbiFn:
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for c, comp in _compounds(s, op):
            swapped = le(Compound(op, comp.right, comp.left), c.hi)
            rest = remove_one(s.constraints, c)
            yield (GbiSequent(rest + (swapped,), s.ant, s.suc),), {'constraint': c.text}
    return fn


def _assoc(op: str, first: bool) -> GbiFn:
    """(A1): r(l4,l3) <= l1, r(l1,l2) <= l become r(l3,l2) <= l0, r(l4,l0) <= l;
    (A2): r(l4,l3) <= l2, r(l1,l2) <= l become r(l1,l4) <= l0, r(l0,l3) <= l"""
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for outer, top in _compounds(s, op):
            inner_hi = top.left if first else top.right
            for inner, low in _compounds(s, op):
                if inner is outer or inner.hi != inner_hi:
                    continue
                rest = multiset_minus(s.constraints, (outer, inner))
                if rest is None:
                    continue
                l0 = supply.fresh('l')
                if first:
                    new = (le(Compound(op, low.right, top.right), l0),
                           le(Compound(op, low.left, l0), outer.hi))
                else:
                    new = (le(Compound(op, top.left, low.left), l0),
                           le(Compound(op, l0, low.right), outer.hi))
                yield (GbiSequent(rest + new, s.ant, s.suc),), \
                    {'constraints': [inner.text, outer.text]}
    return fn


def _proj(op: str, i: int) -> GbiFn:
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        for c, comp in _compounds(s, op):
            kept, other = (comp.left, comp.right) if i == 1 else (comp.right, comp.left)
            if op == 'm' and other not in ('m', ABSURD):
                continue
            yield from _adding(s, le(kept, c.hi), constraint=c.text)
    return fn


def _compat(op: str, i: int) -> GbiFn:
    """(C1): l0 <= l1 with r(l1,l2) <= l adds r(l0,l2) <= l; (C2) acts on the second slot"""
    def fn(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
        cons = canon_set(s.constraints)
        for c, comp in _compounds(s, op):
            slot = comp.left if i == 1 else comp.right
            for below in cons:
                if isinstance(below.lo, Compound) or below.hi != slot or below.lo == slot:
                    continue
                new = Compound(op, below.lo, comp.right) if i == 1 \
                    else Compound(op, comp.left, below.lo)
                yield from _adding(s, le(new, c.hi), constraint=c.text, using=below.text)
    return fn


def _kripke_l(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    """l <= l1 moves l:A on the left up to l1:A"""
    for c in canon_set(s.constraints):
        if isinstance(c.lo, Compound) or c.lo == c.hi:
            continue
        for lf, rest in _principal(s.ant, Formula):
            if lf.label == c.lo:
                yield (GbiSequent(s.constraints, rest + (at(c.hi, lf.formula),), s.suc),), \
                    _ann(lf, constraint=c.text)


def _kripke_r(s: GbiSequent, supply: Supply) -> Iterator[Expansion]:
    """l1 <= l moves l:A on the right down to l1:A"""
    for c in canon_set(s.constraints):
        if isinstance(c.lo, Compound) or c.lo == c.hi:
            continue
        for lf, rest in _principal(s.suc, Formula):
            if lf.label == c.hi:
                moved = at(c.lo, lf.formula)
                if supply.searching and moved in s.suc:
                    continue
                yield (GbiSequent(s.constraints, s.ant, rest + (moved,)),), \
                    _ann(lf, constraint=c.text)


def _parts(s: GbiSequent) -> Tuple[Any, ...]:
    return s.constraints + s.ant


def verify_weakening(side: str) -> Callable[[Structure, Tuple[Structure, ...]],
                                             Optional[Annotations]]:
    def verify(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
        if len(premises) != 1:
            return None
        p = premises[0]
        if not isinstance(concl, GbiSequent) or not isinstance(p, GbiSequent):
            return None
        if side == 'l':
            if p.suc != concl.suc:
                return None
            extra = multiset_minus(_parts(concl), _parts(p))
        else:
            if _parts(p) != _parts(concl):
                return None
            extra = multiset_minus(concl.suc, p.suc)
        if not extra:
            return None
        return {'dropped': [x.text for x in extra]}
    return verify


def verify_contraction(side: str) -> Callable[[Structure, Tuple[Structure, ...]],
                                               Optional[Annotations]]:
    def verify(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
        if len(premises) != 1:
            return None
        p = premises[0]
        if not isinstance(concl, GbiSequent) or not isinstance(p, GbiSequent):
            return None
        if side == 'l':
            if p.suc != concl.suc:
                return None
            copies = multiset_minus(_parts(p), _parts(concl))
            home = _parts(concl)
        else:
            if _parts(p) != _parts(concl):
                return None
            copies = multiset_minus(p.suc, concl.suc)
            home = concl.suc
        if not copies or any(x not in home for x in copies):
            return None
        return {'copied': [x.text for x in copies]}
    return verify


def calculus_gbi() -> Calculus:
    """GBI; the associativity, unit, exchange and reflexivity rules are left to checking"""
    rules = [
        gbi_rule('id', _id, axiom=True),
        gbi_rule('bot_r', _bot_r, axiom=True),
        gbi_rule('mtop_r', _unit_r(MTop, 'm'), axiom=True),
        gbi_rule('top_r', _unit_r(Top, 'a'), axiom=True),
        gbi_rule('bot_l', _unit_l(Bot, ABSURD), invertible=True),
        gbi_rule('mtop_l', _unit_l(MTop, 'm'), invertible=True),
        gbi_rule('top_l', _unit_l(Top, 'a'), invertible=True),
        gbi_rule('and_l', _conj_l(And, 'a'), invertible=True, fresh=2),
        gbi_rule('star_l', _conj_l(Star, 'm'), invertible=True, fresh=2),
        gbi_rule('sup_r', _arrow_r(Sup, 'a'), invertible=True, fresh=2),
        gbi_rule('wand_r', _arrow_r(Wand, 'm'), invertible=True, fresh=2),
        gbi_rule('or_l', _or_l, invertible=True),
        gbi_rule('or_r', _or_r),
        gbi_rule('and_r', _conj_r(And, 'a', keep=False)),
        gbi_rule('star_r', _conj_r(Star, 'm', keep=True)),
        gbi_rule('sup_l', _arrow_l(Sup, 'a')),
        gbi_rule('wand_l', _arrow_l(Wand, 'm')),
        gbi_rule('p1_a', _proj('a', 1)),
        gbi_rule('p2_a', _proj('a', 2)),
        gbi_rule('p1_m', _proj('m', 1)),
        gbi_rule('p2_m', _proj('m', 2)),
        gbi_rule('c1_a', _compat('a', 1)),
        gbi_rule('c2_a', _compat('a', 2)),
        gbi_rule('c1_m', _compat('m', 1)),
        gbi_rule('c2_m', _compat('m', 2)),
        gbi_rule('k_r', _kripke_r),
        gbi_rule('k_l', _kripke_l, searchable=False),
        gbi_rule('t', _trans, searchable=False),
        gbi_rule('r', _refl, searchable=False),
        gbi_rule('i_a', _idem, searchable=False),
        gbi_rule('u1_m', _unit_law('m', True), searchable=False),
        gbi_rule('u2_m', _unit_law('m', False), searchable=False),
        gbi_rule('u1_a', _unit_law('a', True), searchable=False),
        gbi_rule('u2_a', _unit_law('a', False), searchable=False),
        gbi_rule('e_m', _exchange('m'), searchable=False),
        gbi_rule('e_a', _exchange('a'), searchable=False),
        gbi_rule('a1_m', _assoc('m', True), searchable=False, fresh=1),
        gbi_rule('a2_m', _assoc('m', False), searchable=False, fresh=1),
        gbi_rule('a1_a', _assoc('a', True), searchable=False, fresh=1),
        gbi_rule('a2_a', _assoc('a', False), searchable=False, fresh=1),
        Rule('w_l', verify=verify_weakening('l'), searchable=False),
        Rule('w_r', verify=verify_weakening('r'), searchable=False),
        Rule('c_l', verify=verify_contraction('l'), searchable=False),
        Rule('c_r', verify=verify_contraction('r'), searchable=False),
    ]
    return Calculus('gbi', GbiSequent, 'gbi', 'bi', rules,
                    'labeled calculus for BI over resource constraints')


def theorem_sequent(f: Formula, label: str = 'l') -> GbiSequent:
    """m <= l |- l:f"""
    return GbiSequent((le('m', label),), (), (at(label, f),))


def gbi_theorem(f: Formula, depth: int, max_nodes: int = 200000) -> SearchResult:
    return search(calculus_gbi(), theorem_sequent(f), depth, max_nodes)
