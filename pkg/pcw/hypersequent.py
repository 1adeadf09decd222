"""
Hypersequent calculi for S5
"""

import logging
from typing import Callable, Final, Iterator, Optional, Tuple

from . import gentzen
from .formula import Box
from .kernel import Annotations, Calculus, Expansion, Rule, Supply
from .sequents import (GentzenSequent, Hypersequent, Structure, canon_set, multiset_minus,
                       remove_one)

LOGGER: Final = logging.getLogger(__name__)


def _split(h: Hypersequent) -> Iterator[Tuple[GentzenSequent, Tuple[GentzenSequent, ...]]]:
    """Each distinct component with the rest of the hypersequent"""
    for comp in canon_set(h.components):
        yield comp, remove_one(h.components, comp)


def lift(name: str, local: gentzen.LocalRule, **kwargs: object) -> Rule:
    """Apply a component-local rule inside a side hypersequent"""
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if not isinstance(seq, Hypersequent):
            return
        for comp, rest in _split(seq):
            for premises, ann in local(comp, supply.searching):
                yield (tuple(Hypersequent(rest + (p,)) for p in premises),
                       dict(ann, component=comp.text))
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


def lift_verify(local: Callable[[GentzenSequent, GentzenSequent], Optional[Annotations]]
                ) -> Callable[[Structure, Tuple[Structure, ...]], Optional[Annotations]]:
    """Unary component rule checked against the given premise"""
    def verify(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
        if len(premises) != 1 or not isinstance(concl, Hypersequent):
            return None
        premise = premises[0]
        assert isinstance(premise, Hypersequent)
        for comp, rest in _split(concl):
            changed = multiset_minus(premise.components, rest)
            if changed is None or len(changed) != 1:
                continue
            ann = local(comp, changed[0])
            if ann is not None:
                return dict(ann, component=comp.text)
        return None
    return verify


def box_l2(h: Hypersequent, searching: bool) -> Iterator[Expansion]:
    """[]A in one component, A added to another"""
    comps = h.components
    for i, ci in enumerate(comps):
        for f in canon_set(ci.ant):
            if not isinstance(f, Box):
                continue
            seen = set()
            for j, cj in enumerate(comps):
                if j == i or cj in seen:
                    continue
                seen.add(cj)
                if searching and f.sub in cj.ant:
                    continue
                rest = tuple(c for k, c in enumerate(comps) if k != j)
                yield ((Hypersequent(rest + (cj.add(ant=(f.sub,)),)),),
                       {'principal': f.text, 'component': cj.text})


def box_r_new(h: Hypersequent, searching: bool) -> Iterator[Expansion]:
    """G |- D, []A | H from G |- D | |- A | H"""
    for comp, rest in _split(h):
        for f in canon_set(comp.suc):
            if isinstance(f, Box):
                reduced = GentzenSequent(comp.ant, remove_one(comp.suc, f))
                yield ((Hypersequent(rest + (reduced, GentzenSequent((), (f.sub,)))),),
                       {'principal': f.text, 'component': comp.text})


def s5_split(h: Hypersequent, searching: bool) -> Iterator[Expansion]:
    """G | []G |- | G' |- D from G | []G, G' |- D"""
    comps = h.components
    for i, ci in enumerate(comps):
        if ci.suc or gentzen.boxed(ci.ant) != ci.ant:
            continue
        for j, cj in enumerate(comps):
            if j == i:
                continue
            rest = tuple(c for k, c in enumerate(comps) if k not in (i, j))
            merged = GentzenSequent(ci.ant + cj.ant, cj.suc)
            yield (Hypersequent(rest + (merged,)),), {'boxed': ci.text, 'component': cj.text}


def _global(fn: Callable[[Hypersequent, bool], Iterator[Expansion]]
            ) -> Callable[[Structure, Supply], Iterator[Expansion]]:
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if isinstance(seq, Hypersequent):
            yield from fn(seq, supply.searching)
    return expand


def verify_ew(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    if len(premises) != 1 or not isinstance(concl, Hypersequent):
        return None
    premise = premises[0]
    assert isinstance(premise, Hypersequent)
    extra = multiset_minus(concl.components, premise.components)
    if extra is None or len(extra) != 1:
        return None
    return {'component': extra[0].text}


def verify_ec(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    if len(premises) != 1 or not isinstance(concl, Hypersequent):
        return None
    premise = premises[0]
    assert isinstance(premise, Hypersequent)
    extra = multiset_minus(premise.components, concl.components)
    if extra is None or len(extra) != 1 or extra[0] not in concl.components:
        return None
    return {'component': extra[0].text}


def _external() -> list:
    return [Rule('ew', verify=verify_ew, searchable=False),
            Rule('ec', verify=verify_ec, searchable=False)]


def _classical() -> list:
    return [lift(name, fn, invertible=True) for name, fn in gentzen.CLASSICAL]


def calculus_hs5_a(variant: str = 'core') -> Calculus:
    """Hypersequent image of the labeled S5 calculus"""
    rules = [lift('id', gentzen.id_atomic, axiom=True)] + _classical() + [
        lift('box_l1', gentzen.box_t),
        Rule('box_l2', expand=_global(box_l2)),
        Rule('box_r', expand=_global(box_r_new)),
    ]
    calc = Calculus('hs5a', Hypersequent, 'hyper', 'modal', rules,
                    'hypersequent calculus for S5 with component rules')
    if variant == 'struct':
        return calc.extended('hs5a+struct', _external())
    return calc


def calculus_hs5_b() -> Calculus:
    """Hypersequent S4 with the splitting rule (s5') and external structural rules"""
    rules = [lift('id', gentzen.id_any, axiom=True)] + _classical() + [
        lift('box_l', gentzen.box_t),
        Rule('box_r', expand=lift('box_r', gentzen.box_4).expand,
             verify=lift_verify(gentzen.verify_box_4)),
        Rule('s5p', expand=_global(s5_split)),
    ] + _external()
    return Calculus('hs5b', Hypersequent, 'hyper', 'modal', rules,
                    'hypersequent S4 with (s5\')')
