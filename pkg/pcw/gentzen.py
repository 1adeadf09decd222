"""
Gentzen sequent calculi: S(CP), S(IL) and the S4-style calculus with (5) and cut
"""

import logging
from typing import Callable, Final, Iterable, Iterator, List, Optional, Tuple, Type

from .formula import And, Atom, Bot, Box, Formula, Imp, Not, Or, Sup
from .kernel import Annotations, Calculus, Expansion, Rule, Supply, VerifyFn
from .sequents import GentzenSequent, Structure, canon_set, multiset_minus, remove_one

LOGGER: Final = logging.getLogger(__name__)

LocalExpansion = Tuple[Tuple[GentzenSequent, ...], Annotations]
LocalRule = Callable[[GentzenSequent, bool], Iterator[LocalExpansion]]


def _principal(side: Tuple[Formula, ...],
               cls: Type[Formula]) -> Iterator[Tuple[Formula, Tuple[Formula, ...]]]:
    for f in canon_set(side):
        if isinstance(f, cls):
            yield f, remove_one(side, f)


def _ann(f: Formula) -> Annotations:
    return {'principal': f.text}


# Component-local rules, shared with the hypersequent calculi

def id_atomic(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f in canon_set(s.ant):
        if isinstance(f, Atom) and f in s.suc:
            yield (), _ann(f)
            return


def id_any(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f in canon_set(s.ant):
        if f in s.suc:
            yield (), _ann(f)
            return


def bot_l(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    if Bot() in s.ant:
        yield (), _ann(Bot())


def neg_l(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.ant, Not):
        yield (GentzenSequent(rest, s.suc + (f.sub,)),), _ann(f)


def neg_r(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.suc, Not):
        yield (GentzenSequent(s.ant + (f.sub,), rest),), _ann(f)


def or_l(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.ant, Or):
        yield (GentzenSequent(rest + (f.left,), s.suc),
               GentzenSequent(rest + (f.right,), s.suc)), _ann(f)


def or_r(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.suc, Or):
        yield (GentzenSequent(s.ant, rest + (f.left, f.right)),), _ann(f)


def and_l(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.ant, And):
        yield (GentzenSequent(rest + (f.left, f.right), s.suc),), _ann(f)


def and_r(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.suc, And):
        yield (GentzenSequent(s.ant, rest + (f.left,)),
               GentzenSequent(s.ant, rest + (f.right,))), _ann(f)


def imp_l(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.ant, Imp):
        yield (GentzenSequent(rest, s.suc + (f.left,)),
               GentzenSequent(rest + (f.right,), s.suc)), _ann(f)


def imp_r(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    for f, rest in _principal(s.suc, Imp):
        yield (GentzenSequent(s.ant + (f.left,), rest + (f.right,)),), _ann(f)


def sup_l(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    """A => B stays in both premises; search skips it once either side is present"""
    for f, _ in _principal(s.ant, Sup):
        if searching and (f.right in s.ant or f.left in s.suc):
            continue
        yield (GentzenSequent(s.ant + (f.right,), s.suc),
               GentzenSequent(s.ant, s.suc + (f.left,))), _ann(f)


def sup_r(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    """The succedent context is discarded"""
    for f, _ in _principal(s.suc, Sup):
        yield (GentzenSequent(s.ant + (f.left,), (f.right,)),), _ann(f)


def box_t(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    """[]A stays; search skips it once A is in the antecedent"""
    for f, _ in _principal(s.ant, Box):
        if searching and f.sub in s.ant:
            continue
        yield (GentzenSequent(s.ant + (f.sub,), s.suc),), _ann(f)


def boxed(side: Iterable[Formula]) -> Tuple[Formula, ...]:
    return tuple(f for f in side if isinstance(f, Box))


def box_4(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    """[]G |- A / []G, S |- []A, D, keeping every boxed antecedent formula"""
    for f, _ in _principal(s.suc, Box):
        yield (GentzenSequent(boxed(s.ant), (f.sub,)),), _ann(f)


def verify_box_4(concl: GentzenSequent, premise: GentzenSequent) -> Optional[Annotations]:
    if len(premise.suc) != 1 or boxed(premise.ant) != premise.ant:
        return None
    if multiset_minus(concl.ant, premise.ant) is None:
        return None
    principal = Box(premise.suc[0])
    if principal not in concl.suc:
        return None
    return _ann(principal)


def box_5(s: GentzenSequent, searching: bool = False) -> Iterator[LocalExpansion]:
    """[]G |- A, []D / []G |- []A, []D"""
    if boxed(s.ant) != s.ant or boxed(s.suc) != s.suc:
        return
    for f, rest in _principal(s.suc, Box):
        yield (GentzenSequent(s.ant, rest + (f.sub,)),), _ann(f)


# Rules defined by matching against given premises

def verify_weakening(side: str) -> VerifyFn:
    def verify(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
        if len(premises) != 1 or not isinstance(concl, GentzenSequent):
            return None
        p = premises[0]
        assert isinstance(p, GentzenSequent)
        if side == 'l':
            extra, same = multiset_minus(concl.ant, p.ant), p.suc == concl.suc
        else:
            extra, same = multiset_minus(concl.suc, p.suc), p.ant == concl.ant
        if extra is None or len(extra) != 1 or not same:
            return None
        return _ann(extra[0])
    return verify


def verify_contraction(side: str) -> VerifyFn:
    def verify(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
        if len(premises) != 1 or not isinstance(concl, GentzenSequent):
            return None
        p = premises[0]
        assert isinstance(p, GentzenSequent)
        if side == 'l':
            extra, same, keep = multiset_minus(p.ant, concl.ant), p.suc == concl.suc, concl.ant
        else:
            extra, same, keep = multiset_minus(p.suc, concl.suc), p.ant == concl.ant, concl.suc
        if extra is None or len(extra) != 1 or not same or extra[0] not in keep:
            return None
        return _ann(extra[0])
    return verify


def verify_cut(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    """G |- A, D and G, A |- D give G |- D"""
    if len(premises) != 2 or not isinstance(concl, GentzenSequent):
        return None
    for left, right in (premises, premises[::-1]):
        assert isinstance(left, GentzenSequent) and isinstance(right, GentzenSequent)
        if left.ant != concl.ant or right.suc != concl.suc:
            continue
        a = multiset_minus(left.suc, concl.suc)
        b = multiset_minus(right.ant, concl.ant)
        if a is not None and b is not None and len(a) == 1 and a == b:
            return {'cut': a[0].text}
    return None


def local_rule(name: str, local: LocalRule, **kwargs: object) -> Rule:
    """A Gentzen rule from a component-local expansion"""
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if isinstance(seq, GentzenSequent):
            yield from local(seq, supply.searching)
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


def _verify_unary(local_verify: Callable[[GentzenSequent, GentzenSequent], Optional[Annotations]]
                  ) -> VerifyFn:
    def verify(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
        if len(premises) != 1 or not isinstance(concl, GentzenSequent):
            return None
        premise = premises[0]
        assert isinstance(premise, GentzenSequent)
        return local_verify(concl, premise)
    return verify


CLASSICAL: Final[List[Tuple[str, LocalRule]]] = [
    ('neg_l', neg_l), ('neg_r', neg_r), ('or_l', or_l), ('or_r', or_r),
    ('and_l', and_l), ('and_r', and_r), ('imp_l', imp_l), ('imp_r', imp_r),
]


def structural_rules() -> List[Rule]:
    return [
        Rule('wk_l', verify=verify_weakening('l'), searchable=False),
        Rule('wk_r', verify=verify_weakening('r'), searchable=False),
        Rule('cr_l', verify=verify_contraction('l'), searchable=False),
        Rule('cr_r', verify=verify_contraction('r'), searchable=False),
        Rule('cut', verify=verify_cut, searchable=False),
    ]


def calculus_scp(variant: str = 'core') -> Calculus:
    """S(CP): (id) plus the eight logical rules; '+struct' adds weakening, contraction, cut"""
    rules = [local_rule('id', id_atomic, axiom=True)]
    rules += [local_rule(name, fn, invertible=True) for name, fn in CLASSICAL]
    calc = Calculus('scp', GentzenSequent, 'gentzen', 'cpc', rules,
                    'classical propositional sequent calculus')
    if variant == 'struct':
        return calc.extended('scp+struct', structural_rules())
    return calc


def calculus_sil(variant: str = 'core') -> Calculus:
    """Multi-succedent intuitionistic calculus S(IL)"""
    rules = [
        local_rule('id', id_atomic, axiom=True),
        local_rule('bot_l', bot_l, axiom=True),
        local_rule('and_l', and_l, invertible=True),
        local_rule('or_r', or_r, invertible=True),
        local_rule('or_l', or_l, invertible=True),
        local_rule('and_r', and_r, invertible=True),
        local_rule('sup_l', sup_l),
        local_rule('sup_r', sup_r),
    ]
    calc = Calculus('sil', GentzenSequent, 'gentzen', 'int', rules,
                    'intuitionistic sequent calculus')
    if variant == 'struct':
        return calc.extended('sil+struct', structural_rules())
    return calc


def calculus_s4_5_cut() -> Calculus:
    """S4-style modal sequent calculus with (5) and context-sharing cut"""
    rules = [
        local_rule('id', id_any, axiom=True),
        local_rule('neg_l', neg_l, invertible=True),
        local_rule('neg_r', neg_r, invertible=True),
        local_rule('imp_l', imp_l, invertible=True),
        local_rule('imp_r', imp_r, invertible=True),
        local_rule('box_l', box_t),
        Rule('box_r', expand=local_rule('box_r', box_4).expand,
             verify=_verify_unary(verify_box_4)),
        local_rule('box_5', box_5),
        Rule('wk_l', verify=verify_weakening('l'), searchable=False),
        Rule('wk_r', verify=verify_weakening('r'), searchable=False),
        Rule('cut', verify=verify_cut, searchable=False),
    ]
    return Calculus('s45cut', GentzenSequent, 'gentzen', 'modal', rules,
                    'S4 sequent calculus with rule (5) and cut')
