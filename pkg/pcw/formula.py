"""
Formula syntax trees shared by every logic of the workbench
"""

import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Any, Callable, Dict, Final, FrozenSet, Iterable, Iterator, List, Tuple, Type

from .errors import LogicError, ParseError

LOGGER: Final = logging.getLogger(__name__)

# Logic identifiers. 'kt' is the full tense language accepted by to_nnf;
# 'tense' is its negation normal form.
LOGICS: Final = ('cpc', 'modal', 'tense', 'kt', 'int', 'cond', 'bi')

KEYWORDS: Final = frozenset({'top', 'bot', 'mtop'})


class Formula:
    """Base class of formula nodes; equality is equality of printed text"""

    prec: int = 0

    @cached_property
    def text(self) -> str:
        return pretty(self)

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.text}>"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Formula) and self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)

    def __lt__(self, other: 'Formula') -> bool:
        return self.text < other.text

    def children(self) -> Tuple['Formula', ...]:
        return ()


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, eq=False)
class Top(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    pass


@dataclass(frozen=True, eq=False)
class MTop(Formula):
    """Multiplicative unit I*"""


@dataclass(frozen=True, eq=False)
class Unary(Formula):
    sub: Formula
    prec = 1
    symbol = ''

    def children(self) -> Tuple[Formula, ...]:
        return (self.sub,)


@dataclass(frozen=True, eq=False)
class Not(Unary):
    symbol = '~'


@dataclass(frozen=True, eq=False)
class Box(Unary):
    symbol = '[]'


@dataclass(frozen=True, eq=False)
class Dia(Unary):
    symbol = '<>'


@dataclass(frozen=True, eq=False)
class BBox(Unary):
    """Past necessity (black box)"""
    symbol = '[b]'


@dataclass(frozen=True, eq=False)
class BDia(Unary):
    """Past possibility (black diamond)"""
    symbol = '<b>'


@dataclass(frozen=True, eq=False)
class Binary(Formula):
    left: Formula
    right: Formula
    symbol = ''

    def children(self) -> Tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class And(Binary):
    prec = 2
    symbol = '/\\'


@dataclass(frozen=True, eq=False)
class Star(Binary):
    prec = 2
    symbol = '*'


@dataclass(frozen=True, eq=False)
class Or(Binary):
    prec = 3
    symbol = '\\/'


@dataclass(frozen=True, eq=False)
class Imp(Binary):
    """Classical implication"""
    prec = 4
    symbol = '->'


@dataclass(frozen=True, eq=False)
class Sup(Binary):
    """Intuitionistic / additive implication"""
    prec = 4
    symbol = '=>'


@dataclass(frozen=True, eq=False)
class Wand(Binary):
    """Multiplicative implication"""
    prec = 4
    symbol = '-*'


@dataclass(frozen=True, eq=False)
class Pref(Binary):
    """Comparative plausibility"""
    prec = 4
    symbol = '=<'


RIGHT_ASSOC = 4


def pretty(f: Formula) -> str:
    """Print a formula in the ASCII surface syntax with minimal parentheses"""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return 'top'
    if isinstance(f, Bot):
        return 'bot'
    if isinstance(f, MTop):
        return 'mtop'
    if isinstance(f, Unary):
        inner = f.sub.text
        if f.sub.prec > 1:
            inner = f"({inner})"
        return f"{f.symbol}{inner}"
    if isinstance(f, Binary):
        left, right = f.left.text, f.right.text
        if f.prec == RIGHT_ASSOC:
            if f.left.prec >= f.prec:
                left = f"({left})"
            if f.right.prec > f.prec:
                right = f"({right})"
        else:
            if f.left.prec > f.prec:
                left = f"({left})"
            if f.right.prec >= f.prec:
                right = f"({right})"
        return f"{left} {f.symbol} {right}"
    raise TypeError(f"not a formula: {f!r}")


# Per-logic node classes
_ALLOWED: Dict[str, Tuple[Type[Formula], ...]] = {
    'cpc': (Atom, Not, And, Or, Imp),
    'modal': (Atom, Not, Imp, Box),
    'tense': (Atom, Not, And, Or, Dia, Box, BDia, BBox),
    'kt': (Atom, Not, And, Or, Imp, Dia, Box, BDia, BBox),
    'int': (Atom, Bot, And, Or, Sup),
    'cond': (Atom, Top, Bot, Not, And, Or, Imp, Pref),
    'bi': (Atom, MTop, Top, Bot, Star, Wand, And, Or, Sup),
}


def check_logic(logic: str) -> str:
    if logic not in LOGICS:
        raise LogicError(f"unknown logic '{logic}' (expected one of {', '.join(LOGICS)})")
    return logic


def well_formed(f: Formula, logic: str) -> None:
    """Raise LogicError unless every node of f belongs to the logic's grammar"""
    allowed = _ALLOWED[check_logic(logic)]
    for node in walk(f):
        if not isinstance(node, allowed):
            raise LogicError(f"connective '{_name(node)}' is not allowed in {logic}: {f}")
        if logic == 'tense' and isinstance(node, Not) and not isinstance(node.sub, Atom):
            raise LogicError(f"tense formulas are in negation normal form: {f}")


def _name(node: Formula) -> str:
    if isinstance(node, (Unary, Binary)):
        return node.symbol
    return pretty(node)


def walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def atoms(f: Formula) -> FrozenSet[str]:
    return frozenset(node.name for node in walk(f) if isinstance(node, Atom))


def subformulas(f: Formula) -> FrozenSet[Formula]:
    return frozenset(walk(f))


def size(f: Formula) -> int:
    """Number of connective and atom occurrences"""
    return sum(1 for _ in walk(f))


def conj(parts: Iterable[Formula], op: Callable[[Formula, Formula], Formula] = And,
         unit: Formula = Top()) -> Formula:
    """Left-nested conjunction; the empty conjunction is the unit"""
    items = list(parts)
    if not items:
        return unit
    return reduce(op, items)


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-nested disjunction; the empty disjunction is bot"""
    return conj(parts, Or, Bot())


def conditional(a: Formula, b: Formula) -> Formula:
    """Derived Lewis conditional A > B := (bot =< A) \\/ ~(A /\\ ~B =< A)"""
    return Or(Pref(Bot(), a), Not(Pref(And(a, Not(b)), a)))


def neg_int(a: Formula) -> Formula:
    """Intuitionistic negation A => bot"""
    return Sup(a, Bot())


def to_nnf(f: Formula) -> Formula:
    """Negation normal form of a full tense formula"""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return _neg_nnf(f.sub)
    if isinstance(f, Imp):
        return Or(_neg_nnf(f.left), to_nnf(f.right))
    if isinstance(f, (And, Or)):
        return type(f)(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, (Box, Dia, BBox, BDia)):
        return type(f)(to_nnf(f.sub))
    raise LogicError(f"to_nnf expects a tense formula, got {f}")


_DUAL: Dict[Type[Formula], Type[Formula]] = {Box: Dia, Dia: Box, BBox: BDia, BDia: BBox}


def _neg_nnf(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return Not(f)
    if isinstance(f, Not):
        return to_nnf(f.sub)
    if isinstance(f, Imp):
        return And(to_nnf(f.left), _neg_nnf(f.right))
    if isinstance(f, Or):
        return And(_neg_nnf(f.left), _neg_nnf(f.right))
    if isinstance(f, And):
        return Or(_neg_nnf(f.left), _neg_nnf(f.right))
    if isinstance(f, (Box, Dia, BBox, BDia)):
        return _DUAL[type(f)](_neg_nnf(f.sub))
    raise LogicError(f"to_nnf expects a tense formula, got {f}")


def nnf_negate(f: Formula) -> Formula:
    """NNF of the negation of an NNF formula"""
    return _neg_nnf(f)


# Structured serialization: nested arrays
_TAGS: Dict[Type[Formula], str] = {
    Atom: 'atom', Top: 'top', Bot: 'bot', MTop: 'mtop', Not: 'not', Box: 'box',
    Dia: 'dia', BBox: 'bbox', BDia: 'bdia', And: 'and', Star: 'star', Or: 'or',
    Imp: 'imp', Sup: 'sup', Wand: 'wand', Pref: 'pref',
}
_BY_TAG: Dict[str, Type[Formula]] = {tag: cls for cls, tag in _TAGS.items()}


def to_json(f: Formula) -> List[Any]:
    if isinstance(f, Atom):
        return ['atom', f.name]
    return [_TAGS[type(f)]] + [to_json(c) for c in f.children()]


def from_json(data: Any) -> Formula:
    if not isinstance(data, list) or not data or data[0] not in _BY_TAG:
        raise ParseError(f"malformed formula array: {data!r}")
    cls = _BY_TAG[data[0]]
    if cls is Atom:
        return Atom(data[1])
    return cls(*(from_json(d) for d in data[1:]))
