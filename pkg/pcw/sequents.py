"""
Sequent shapes: Gentzen sequents, hypersequents, nested and labeled sequents,
block sequents, bunches and display structures
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from .errors import ShapeError
from .formula import (And, BBox, Bot, Box, Formula, Imp, MTop, Or, Pref, Star, Sup,
                      Top, conj, disj)


def canon(items: Iterable[Any]) -> Tuple[Any, ...]:
    """Multiset normal form: a tuple sorted by printed text"""
    return tuple(sorted(items, key=str))


def canon_set(items: Iterable[Any]) -> Tuple[Any, ...]:
    """Set normal form: deduplicated, sorted by printed text"""
    return canon({str(item): item for item in items}.values())


def _join(items: Iterable[Any]) -> str:
    return ', '.join(str(item) for item in items)


def _turnstile(left: str, right: str) -> str:
    return f"{left} |- {right}".strip()


def remove_one(items: Tuple[Any, ...], item: Any) -> Tuple[Any, ...]:
    """Remove one occurrence of item from a canonical tuple"""
    index = items.index(item)
    return items[:index] + items[index + 1:]


def multiset_minus(big: Tuple[Any, ...], small: Iterable[Any]) -> Optional[Tuple[Any, ...]]:
    """big - small as multisets, or None when small is not contained in big"""
    rest = list(big)
    for item in small:
        if item not in rest:
            return None
        rest.remove(item)
    return tuple(rest)


class Structure:
    """Base for printed, text-compared structures"""

    @cached_property
    def text(self) -> str:
        return self.render()

    def render(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.text}>"

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.text == other.text  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.text))

    def __lt__(self, other: 'Structure') -> bool:
        return self.text < other.text

    def labels(self) -> FrozenSet[str]:
        return frozenset()


# Gentzen sequents and hypersequents

@dataclass(frozen=True, eq=False)
class GentzenSequent(Structure):
    ant: Tuple[Formula, ...] = ()
    suc: Tuple[Formula, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'ant', canon(self.ant))
        object.__setattr__(self, 'suc', canon(self.suc))

    def render(self) -> str:
        return _turnstile(_join(self.ant), _join(self.suc))

    def add(self, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> 'GentzenSequent':
        return GentzenSequent(self.ant + tuple(ant), self.suc + tuple(suc))


@dataclass(frozen=True, eq=False)
class Hypersequent(Structure):
    components: Tuple[GentzenSequent, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ShapeError("a hypersequent has at least one component")
        object.__setattr__(self, 'components', canon(self.components))

    def render(self) -> str:
        return ' | '.join(c.text for c in self.components)


# Nested sequents

@dataclass(frozen=True, eq=False)
class KtNode(Structure):
    """One-sided tense nested sequent: formulas plus white (o) and black (b) nestings"""
    formulas: Tuple[Formula, ...] = ()
    children: Tuple[Tuple[str, 'KtNode'], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'formulas', canon(self.formulas))
        object.__setattr__(self, 'children',
                           tuple(sorted(self.children, key=lambda kc: (kc[0], kc[1].text))))

    def render(self) -> str:
        items = [f.text for f in self.formulas]
        items += [f"{kind}[{child.text}]" for kind, child in self.children]
        return ', '.join(items)

    def formula_count(self) -> int:
        return len(self.formulas) + sum(c.formula_count() for _, c in self.children)


@dataclass(frozen=True, eq=False)
class ILNode(Structure):
    """Two-sided intuitionistic nested sequent node; children are labeled nestings"""
    label: str
    ant: Tuple[Formula, ...] = ()
    suc: Tuple[Formula, ...] = ()
    children: Tuple['ILNode', ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'ant', canon(self.ant))
        object.__setattr__(self, 'suc', canon(self.suc))
        object.__setattr__(self, 'children', tuple(sorted(self.children, key=lambda c: c.label)))

    def render(self) -> str:
        right = [f.text for f in self.suc]
        right += [f"[ {c.text} ]_{c.label}" for c in self.children]
        return _turnstile(_join(self.ant), ', '.join(right))

    def labels(self) -> FrozenSet[str]:
        found = {self.label}
        for child in self.children:
            found |= child.labels()
        return frozenset(found)

    def nodes(self) -> Iterator['ILNode']:
        yield self
        for child in self.children:
            yield from child.nodes()

    def find(self, label: str) -> Optional['ILNode']:
        for node in self.nodes():
            if node.label == label:
                return node
        return None


# Labeled sequents

@dataclass(frozen=True, eq=False)
class LabeledFormula(Structure):
    label: Any
    formula: Formula

    def render(self) -> str:
        return f"{self.label}:{self.formula.text}"


@dataclass(frozen=True, eq=False)
class RelAtom(Structure):
    """wRu for tense and modal frames, w <= u for intuitionistic ones"""
    kind: str
    src: str
    dst: str

    def render(self) -> str:
        return f"{self.src} {self.kind} {self.dst}"


@dataclass(frozen=True, eq=False)
class LabeledSequent(Structure):
    rel: Tuple[RelAtom, ...] = ()
    ant: Tuple[LabeledFormula, ...] = ()
    suc: Tuple[LabeledFormula, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'rel', canon(self.rel))
        object.__setattr__(self, 'ant', canon(self.ant))
        object.__setattr__(self, 'suc', canon(self.suc))

    def render(self) -> str:
        body = _turnstile(_join(self.ant), _join(self.suc))
        if self.rel:
            return f"{_join(self.rel)} ; {body}"
        return body

    def formula_labels(self) -> FrozenSet[str]:
        return frozenset(lf.label for lf in self.ant + self.suc)

    def labels(self) -> FrozenSet[str]:
        found = set(self.formula_labels())
        for atom in self.rel:
            found.update((atom.src, atom.dst))
        return frozenset(found)

    def restrict(self, label: str) -> GentzenSequent:
        """The Gentzen sequent of formulas carrying one label"""
        return GentzenSequent(tuple(lf.formula for lf in self.ant if lf.label == label),
                              tuple(lf.formula for lf in self.suc if lf.label == label))

    def replace(self, rel: Optional[Iterable[RelAtom]] = None,
                ant: Optional[Iterable[LabeledFormula]] = None,
                suc: Optional[Iterable[LabeledFormula]] = None) -> 'LabeledSequent':
        return LabeledSequent(self.rel if rel is None else tuple(rel),
                              self.ant if ant is None else tuple(ant),
                              self.suc if suc is None else tuple(suc))

    def rename(self, old: str, new: str) -> 'LabeledSequent':
        def sub(x: str) -> str:
            return new if x == old else x
        return LabeledSequent(tuple(RelAtom(a.kind, sub(a.src), sub(a.dst)) for a in self.rel),
                              tuple(LabeledFormula(sub(lf.label), lf.formula) for lf in self.ant),
                              tuple(LabeledFormula(sub(lf.label), lf.formula) for lf in self.suc))


# Conditional logic: labeled terms and block sequents

@dataclass(frozen=True, eq=False)
class Member(Structure):
    """World x belongs to sphere a"""
    world: str
    sphere: str

    def render(self) -> str:
        return f"{self.world} in {self.sphere}"


@dataclass(frozen=True, eq=False)
class SphereOf(Structure):
    """Sphere a belongs to the system of spheres of x"""
    sphere: str
    world: str

    def render(self) -> str:
        return f"{self.sphere} in S({self.world})"


@dataclass(frozen=True, eq=False)
class Sub(Structure):
    """Sphere inclusion a sub b"""
    small: str
    big: str

    def render(self) -> str:
        return f"{self.small} sub {self.big}"


@dataclass(frozen=True, eq=False)
class Forces(Structure):
    """Existential forcing: some world of sphere a satisfies A"""
    sphere: str
    formula: Formula

    def render(self) -> str:
        return f"{self.sphere} ||- {self.formula.text}"


GlvTerm = Union[LabeledFormula, Member, SphereOf, Sub, Forces]


def _term_labels(term: Structure) -> Tuple[str, ...]:
    if isinstance(term, LabeledFormula):
        return (term.label,)
    if isinstance(term, Member):
        return (term.world, term.sphere)
    if isinstance(term, SphereOf):
        return (term.sphere, term.world)
    if isinstance(term, Sub):
        return (term.small, term.big)
    if isinstance(term, Forces):
        return (term.sphere,)
    raise ShapeError(f"not a conditional term: {term!r}")


@dataclass(frozen=True, eq=False)
class GlvSequent(Structure):
    """Labeled conditional sequent; both sides are sets"""
    ant: Tuple[Any, ...] = ()
    suc: Tuple[Any, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'ant', canon_set(self.ant))
        object.__setattr__(self, 'suc', canon_set(self.suc))

    def render(self) -> str:
        return _turnstile(_join(self.ant), _join(self.suc))

    def labels(self) -> FrozenSet[str]:
        return frozenset(x for t in self.ant + self.suc for x in _term_labels(t))

    def add(self, ant: Iterable[Any] = (), suc: Iterable[Any] = ()) -> 'GlvSequent':
        return GlvSequent(self.ant + tuple(ant), self.suc + tuple(suc))

    def drop(self, ant: Iterable[Any] = (), suc: Iterable[Any] = ()) -> 'GlvSequent':
        gone_a, gone_s = set(ant), set(suc)
        return GlvSequent(tuple(t for t in self.ant if t not in gone_a),
                          tuple(t for t in self.suc if t not in gone_s))


@dataclass(frozen=True, eq=False)
class Block(Structure):
    """[A1, ..., An <| B]: a comparative block"""
    sigma: Tuple[Formula, ...]
    target: Formula

    def __post_init__(self) -> None:
        object.__setattr__(self, 'sigma', canon(self.sigma))

    def render(self) -> str:
        left = _join(self.sigma)
        return f"[ {left} <| {self.target.text} ]" if left else f"[ <| {self.target.text} ]"


@dataclass(frozen=True, eq=False)
class BlockSequent(Structure):
    ant: Tuple[Formula, ...] = ()
    suc: Tuple[Formula, ...] = ()
    blocks: Tuple[Block, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'ant', canon(self.ant))
        object.__setattr__(self, 'suc', canon(self.suc))
        object.__setattr__(self, 'blocks', canon(self.blocks))

    def render(self) -> str:
        right = [f.text for f in self.suc] + [b.text for b in self.blocks]
        return _turnstile(_join(self.ant), ', '.join(right))


# Bunches

class Bunch(Structure):
    def leaves(self) -> Iterator['Bunch']:
        yield self


@dataclass(frozen=True, eq=False)
class BLeaf(Bunch):
    formula: Formula

    def render(self) -> str:
        return self.formula.text


@dataclass(frozen=True, eq=False)
class BUnit(Bunch):
    """Additive ('a') or multiplicative ('m') empty bunch"""
    kind: str

    def render(self) -> str:
        return f"{self.kind}I"


@dataclass(frozen=True, eq=False)
class BNode(Bunch):
    """Internal node; op is ',' (multiplicative) or ';' (additive)

    Children keep their written order; structural equivalence ignores it.
    """
    op: str
    left: Bunch
    right: Bunch

    def render(self) -> str:
        return f"({self.left.text} {self.op} {self.right.text})"

    def leaves(self) -> Iterator[Bunch]:
        yield from self.left.leaves()
        yield from self.right.leaves()


@dataclass(frozen=True, eq=False)
class BunchedSequent(Structure):
    bunch: Bunch
    goal: Formula

    def render(self) -> str:
        return f"{self.bunch.text} |- {self.goal.text}"


# GBI labels and labeled sequents

UNITS = ('m', 'a', 'abs')


@dataclass(frozen=True, eq=False)
class Compound(Structure):
    """m(l1, l2) or a(l1, l2): composition of labels in either monoid"""
    op: str
    left: Any
    right: Any

    def render(self) -> str:
        return f"{self.op}({self.left}, {self.right})"


def label_letters(label: Any) -> FrozenSet[str]:
    if isinstance(label, Compound):
        return label_letters(label.left) | label_letters(label.right)
    if label in UNITS:
        return frozenset()
    return frozenset({label})


@dataclass(frozen=True, eq=False)
class Constraint(Structure):
    """lo <= hi, read lo is below hi in the resource preorder"""
    lo: Any
    hi: Any

    def render(self) -> str:
        return f"{self.lo} <= {self.hi}"


@dataclass(frozen=True, eq=False)
class GbiSequent(Structure):
    constraints: Tuple[Constraint, ...] = ()
    ant: Tuple[LabeledFormula, ...] = ()
    suc: Tuple[LabeledFormula, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'constraints', canon(self.constraints))
        object.__setattr__(self, 'ant', canon(self.ant))
        object.__setattr__(self, 'suc', canon(self.suc))

    def render(self) -> str:
        body = _turnstile(_join(self.ant), _join(self.suc))
        if self.constraints:
            return f"{_join(self.constraints)} ; {body}"
        return body

    def labels(self) -> FrozenSet[str]:
        found: FrozenSet[str] = frozenset()
        for c in self.constraints:
            found |= label_letters(c.lo) | label_letters(c.hi)
        for lf in self.ant + self.suc:
            found |= label_letters(lf.label)
        return found

    def all_labels(self) -> FrozenSet[Any]:
        """Every label occurring, units and compound subterms included"""
        found = set()

        def visit(label: Any) -> None:
            found.add(label)
            if isinstance(label, Compound):
                visit(label.left)
                visit(label.right)

        for c in self.constraints:
            visit(c.lo)
            visit(c.hi)
        for lf in self.ant + self.suc:
            visit(lf.label)
        return frozenset(found)

    def replace(self, constraints: Optional[Iterable[Constraint]] = None,
                ant: Optional[Iterable[LabeledFormula]] = None,
                suc: Optional[Iterable[LabeledFormula]] = None) -> 'GbiSequent':
        return GbiSequent(self.constraints if constraints is None else tuple(constraints),
                          self.ant if ant is None else tuple(ant),
                          self.suc if suc is None else tuple(suc))


# Two-sided display structures

class DStructure(Structure):
    prec = 0


@dataclass(frozen=True, eq=False)
class DFormula(DStructure):
    formula: Formula

    def render(self) -> str:
        text = self.formula.text
        return f"({text})" if self.formula.prec > 1 else text


@dataclass(frozen=True, eq=False)
class DUnit(DStructure):
    def render(self) -> str:
        return 'I'


@dataclass(frozen=True, eq=False)
class DStar(DStructure):
    sub: DStructure
    prec = 1

    def render(self) -> str:
        inner = self.sub.text
        return f"*({inner})" if self.sub.prec > 1 else f"*{inner}"


@dataclass(frozen=True, eq=False)
class DBullet(DStructure):
    sub: DStructure
    prec = 1

    def render(self) -> str:
        inner = self.sub.text
        return f".({inner})" if self.sub.prec > 1 else f".{inner}"


@dataclass(frozen=True, eq=False)
class DComma(DStructure):
    left: DStructure
    right: DStructure
    prec = 2

    def render(self) -> str:
        right = self.right.text
        if self.right.prec > 1:
            right = f"({right})"
        return f"{self.left.text} o {right}"


@dataclass(frozen=True, eq=False)
class DisplaySequent(Structure):
    lhs: DStructure
    rhs: DStructure

    def render(self) -> str:
        return f"{self.lhs.text} => {self.rhs.text}"


# Formula interpretation

def formula_interpretation(s: Structure, logic: Optional[str] = None) -> Formula:
    """The formula a sequent stands for; intuitionistic sequents read with =>"""
    if isinstance(s, GentzenSequent):
        return gentzen_formula(s, Sup if logic == 'int' else Imp)
    if isinstance(s, Hypersequent):
        return disj(Box(gentzen_formula(c, Imp)) for c in s.components)
    if isinstance(s, ILNode):
        return _il_formula(s)
    if isinstance(s, KtNode):
        return _kt_formula(s)
    if isinstance(s, BlockSequent):
        return _block_formula(s)
    if isinstance(s, Bunch):
        return bunch_formula(s)
    if isinstance(s, BunchedSequent):
        return Sup(bunch_formula(s.bunch), s.goal)
    raise ShapeError(f"no formula interpretation for {type(s).__name__} sequents")


def gentzen_formula(s: GentzenSequent, arrow: Any = Imp) -> Formula:
    """/\\ antecedent -> \\/ succedent"""
    return arrow(conj(s.ant), disj(s.suc))


def _il_formula(node: ILNode) -> Formula:
    right = list(node.suc) + [_il_formula(c) for c in node.children]
    return Sup(conj(node.ant), disj(right))


def _kt_formula(node: KtNode) -> Formula:
    parts = list(node.formulas)
    for kind, child in node.children:
        parts.append((Box if kind == 'o' else BBox)(_kt_formula(child)))
    return disj(parts)


def _block_formula(s: BlockSequent) -> Formula:
    right = list(s.suc)
    for block in s.blocks:
        right.extend(Pref(a, block.target) for a in block.sigma)
    return Imp(conj(s.ant), disj(right))


def bunch_formula(b: Bunch) -> Formula:
    """Replace units by mtop/top and bunch formers by * and /\\"""
    if isinstance(b, BLeaf):
        return b.formula
    if isinstance(b, BUnit):
        return MTop() if b.kind == 'm' else Top()
    if isinstance(b, BNode):
        op = Star if b.op == ',' else And
        return op(bunch_formula(b.left), bunch_formula(b.right))
    raise ShapeError(f"not a bunch: {b!r}")

