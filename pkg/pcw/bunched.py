"""
Bunches, structural equivalence and the bunched sequent calculus LBI
"""

import itertools
import logging
from functools import lru_cache
from typing import Any, Callable, Final, FrozenSet, Iterator, List, Optional, Tuple

from .formula import And, Atom, Bot, Formula, MTop, Or, Star, Sup, Top, Wand
from .kernel import Annotations, Calculus, Expansion, Rule, SearchResult, Supply, search
from .sequents import BLeaf, BNode, BUnit, Bunch, BunchedSequent, Structure

LOGGER: Final = logging.getLogger(__name__)

# Normal forms are nested tuples: ('leaf', formula), ('unit', kind) or
# (op, children) with op in ',;' and children sorted by printed text.
NF = Tuple[Any, ...]
Plug = Callable[[NF], NF]

UNIT_OF: Final = {',': 'm', ';': 'a'}
OPS: Final = tuple(UNIT_OF)


@lru_cache(maxsize=65536)
def nf_text(n: NF) -> str:
    if n[0] == 'leaf':
        return n[1].text
    if n[0] == 'unit':
        return f"{n[1]}I"
    return '(' + f" {n[0]} ".join(nf_text(c) for c in n[1]) + ')'


def make_node(op: str, children: List[NF]) -> NF:
    """Flatten same-op children, drop the op's unit, collapse trivial nodes"""
    flat: List[NF] = []
    for child in children:
        if child[0] == op:
            flat.extend(child[1])
        elif child != ('unit', UNIT_OF[op]):
            flat.append(child)
    if not flat:
        return ('unit', UNIT_OF[op])
    if len(flat) == 1:
        return flat[0]
    return (op, tuple(sorted(flat, key=nf_text)))


def normal_form(b: Bunch) -> NF:
    if isinstance(b, BLeaf):
        return ('leaf', b.formula)
    if isinstance(b, BUnit):
        return ('unit', b.kind)
    assert isinstance(b, BNode)
    return make_node(b.op, [normal_form(b.left), normal_form(b.right)])


def to_bunch(n: NF) -> Bunch:
    if n[0] == 'leaf':
        return BLeaf(n[1])
    if n[0] == 'unit':
        return BUnit(n[1])
    parts = [to_bunch(c) for c in n[1]]
    result = parts[0]
    for part in parts[1:]:
        result = BNode(n[0], result, part)
    return result


def bunch_equiv(a: Bunch, b: Bunch) -> bool:
    """Equality of normal forms: both monoids commutative with their units"""
    return normal_form(a) == normal_form(b)


def contexts(n: NF) -> Iterator[Tuple[NF, Plug]]:
    """Every sub-bunch of n with the function plugging a replacement back in

    Sub-bunches of an n-ary node include any group of at least two children.
    """
    yield n, lambda y: y
    if n[0] not in OPS:
        return
    op, children = n
    k = len(children)
    for size in range(2, k):
        for idx in itertools.combinations(range(k), size):
            sub = (op, tuple(children[i] for i in idx))
            rest = [children[i] for i in range(k) if i not in idx]
            yield sub, (lambda y, rest=rest: make_node(op, rest + [y]))
    for i, child in enumerate(children):
        rest = list(children[:i] + children[i + 1:])
        for sub, plug in contexts(child):
            yield sub, (lambda y, rest=rest, plug=plug: make_node(op, rest + [plug(y)]))


def leaves_nf(n: NF) -> Iterator[NF]:
    if n[0] in OPS:
        for child in n[1]:
            yield from leaves_nf(child)
    else:
        yield n


def _seq(n: NF, goal: Formula) -> BunchedSequent:
    return BunchedSequent(to_bunch(n), goal)


def seq_key(s: BunchedSequent) -> str:
    return f"{nf_text(normal_form(s.bunch))} |- {s.goal.text}"


def _leaf(f: Formula) -> NF:
    return ('leaf', f)


def _formula_leaves(n: NF, cls: type) -> Iterator[Tuple[Formula, Plug]]:
    seen = set()
    for sub, plug in contexts(n):
        if sub[0] == 'leaf' and isinstance(sub[1], cls):
            key = (sub[1].text, nf_text(plug(('unit', 'hole'))))
            if key not in seen:
                seen.add(key)
                yield sub[1], plug


LbiFn = Callable[[NF, Formula, Supply], Iterator[Tuple[Tuple[BunchedSequent, ...], Annotations]]]


def _ann(f: Formula, **extra: object) -> Annotations:
    return dict({'principal': f.text}, **extra)


# Axioms

def _id(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
    """A |- A, also under an additive context"""
    if n == _leaf(goal) or (n[0] == ';' and _leaf(goal) in n[1]):
        yield (), _ann(goal)


def _mtop_r(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
    if isinstance(goal, MTop) and n == ('unit', 'm'):
        yield (), _ann(goal)


def _top_r(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
    if isinstance(goal, Top):
        yield (), _ann(goal)


def _bot_l(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
    for f, _ in _formula_leaves(n, Bot):
        yield (), _ann(f)
        return


# Left rules

def _unit_l(cls: type, kind: str) -> LbiFn:
    def fn(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
        for f, plug in _formula_leaves(n, cls):
            yield (_seq(plug(('unit', kind)), goal),), _ann(f)
    return fn


def _split_l(cls: type, op: str) -> LbiFn:
    """B * C becomes (B , C); B /\\ C becomes (B ; C)"""
    def fn(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
        for f, plug in _formula_leaves(n, cls):
            yield (_seq(plug(make_node(op, [_leaf(f.left), _leaf(f.right)])), goal),), _ann(f)
    return fn


def _or_l(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
    for f, plug in _formula_leaves(n, Or):
        yield (_seq(plug(_leaf(f.left)), goal), _seq(plug(_leaf(f.right)), goal)), _ann(f)


def _arrow_l(cls: type, op: str) -> LbiFn:
    """G(B ~> C op D) from D |- B and G(C); the additive arrow also allows G(C ; D)"""
    def fn(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
        seen = set()
        for sub, plug in contexts(n):
            if sub[0] == 'leaf' and isinstance(sub[1], cls):
                groups = [(sub[1], ('unit', UNIT_OF[op]))]
            elif sub[0] == op:
                groups = []
                for i, child in enumerate(sub[1]):
                    if child[0] == 'leaf' and isinstance(child[1], cls):
                        rest = list(sub[1][:i] + sub[1][i + 1:])
                        groups.append((child[1], make_node(op, rest)))
            else:
                continue
            for f, delta in groups:
                shapes = [plug(_leaf(f.right))]
                if op == ';':
                    shapes.append(plug(make_node(';', [_leaf(f.right), delta])))
                    if supply.searching:
                        shapes = shapes[1:]
                for shape in shapes:
                    key = (nf_text(delta), nf_text(shape), f.text)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield (_seq(delta, f.left), _seq(shape, goal)), \
                        _ann(f, context=nf_text(delta))
    return fn


# Right rules

def _arrow_r(cls: type, op: str) -> LbiFn:
    def fn(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
        if isinstance(goal, cls):
            yield (_seq(make_node(op, [n, _leaf(goal.left)]), goal.right),), _ann(goal)
    return fn


def _splits(n: NF, op: str) -> Iterator[Tuple[NF, NF]]:
    if n[0] != op:
        yield n, ('unit', UNIT_OF[op])
        yield ('unit', UNIT_OF[op]), n
        return
    children = n[1]
    seen = set()
    for mask in itertools.product((0, 1), repeat=len(children)):
        left = make_node(op, [c for c, m in zip(children, mask) if m == 0])
        right = make_node(op, [c for c, m in zip(children, mask) if m == 1])
        key = (nf_text(left), nf_text(right))
        if key not in seen:
            seen.add(key)
            yield left, right


def _conj_r(cls: type, op: str) -> LbiFn:
    def fn(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
        if not isinstance(goal, cls):
            return
        if op == ';':
            yield (_seq(n, goal.left), _seq(n, goal.right)), _ann(goal, shared=True)
        for left, right in _splits(n, op):
            yield (_seq(left, goal.left), _seq(right, goal.right)), _ann(goal)
    return fn


def _or_r(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
    if isinstance(goal, Or):
        yield (_seq(n, goal.left),), _ann(goal, side=1)
        yield (_seq(n, goal.right),), _ann(goal, side=2)


# Structural rules

def _wk(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
    """G(D1 ; D2) from G(D1)"""
    seen = set()
    for sub, plug in contexts(n):
        candidates: List[NF] = []
        if sub[0] == ';':
            k = len(sub[1])
            sizes = [k - 1] if supply.searching else range(1, k)
            for size in sizes:
                for idx in itertools.combinations(range(k), size):
                    candidates.append(make_node(';', [sub[1][i] for i in idx]))
        if not supply.searching and sub != ('unit', 'a'):
            candidates.append(('unit', 'a'))
        for kept in candidates:
            premise = plug(kept)
            key = nf_text(premise)
            if key in seen or premise == n:
                continue
            seen.add(key)
            yield (_seq(premise, goal),), {'dropped_from': nf_text(sub)}


def _occurrences(n: NF, target: NF) -> int:
    count = 1 if n == target else 0
    if n[0] in OPS:
        count += sum(_occurrences(c, target) for c in n[1])
    return count


def _cr(copies: int) -> LbiFn:
    """G(D) from G(D ; D)

    While searching only sub-bunches holding an implication are copied, each
    below the copy limit, and never an additive node: its copy is reached by
    copying its children one at a time.
    """
    def fn(n: NF, goal: Formula, supply: Supply) -> Iterator[Expansion]:
        seen = set()
        for sub, plug in contexts(n):
            if sub[0] == 'unit':
                continue
            if supply.searching:
                if sub[0] == ';':
                    continue
                if not any(isinstance(leaf[1], (Wand, Sup)) for leaf in leaves_nf(sub)
                           if leaf[0] == 'leaf'):
                    continue
                if _occurrences(n, sub) >= copies:
                    continue
            premise = plug(make_node(';', [sub, sub]))
            key = nf_text(premise)
            if key in seen:
                continue
            seen.add(key)
            yield (_seq(premise, goal),), {'copied': nf_text(sub)}
    return fn


@lru_cache(maxsize=4096)
def positive_atoms(f: Formula) -> Optional[FrozenSet[Formula]]:
    """Atoms and bot reachable through positive parts; None when anything is"""
    if isinstance(f, (Atom, Bot)):
        return frozenset({f})
    if isinstance(f, (Top, MTop)):
        return frozenset()
    if isinstance(f, (Wand, Sup)):
        return positive_atoms(f.right)
    if isinstance(f, (Star, And, Or)):
        left, right = positive_atoms(f.left), positive_atoms(f.right)
        if left is None or right is None:
            return None
        return left | right
    return None


def lbi_hopeless(seq: Structure) -> bool:
    """An atomic goal that no bunch formula can produce

    Left rules only expose positive parts of bunch formulas, so an atom
    missing from all of them, with no bot among them, is unprovable.
    """
    if not isinstance(seq, BunchedSequent) or not isinstance(seq.goal, Atom):
        return False
    reach: FrozenSet[Formula] = frozenset()
    for leaf in leaves_nf(normal_form(seq.bunch)):
        if leaf[0] != 'leaf':
            continue
        got = positive_atoms(leaf[1])
        if got is None:
            return False
        reach |= got
    return seq.goal not in reach and not any(isinstance(f, Bot) for f in reach)


def lbi_rule(name: str, fn: LbiFn, **kwargs: Any) -> Rule:
    """A deep LBI rule; checking compares premises up to structural equivalence"""
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if isinstance(seq, BunchedSequent):
            yield from fn(normal_form(seq.bunch), seq.goal, supply)

    def verify(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
        if not isinstance(concl, BunchedSequent):
            return None
        if not all(isinstance(p, BunchedSequent) for p in premises):
            return None
        wanted = sorted(seq_key(p) for p in premises)  # type: ignore[arg-type]
        for got, ann in expand(concl, Supply(avoid=(), searching=False)):
            if len(got) == len(premises) and sorted(seq_key(g) for g in got) == wanted:
                return ann
        return None

    return Rule(name, expand=expand, verify=verify, **kwargs)


def verify_equiv(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    if len(premises) != 1 or not isinstance(concl, BunchedSequent):
        return None
    p = premises[0]
    if not isinstance(p, BunchedSequent) or p.goal != concl.goal:
        return None
    if not bunch_equiv(p.bunch, concl.bunch):
        return None
    return {'from': p.bunch.text, 'to': concl.bunch.text}


def verify_cut(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    """D |- B and G(B) |- A give G(D) |- A"""
    if len(premises) != 2 or not isinstance(concl, BunchedSequent):
        return None
    n = normal_form(concl.bunch)
    for left, right in (premises, premises[::-1]):
        if not isinstance(left, BunchedSequent) or not isinstance(right, BunchedSequent):
            return None
        if right.goal != concl.goal:
            continue
        delta = normal_form(left.bunch)
        target = normal_form(right.bunch)
        for sub, plug in contexts(n):
            if sub == delta and plug(_leaf(left.goal)) == target:
                return {'cut': left.goal.text}
    return None


LBI_VARIANTS: Final = ('core', 'cut')


def calculus_lbi(variant: str = 'core', cr_copies: int = 2) -> Calculus:
    """LBI with deep rules; 'cut' adds (cut)"""
    rules = [
        lbi_rule('id', _id, axiom=True),
        lbi_rule('mtop_r', _mtop_r, axiom=True),
        lbi_rule('top_r', _top_r, axiom=True),
        lbi_rule('bot_l', _bot_l, axiom=True),
        lbi_rule('mtop_l', _unit_l(MTop, 'm'), invertible=True),
        lbi_rule('top_l', _unit_l(Top, 'a'), invertible=True),
        lbi_rule('star_l', _split_l(Star, ','), invertible=True),
        lbi_rule('and_l', _split_l(And, ';'), invertible=True),
        lbi_rule('or_l', _or_l, invertible=True),
        lbi_rule('wand_r', _arrow_r(Wand, ','), invertible=True),
        lbi_rule('sup_r', _arrow_r(Sup, ';'), invertible=True),
        lbi_rule('or_r', _or_r),
        lbi_rule('star_r', _conj_r(Star, ',')),
        lbi_rule('and_r', _conj_r(And, ';')),
        lbi_rule('wand_l', _arrow_l(Wand, ',')),
        lbi_rule('sup_l', _arrow_l(Sup, ';')),
        lbi_rule('wk', _wk),
        lbi_rule('cr', _cr(cr_copies)),
        Rule('equiv', verify=verify_equiv, searchable=False),
    ]
    calc = Calculus('lbi', BunchedSequent, 'bunched', 'bi', rules,
                    'bunched sequent calculus for BI', hopeless=lbi_hopeless)
    if variant == 'cut':
        return calc.extended('lbi+cut', [Rule('cut', verify=verify_cut, searchable=False)])
    return calc


def lbi_theorem(f: Formula, depth: int, max_nodes: int = 200000,
                calc: Optional[Calculus] = None) -> SearchResult:
    """Search for a proof of mI |- f"""
    goal = BunchedSequent(BUnit('m'), f)
    return search(calc or calculus_lbi(), goal, depth, max_nodes)
