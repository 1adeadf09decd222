"""
BI: bunches laid out on labels, LBI proofs to GBI proofs, and bunches read back
off label constraints
"""

import itertools
import logging
from dataclasses import dataclass, replace
from typing import Dict, Final, Iterator, List, Optional, Sequence, Set, Tuple, Type

from ..bunched import NF, UNIT_OF, calculus_lbi, normal_form, nf_text, seq_key
from ..errors import ReconstructionError, ShapeError, TranslationError
from ..formula import And, Bot, Formula, MTop, Or, Star, Sup, Top, Wand, conj
from ..gbi import ABSURD, at, calculus_gbi, le
from ..kernel import Path, Proof, Supply, check, proof_nodes
from ..sequents import (UNITS, BLeaf, BNode, BUnit, Bunch, BunchedSequent, Compound, Constraint,
                        GbiSequent, LabeledFormula, Structure, canon_set, multiset_minus,
                        remove_one)
from .common import chain, require

LOGGER: Final = logging.getLogger(__name__)

# principal connective and bunch former of each LBI rule acting on one
_SHAPES: Final[Dict[str, Tuple[Type[Formula], str]]] = {
    'star_l': (Star, ','), 'and_l': (And, ';'),
    'wand_r': (Wand, ','), 'sup_r': (Sup, ';'),
    'star_r': (Star, ','), 'and_r': (And, ';'),
    'wand_l': (Wand, ','), 'sup_l': (Sup, ';'),
}


@dataclass(frozen=True)
class _Tree:
    """A bunch on labels: an inner node stands for op(left, right) <= label,
    a unit leaf for unit <= label and a formula leaf for label:formula"""
    label: str
    op: Optional[str] = None
    parts: Tuple['_Tree', ...] = ()
    formula: Optional[Formula] = None
    unit: Optional[str] = None

    def constraint(self) -> Optional[Constraint]:
        if self.op is not None:
            comp = Compound(UNIT_OF[self.op], self.parts[0].label, self.parts[1].label)
            return le(comp, self.label)
        if self.unit is not None:
            return le(self.unit, self.label)
        return None

    def items(self) -> Iterator[Structure]:
        c = self.constraint()
        if c is not None:
            yield c
        if self.formula is not None:
            yield at(self.label, self.formula)
        for part in self.parts:
            yield from part.items()

    def bunch(self) -> Bunch:
        if self.op is not None:
            return BNode(self.op, self.parts[0].bunch(), self.parts[1].bunch())
        if self.unit is not None:
            return BUnit(self.unit)
        assert self.formula is not None
        return BLeaf(self.formula)

    def nf(self) -> NF:
        return normal_form(self.bunch())

    def walk(self, path: Path = ()) -> Iterator[Tuple[Path, '_Tree']]:
        yield path, self
        for i, part in enumerate(self.parts):
            yield from part.walk(path + (i,))

    def get(self, path: Path) -> '_Tree':
        node = self
        for i in path:
            node = node.parts[i]
        return node

    def put(self, path: Path, new: '_Tree') -> '_Tree':
        if not path:
            return new
        parts = list(self.parts)
        parts[path[0]] = parts[path[0]].put(path[1:], new)
        return replace(self, parts=tuple(parts))


def _leaf(label: str, f: Formula) -> _Tree:
    return _Tree(label, formula=f)


def _unit(label: str, kind: str) -> _Tree:
    return _Tree(label, unit=kind)


def _node(label: str, op: str, left: _Tree, right: _Tree) -> _Tree:
    return _Tree(label, op=op, parts=(left, right))


def _plant(b: Bunch, delta: str) -> _Tree:
    if isinstance(b, BLeaf):
        return _leaf(delta, b.formula)
    if isinstance(b, BUnit):
        return _unit(delta, b.kind)
    assert isinstance(b, BNode)
    return _node(delta, b.op, _plant(b.left, delta + '0'), _plant(b.right, delta + '1'))


def _member_paths(spine: _Tree) -> List[Path]:
    """Paths to the maximal parts of spine not built with its own former"""
    found: List[Path] = []
    for i, part in enumerate(spine.parts):
        if part.op == spine.op:
            found.extend((i,) + p for p in _member_paths(part))
        else:
            found.append((i,))
    return found


def _key(tree: _Tree, goal: Formula) -> str:
    return f"{nf_text(tree.nf())} |- {goal.text}"


def bunch_to_labels(bunch: Bunch, delta: str
                    ) -> Tuple[Tuple[Constraint, ...], Tuple[LabeledFormula, ...]]:
    """Constraints and labeled formulas of bunch rooted at delta

    Children of the node on label x sit on x0 and x1; a unit leaf on x
    gives m <= x or a <= x.
    """
    if delta in UNITS:
        raise ShapeError(f"{delta} is a unit, not a label letter")
    items = list(_plant(bunch, delta).items())
    return (tuple(x for x in items if isinstance(x, Constraint)),
            tuple(x for x in items if isinstance(x, LabeledFormula)))


def gbi_image(s: BunchedSequent, delta: str = 'd') -> GbiSequent:
    constraints, ant = bunch_to_labels(s.bunch, delta)
    return GbiSequent(constraints, ant, (at(delta, s.goal),))


class _Steps:
    """Unary GBI steps stacked below a growing sequent"""

    def __init__(self, seq: GbiSequent):
        self.seq = seq
        self.below: List[Tuple[str, GbiSequent]] = []

    def fork(self) -> '_Steps':
        other = _Steps(self.seq)
        other.below = list(self.below)
        return other

    def step(self, rule: str, seq: GbiSequent) -> None:
        self.below.append((rule, self.seq))
        self.seq = seq

    def add(self, rule: str, c: Constraint) -> None:
        if c not in self.seq.constraints:
            self.step(rule, self.seq.replace(constraints=self.seq.constraints + (c,)))

    def swap(self, rule: str, old: Sequence[Constraint], new: Sequence[Constraint]) -> None:
        rest = multiset_minus(self.seq.constraints, old)
        if rest is None:
            raise TranslationError(f"({rule}) misses {', '.join(c.text for c in old)}")
        self.step(rule, self.seq.replace(constraints=rest + tuple(new)))

    def move(self, rule: str, side: str, old: LabeledFormula, new: LabeledFormula) -> None:
        items = getattr(self.seq, side)
        self.step(rule, self.seq.replace(**{side: remove_one(items, old) + (new,)}))

    def wrap(self, top: Proof) -> Proof:
        return chain(top, tuple(reversed(self.below)))


@dataclass
class _Move:
    """A GBI image of one LBI step: structural steps, then rule over premises"""
    steps: _Steps
    rule: Optional[str] = None
    premises: Tuple[Tuple[GbiSequent, _Tree, Formula], ...] = ()
    closed: Optional[Proof] = None


class _Translator:
    def __init__(self, used: Sequence[str]):
        self.supply = Supply(avoid=used)

    # label bookkeeping

    def fresh(self) -> str:
        return self.supply.fresh('l')

    def up(self, st: _Steps, parent: _Tree, i: int) -> None:
        """Make child i of parent lie below it"""
        child, other = parent.parts[i], parent.parts[1 - i]
        if child.label == parent.label:
            return
        assert parent.op is not None
        k = UNIT_OF[parent.op]
        if k == 'm':
            if other.unit != 'm':
                raise TranslationError(f"{child.label} is not below {parent.label} "
                                       f"in a multiplicative context")
            if other.label != 'm':
                comp = Compound('m', 'm', child.label) if i == 1 \
                    else Compound('m', child.label, 'm')
                st.add('c1_m' if i == 1 else 'c2_m', le(comp, parent.label))
        st.add(f"p{i + 1}_{k}", le(child.label, parent.label))

    def lift(self, st: _Steps, tree: _Tree, path: Path) -> None:
        """Move the formula of the leaf at path up to the root label"""
        leaf = tree.get(path)
        assert leaf.formula is not None
        label = leaf.label
        for depth in range(len(path), 0, -1):
            parent = tree.get(path[:depth - 1])
            self.up(st, parent, path[depth - 1])
            if parent.label != label:
                st.move('k_l', 'ant', at(label, leaf.formula), at(parent.label, leaf.formula))
                label = parent.label

    def collapse(self, st: _Steps, tree: _Tree, path: Path, keep: int, goal: Formula) -> _Tree:
        """Replace the node at path by its child keep"""
        node = tree.get(path)
        kept = node.parts[keep]
        self.up(st, node, keep)
        if kept.label == node.label:
            return tree.put(path, kept)
        if not path:
            st.move('k_r', 'suc', at(node.label, goal), at(kept.label, goal))
            return kept
        parent = tree.get(path[:-1])
        j = path[-1]
        parts = list(parent.parts)
        parts[j] = kept
        grown = replace(parent, parts=tuple(parts))
        c = grown.constraint()
        assert parent.op is not None and c is not None
        st.add(f"c{j + 1}_{UNIT_OF[parent.op]}", c)
        return tree.put(path[:-1], grown)

    def squeeze(self, st: _Steps, tree: _Tree, goal: Formula) -> _Tree:
        """Drop unit children of their own bunch former"""
        while True:
            found = next(((path, n) for path, n in tree.walk() if n.op is not None
                          and any(p.unit == UNIT_OF[n.op] for p in n.parts)), None)
            if found is None:
                return tree
            path, n = found
            keep = 1 if n.parts[0].unit == UNIT_OF[n.op] else 0
            tree = self.collapse(st, tree, path, keep, goal)

    def to_top(self, st: _Steps, label: str) -> None:
        """a <= label"""
        want = le('a', label)
        if want in st.seq.constraints:
            return
        if label == 'a':
            st.add('r', want)
            return
        if label in UNITS:
            raise TranslationError(f"no additive unit below {label}")
        st.add('u1_a', le(Compound('a', label, 'a'), label))
        st.add('p2_a', want)

    # regrouping a spine of one bunch former

    def exchange(self, st: _Steps, t: _Tree) -> _Tree:
        assert t.op is not None
        new = _node(t.label, t.op, t.parts[1], t.parts[0])
        if t.parts[0].label != t.parts[1].label:
            st.swap(f"e_{UNIT_OF[t.op]}", (t.constraint(),), (new.constraint(),))
        return new

    def rotate(self, st: _Steps, t: _Tree) -> _Tree:
        """((a . b) . c) becomes (a . (b . c))"""
        assert t.op is not None
        x, c = t.parts
        a, b = x.parts
        inner = _node(self.fresh(), t.op, b, c)
        new = _node(t.label, t.op, a, inner)
        st.swap(f"a1_{UNIT_OF[t.op]}", (t.constraint(), x.constraint()),
                (inner.constraint(), new.constraint()))
        return new

    def unrotate(self, st: _Steps, t: _Tree) -> _Tree:
        """(a . (b . c)) becomes ((a . b) . c)"""
        assert t.op is not None
        a, y = t.parts
        b, c = y.parts
        inner = _node(self.fresh(), t.op, a, b)
        new = _node(t.label, t.op, inner, c)
        st.swap(f"a2_{UNIT_OF[t.op]}", (t.constraint(), y.constraint()),
                (inner.constraint(), new.constraint()))
        return new

    def comb(self, st: _Steps, t: _Tree) -> _Tree:
        """Right comb over the members of t, in their order"""
        while t.parts[0].op == t.op:
            t = self.rotate(st, t)
        if t.parts[1].op == t.op:
            t = replace(t, parts=(t.parts[0], self.comb(st, t.parts[1])))
        return t

    def transpose(self, st: _Steps, t: _Tree, i: int) -> _Tree:
        """Swap members i and i + 1 of a right comb"""
        if i > 0:
            return replace(t, parts=(t.parts[0], self.transpose(st, t.parts[1], i - 1)))
        if t.parts[1].op != t.op:
            return self.exchange(st, t)
        t = self.unrotate(st, t)
        t = replace(t, parts=(self.exchange(st, t.parts[0]), t.parts[1]))
        return self.rotate(st, t)

    def arrange(self, st: _Steps, spine: _Tree, order: Sequence[int]) -> _Tree:
        """Right comb with the members of spine in the given order"""
        t = self.comb(st, spine)
        current = list(range(len(_member_paths(spine))))
        for pos, want in enumerate(order):
            j = current.index(want)
            while j > pos:
                t = self.transpose(st, t, j - 1)
                current[j - 1], current[j] = current[j], current[j - 1]
                j -= 1
        return t

    # translation

    def translate(self, node: Proof, path: Path, tree: _Tree, seq: GbiSequent) -> Proof:
        s = node.conclusion
        assert isinstance(s, BunchedSequent)
        wanted = sorted(seq_key(p.conclusion) for p in node.premises)  # type: ignore[arg-type]
        st = _Steps(seq)
        tree = self.squeeze(st, tree, s.goal)
        failure: Optional[TranslationError] = None
        for move in self.moves(node.rule, st, tree, s.goal, wanted):
            keys = [_key(t, g) for _, t, g in move.premises]
            if sorted(keys) != wanted:
                continue
            try:
                return self.finish(node, path, move, keys)
            except TranslationError as e:
                failure = e
        if failure is not None:
            raise failure
        raise TranslationError(f"({node.rule}) has no GBI image on {tree.bunch().text}", path)

    def finish(self, node: Proof, path: Path, move: _Move, keys: List[str]) -> Proof:
        free = list(range(len(node.premises)))
        subs = []
        for (seq, tree, _), key in zip(move.premises, keys):
            i = next(i for i in free
                     if seq_key(node.premises[i].conclusion) == key)  # type: ignore[arg-type]
            free.remove(i)
            subs.append(self.translate(node.premises[i], path + (i,), tree, seq))
        if move.closed is not None:
            top = move.closed
        elif move.rule is None:
            top = subs[0]
        else:
            top = Proof(move.rule, move.steps.seq, tuple(subs))
        return move.steps.wrap(top)

    def moves(self, rule: str, st: _Steps, tree: _Tree, goal: Formula,
              wanted: List[str]) -> Iterator[_Move]:
        if rule == 'id':
            yield from self._id(st, tree, goal)
        elif rule == 'bot_l':
            yield from self._bot_l(st, tree, goal)
        elif rule == 'mtop_r':
            if isinstance(goal, MTop) and tree.unit == 'm':
                yield _Move(st, closed=Proof('mtop_r', st.seq))
        elif rule == 'top_r':
            yield from self._top_r(st, tree, goal)
        elif rule == 'mtop_l':
            yield from self._unit_l(st, tree, goal, 'mtop_l', MTop, 'm')
        elif rule == 'top_l':
            yield from self._unit_l(st, tree, goal, 'top_l', Top, 'a')
        elif rule in ('star_l', 'and_l'):
            yield from self._split_l(st, tree, goal, rule)
        elif rule == 'or_l':
            yield from self._or_l(st, tree, goal)
        elif rule in ('wand_r', 'sup_r'):
            yield from self._arrow_r(st, tree, goal, rule)
        elif rule == 'or_r':
            yield from self._or_r(st, tree, goal)
        elif rule in ('star_r', 'and_r'):
            yield from self._conj_r(st, tree, goal, rule)
        elif rule in ('wand_l', 'sup_l'):
            yield from self._arrow_l(st, tree, goal, rule)
        elif rule == 'wk':
            yield from self._wk(st, tree, goal, wanted[0])
        elif rule == 'cr':
            yield from self._cr(st, tree, goal)
        elif rule == 'equiv':
            yield _Move(st, None, ((st.seq, tree, goal),))
        else:
            raise TranslationError(f"({rule}) has no GBI image")

    # axioms

    def _id(self, st: _Steps, tree: _Tree, goal: Formula) -> Iterator[_Move]:
        for path, t in tree.walk():
            if t.formula != goal:
                continue
            fork = st.fork()
            try:
                self.lift(fork, tree, path)
            except TranslationError:
                continue
            yield _Move(fork, closed=Proof('id', fork.seq))

    def _bot_l(self, st: _Steps, tree: _Tree, goal: Formula) -> Iterator[_Move]:
        g = tree.label
        for path, t in tree.walk():
            if not isinstance(t.formula, Bot):
                continue
            fork = st.fork()
            try:
                self.lift(fork, tree, path)
            except TranslationError:
                continue
            above = fork.seq.replace(constraints=fork.seq.constraints + (le(ABSURD, g),),
                                     ant=remove_one(fork.seq.ant, at(g, t.formula)))
            yield _Move(fork, closed=Proof('bot_l', fork.seq, (Proof('bot_r', above),)))

    def _top_r(self, st: _Steps, tree: _Tree, goal: Formula) -> Iterator[_Move]:
        if not isinstance(goal, Top):
            return
        fork = st.fork()
        try:
            self.to_top(fork, tree.label)
        except TranslationError:
            return
        yield _Move(fork, closed=Proof('top_r', fork.seq))

    # left rules

    def _unit_l(self, st: _Steps, tree: _Tree, goal: Formula, rule: str,
                cls: Type[Formula], kind: str) -> Iterator[_Move]:
        for path, t in tree.walk():
            if not isinstance(t.formula, cls):
                continue
            seq = st.seq.replace(constraints=st.seq.constraints + (le(kind, t.label),),
                                 ant=remove_one(st.seq.ant, at(t.label, t.formula)))
            yield _Move(st, rule, ((seq, tree.put(path, _unit(t.label, kind)), goal),))

    def _split_l(self, st: _Steps, tree: _Tree, goal: Formula, rule: str) -> Iterator[_Move]:
        cls, op = _SHAPES[rule]
        for path, t in tree.walk():
            f = t.formula
            if not isinstance(f, cls):
                continue
            l1, l2 = self.fresh(), self.fresh()
            new = _node(t.label, op, _leaf(l1, f.left), _leaf(l2, f.right))
            c = new.constraint()
            assert c is not None
            seq = GbiSequent(st.seq.constraints + (c,),
                             remove_one(st.seq.ant, at(t.label, f))
                             + (at(l1, f.left), at(l2, f.right)),
                             st.seq.suc)
            yield _Move(st, rule, ((seq, tree.put(path, new), goal),))

    def _or_l(self, st: _Steps, tree: _Tree, goal: Formula) -> Iterator[_Move]:
        for path, t in tree.walk():
            f = t.formula
            if not isinstance(f, Or):
                continue
            rest = remove_one(st.seq.ant, at(t.label, f))
            yield _Move(st, 'or_l', tuple(
                (st.seq.replace(ant=rest + (at(t.label, part),)),
                 tree.put(path, _leaf(t.label, part)), goal)
                for part in (f.left, f.right)))

    def _arrow_l(self, st: _Steps, tree: _Tree, goal: Formula, rule: str) -> Iterator[_Move]:
        cls, op = _SHAPES[rule]
        for path, t in tree.walk():
            if not isinstance(t.formula, cls):
                continue
            top = path
            while top and tree.get(top[:-1]).op == op:
                top = top[:-1]
            if top != path:
                parent = path[:-1]
                fork = st.fork()
                work = tree
                if path[-1] == 1:
                    work = tree.put(parent, self.exchange(fork, tree.get(parent)))
                yield from self._arrow_at(fork, work, parent, goal, rule)
                spine = tree.get(top)
                members = _member_paths(spine)
                fi = members.index(path[len(top):])
                others = [i for i in range(len(members)) if i != fi]
                for size in range(1, len(others) + 1):
                    for chosen in itertools.combinations(others, size):
                        rest = [i for i in others if i not in chosen]
                        fork = st.fork()
                        try:
                            arranged = self.arrange(fork, spine, rest + [fi] + list(chosen))
                        except TranslationError:
                            continue
                        yield from self._arrow_at(fork, tree.put(top, arranged),
                                                  top + (1,) * len(rest), goal, rule)
            yield from self._arrow_alone(st, tree, path, goal, rule)

    def _arrow_alone(self, st: _Steps, tree: _Tree, path: Path, goal: Formula,
                     rule: str) -> Iterator[_Move]:
        """The principal leaf with the unit of its former as context"""
        _, op = _SHAPES[rule]
        k = UNIT_OF[op]
        t = tree.get(path)
        if t.label in UNITS:
            return
        fork = st.fork()
        fork.add('r', le(k, k))
        fork.add(f"u1_{k}", le(Compound(k, t.label, k), t.label))
        work = tree.put(path, _node(t.label, op, t, _unit(k, k)))
        yield from self._arrow_at(fork, work, path, goal, rule)

    def _arrow_at(self, st: _Steps, tree: _Tree, xpath: Path, goal: Formula,
                  rule: str) -> Iterator[_Move]:
        """x = (f . D) at xpath: D |- B and the context with C for x"""
        x = tree.get(xpath)
        f = x.parts[0].formula
        d = x.parts[1]
        assert isinstance(f, (Wand, Sup))
        shapes = [(st, tree.put(xpath, _leaf(x.label, f.right)))]
        if rule == 'sup_l':
            fork = st.fork()
            self._pair(fork, x.label, d.label)
            shapes.append((fork, tree.put(xpath, _node(x.label, ';',
                                                       _leaf(x.label, f.right), d))))
        for s, view in shapes:
            first = s.seq.replace(suc=s.seq.suc + (at(d.label, f.left),))
            second = s.seq.replace(ant=s.seq.ant + (at(x.label, f.right),))
            yield _Move(s, rule, ((first, d, f.left), (second, view, goal)))

    def _pair(self, st: _Steps, x: str, d: str) -> None:
        """a(x, d) <= x next to a(f, d) <= x"""
        want = le(Compound('a', x, d), x)
        if want in st.seq.constraints:
            return
        if d == x:
            st.add('i_a', want)
            return
        st.add('p2_a', le(d, x))
        st.add('i_a', le(Compound('a', x, x), x))
        st.add('c2_a', want)

    # right rules

    def _arrow_r(self, st: _Steps, tree: _Tree, goal: Formula, rule: str) -> Iterator[_Move]:
        cls, op = _SHAPES[rule]
        if not isinstance(goal, cls):
            return
        l1, l2 = self.fresh(), self.fresh()
        new = _node(l2, op, tree, _leaf(l1, goal.left))
        c = new.constraint()
        assert c is not None
        seq = GbiSequent(st.seq.constraints + (c,),
                         st.seq.ant + (at(l1, goal.left),),
                         remove_one(st.seq.suc, at(tree.label, goal)) + (at(l2, goal.right),))
        yield _Move(st, rule, ((seq, new, goal.right),))

    def _or_r(self, st: _Steps, tree: _Tree, goal: Formula) -> Iterator[_Move]:
        if not isinstance(goal, Or):
            return
        rest = remove_one(st.seq.suc, at(tree.label, goal))
        for part in (goal.left, goal.right):
            yield _Move(st, 'or_r', ((st.seq.replace(suc=rest + (at(tree.label, part),)),
                                      tree, part),))

    def _conj_r(self, st: _Steps, tree: _Tree, goal: Formula, rule: str) -> Iterator[_Move]:
        cls, op = _SHAPES[rule]
        if not isinstance(goal, cls):
            return
        k = UNIT_OF[op]
        g = tree.label

        def split(s: _Steps, left: _Tree, right: _Tree) -> _Move:
            base = s.seq.suc if rule == 'star_r' else remove_one(s.seq.suc, at(g, goal))
            return _Move(s, rule, (
                (s.seq.replace(suc=base + (at(left.label, goal.left),)), left, goal.left),
                (s.seq.replace(suc=base + (at(right.label, goal.right),)), right, goal.right)))

        if rule == 'and_r':
            fork = st.fork()
            fork.add('i_a', le(Compound('a', g, g), g))
            yield split(fork, tree, tree)
        if g not in UNITS:
            for first in (True, False):
                fork = st.fork()
                fork.add('r', le(k, k))
                comp = Compound(k, g, k) if first else Compound(k, k, g)
                fork.add(f"u{1 if first else 2}_{k}", le(comp, g))
                unit = _unit(k, k)
                yield split(fork, tree, unit) if first else split(fork, unit, tree)
        if tree.op != op:
            return
        members = _member_paths(tree)
        seen: Set[Tuple[str, ...]] = set()
        for mask in itertools.product((0, 1), repeat=len(members)):
            if all(mask) or not any(mask):
                continue
            left = [i for i, m in enumerate(mask) if m == 0]
            right = [i for i, m in enumerate(mask) if m == 1]
            key = tuple(','.join(sorted(tree.get(members[i]).bunch().text for i in group))
                        for group in (left, right))
            if key in seen:
                continue
            seen.add(key)
            fork = st.fork()
            try:
                t = self.arrange(fork, tree, left + right)
                for _ in range(len(left) - 1):
                    t = self.unrotate(fork, t)
            except TranslationError:
                continue
            yield split(fork, t.parts[0], t.parts[1])

    # structural rules

    def _wk(self, st: _Steps, tree: _Tree, goal: Formula, want: str) -> Iterator[_Move]:
        seen: Set[str] = set()

        def search(s: _Steps, t: _Tree) -> Iterator[Tuple[_Steps, _Tree]]:
            key = _key(t, goal)
            if key == want:
                yield s, t
                return
            if key in seen:
                return
            seen.add(key)
            for s2, t2 in self._thinnings(s, t, goal):
                yield from search(s2, t2)

        for s, t in search(st.fork(), tree):
            yield _Move(s, None, ((s.seq, t, goal),))

    def _thinnings(self, st: _Steps, tree: _Tree, goal: Formula
                   ) -> Iterator[Tuple[_Steps, _Tree]]:
        """One additive part dropped, or one part replaced by the additive unit"""
        for path, n in tree.walk():
            if n.op != ';':
                continue
            for keep in (0, 1):
                fork = st.fork()
                try:
                    yield fork, self.collapse(fork, tree, path, keep, goal)
                except TranslationError:
                    continue
        for path, n in tree.walk():
            if n.unit == 'a':
                continue
            fork = st.fork()
            try:
                self.to_top(fork, n.label)
            except TranslationError:
                continue
            yield fork, tree.put(path, _unit(n.label, 'a'))

    def _cr(self, st: _Steps, tree: _Tree, goal: Formula) -> Iterator[_Move]:
        for path, n in tree.walk():
            if n.unit is not None:
                continue
            fork = st.fork()
            fork.add('i_a', le(Compound('a', n.label, n.label), n.label))
            copies = list(n.items())
            fork.step('c_l', fork.seq.replace(
                constraints=fork.seq.constraints
                + tuple(x for x in copies if isinstance(x, Constraint)),
                ant=fork.seq.ant + tuple(x for x in copies if isinstance(x, LabeledFormula))))
            grown = tree.put(path, _node(n.label, ';', n, n))
            yield _Move(fork, None, ((fork.seq, grown, goal),))


def lbi_to_gbi(proof: Proof, delta: str = 'd') -> Proof:
    """GBI proof of the labeled image of an LBI proof's endsequent

    The bunch is laid out on delta and its path labels; every LBI step
    becomes the matching GBI rule, preceded where needed by the constraint
    rules that regroup, lift or copy parts of the bunch.
    """
    for path, node in proof_nodes(proof):
        if node.rule == 'cut':
            raise TranslationError("(cut) has no GBI image", path)
    require(calculus_lbi(), proof)
    end = proof.conclusion
    assert isinstance(end, BunchedSequent)
    seq = gbi_image(end, delta)
    translator = _Translator(sorted(seq.labels()))
    result = translator.translate(proof, (), _plant(end.bunch, delta), seq)
    report = check(calculus_gbi(), result)
    if not report.ok:
        where, reason = report.failures[0]
        raise TranslationError(f"GBI image does not check: {reason}", where)
    LOGGER.debug("translated LBI proof into GBI with %d fresh labels",
                 len(translator.supply.used))
    return result


def bunch_reconstruct(s: GbiSequent, label: str) -> Bunch:
    """Read the bunch below label off the constraints of s

    A label with several constraints above nothing else is reported, not
    resolved; so is every cycle met on the way.
    """
    if label not in UNIT_OF.values() and label not in s.all_labels():
        raise ReconstructionError([('unknown-label', str(label))])
    reasons: List[Tuple[str, str]] = []
    explored: Set[str] = set()

    def note(kind: str, detail: str) -> None:
        if (kind, detail) not in reasons:
            reasons.append((kind, detail))

    def build(lab: str, stack: Tuple[str, ...]) -> Optional[Bunch]:
        if lab in UNIT_OF.values():
            return BUnit(lab)
        if reasons and lab in explored:
            return None
        explored.add(lab)
        found = [c for c in canon_set(s.constraints) if c.hi == lab and c.lo != lab]
        if not found:
            return BLeaf(conj(lf.formula for lf in s.ant if lf.label == lab))
        if len(found) > 1:
            note('ambiguous-root', f"{lab}: {', '.join(c.text for c in found)}")
        results = [follow(c, stack + (lab,)) for c in found]
        return results[0] if len(results) == 1 else None

    def follow(c: Constraint, stack: Tuple[str, ...]) -> Optional[Bunch]:
        below = [c.lo.left, c.lo.right] if isinstance(c.lo, Compound) else [c.lo]
        parts = []
        for lab in below:
            if lab in stack:
                note('cycle', c.text)
                return None
            if lab == ABSURD:
                note('unknown-label', f"{ABSURD} in {c.text}")
                return None
            parts.append(build(lab, stack))
        if any(p is None for p in parts):
            return None
        if isinstance(c.lo, Compound):
            op = ',' if c.lo.op == 'm' else ';'
            return BNode(op, parts[0], parts[1])  # type: ignore[arg-type]
        return parts[0]

    result = build(label, ())
    if reasons or result is None:
        raise ReconstructionError(reasons)
    return result
