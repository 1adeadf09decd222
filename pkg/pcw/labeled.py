"""
Labeled sequent calculi: L(S5), L(Kt) with geometric extensions, L(IL) and its
reachability variant, plus the graph certificates for labeled sequents
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import (Callable, Dict, Final, FrozenSet, Iterator, List, Optional, Sequence, Tuple,
                    Type)

import networkx as nx

from .errors import RuleError
from .formula import And, Atom, BBox, BDia, Bot, Box, Dia, Formula, Imp, Not, Or, Sup
from .kernel import Annotations, Calculus, Expansion, Rule, Supply
from .sequents import (LabeledFormula, LabeledSequent, RelAtom, Structure, canon_set,
                       multiset_minus, remove_one)

LOGGER: Final = logging.getLogger(__name__)

LabeledFn = Callable[[LabeledSequent, Supply], Iterator[Expansion]]


def _principal(side: Tuple[LabeledFormula, ...], cls: Type[Formula]
               ) -> Iterator[Tuple[LabeledFormula, Tuple[LabeledFormula, ...]]]:
    for lf in canon_set(side):
        if isinstance(lf.formula, cls):
            yield lf, remove_one(side, lf)


def _ann(lf: LabeledFormula, **extra: str) -> Annotations:
    return dict({'principal': lf.text}, **extra)


def at(label: str, f: Formula) -> LabeledFormula:
    return LabeledFormula(label, f)


def labeled_rule(name: str, fn: LabeledFn, one_sided: bool = False, **kwargs: object) -> Rule:
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if not isinstance(seq, LabeledSequent):
            return
        if one_sided and seq.ant:
            return
        yield from fn(seq, supply)
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


# Reachability

@lru_cache(maxsize=4096)
def _descendants(rel: Tuple[RelAtom, ...]) -> Dict[str, FrozenSet[str]]:
    graph = nx.DiGraph()
    graph.add_edges_from((a.src, a.dst) for a in rel)
    return {n: frozenset(nx.descendants(graph, n)) for n in graph.nodes}


def reachable(rel: Sequence[RelAtom], w: str, u: str) -> bool:
    """w reaches u along a directed chain of relational atoms (length 0 allowed)"""
    if w == u:
        return True
    return u in _descendants(tuple(sorted(rel, key=str))).get(w, frozenset())


# Shared two-sided propositional rules

def _neg_l(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.ant, Not):
        yield (s.replace(ant=rest, suc=s.suc + (at(lf.label, lf.formula.sub),)),), _ann(lf)


def _neg_r(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.suc, Not):
        yield (s.replace(ant=s.ant + (at(lf.label, lf.formula.sub),), suc=rest),), _ann(lf)


def _imp_l(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.ant, Imp):
        w, f = lf.label, lf.formula
        yield (s.replace(ant=rest, suc=s.suc + (at(w, f.left),)),
               s.replace(ant=rest + (at(w, f.right),))), _ann(lf)


def _imp_r(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.suc, Imp):
        w, f = lf.label, lf.formula
        yield (s.replace(ant=s.ant + (at(w, f.left),), suc=rest + (at(w, f.right),)),), _ann(lf)


def _and_l(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.ant, And):
        w, f = lf.label, lf.formula
        yield (s.replace(ant=rest + (at(w, f.left), at(w, f.right))),), _ann(lf)


def _and_r(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.suc, And):
        w, f = lf.label, lf.formula
        yield (s.replace(suc=rest + (at(w, f.left),)),
               s.replace(suc=rest + (at(w, f.right),))), _ann(lf)


def _or_l(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.ant, Or):
        w, f = lf.label, lf.formula
        yield (s.replace(ant=rest + (at(w, f.left),)),
               s.replace(ant=rest + (at(w, f.right),))), _ann(lf)


def _or_r(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.suc, Or):
        w, f = lf.label, lf.formula
        yield (s.replace(suc=rest + (at(w, f.left), at(w, f.right))),), _ann(lf)


# L(S5): simplified semantics, no relational atoms

def _s5_id(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf in canon_set(s.ant):
        if isinstance(lf.formula, Atom) and lf in s.suc:
            yield (), _ann(lf)
            return


def _s5_box_l1(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    """x:[]A gives x:A at its own label"""
    for lf, _ in _principal(s.ant, Box):
        copy = at(lf.label, lf.formula.sub)
        if supply.searching and copy in s.ant:
            continue
        yield (s.replace(ant=s.ant + (copy,)),), _ann(lf)


def _s5_box_l2(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    """x:[]A gives y:A for another label y of the sequent"""
    for lf, _ in _principal(s.ant, Box):
        for y in sorted(s.labels() - {lf.label}):
            copy = at(y, lf.formula.sub)
            if supply.searching and copy in s.ant:
                continue
            yield (s.replace(ant=s.ant + (copy,)),), _ann(lf, target=y)


def _s5_box_r(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.suc, Box):
        y = supply.fresh('w')
        yield (s.replace(suc=rest + (at(y, lf.formula.sub),)),), _ann(lf, target=y)


def calculus_ls5() -> Calculus:
    """L(S5): labeled classical rules with (box_r) on a fresh label and (box_l) on occurring ones"""
    rules = [
        labeled_rule('id', _s5_id, axiom=True),
        labeled_rule('neg_l', _neg_l, invertible=True),
        labeled_rule('neg_r', _neg_r, invertible=True),
        labeled_rule('imp_l', _imp_l, invertible=True),
        labeled_rule('imp_r', _imp_r, invertible=True),
        labeled_rule('box_r', _s5_box_r, invertible=True, fresh=1),
        labeled_rule('box_l1', _s5_box_l1),
        labeled_rule('box_l2', _s5_box_l2),
    ]
    return Calculus('ls5', LabeledSequent, 'labeled', 'modal', rules,
                    'labeled calculus for S5 over the simplified semantics')


# L(Kt): one-sided, relational atoms wRu

def _kt_id(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf in canon_set(s.suc):
        f = lf.formula
        if isinstance(f, Not) and isinstance(f.sub, Atom) and at(lf.label, f.sub) in s.suc:
            yield (), _ann(lf)
            return


def _kt_dia(black: bool) -> LabeledFn:
    cls = BDia if black else Dia

    def fn(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
        for lf, _ in _principal(s.suc, cls):
            w = lf.label
            for atom in canon_set(s.rel):
                if atom.kind != 'R':
                    continue
                if black and atom.dst == w:
                    u = atom.src
                elif not black and atom.src == w:
                    u = atom.dst
                else:
                    continue
                copy = at(u, lf.formula.sub)
                if supply.searching and copy in s.suc:
                    continue
                yield (s.replace(suc=s.suc + (copy,)),), _ann(lf, target=u)
    return fn


def _kt_box(black: bool) -> LabeledFn:
    cls = BBox if black else Box

    def fn(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
        for lf, rest in _principal(s.suc, cls):
            w, u = lf.label, supply.fresh('w')
            atom = RelAtom('R', u, w) if black else RelAtom('R', w, u)
            yield (s.replace(rel=s.rel + (atom,), suc=rest + (at(u, lf.formula.sub),)),), \
                _ann(lf, target=u)
    return fn


@dataclass(frozen=True)
class GeometricAxiom:
    """A frame condition A1 & ... & An -> Ey (B1 | ... | Bm) over R-atoms

    Atoms are (source, target) variable pairs; `fresh` lists the
    existentially bound variables of the disjuncts.
    """
    name: str
    antecedent: Tuple[Tuple[str, str], ...] = ()
    disjuncts: Tuple[Tuple[Tuple[str, str], ...], ...] = ()
    fresh: Tuple[str, ...] = ()

    def variables(self) -> List[str]:
        seen: List[str] = []
        atoms = list(self.antecedent) + [a for d in self.disjuncts for a in d]
        for atom in atoms:
            for var in atom:
                if var not in seen:
                    seen.append(var)
        return seen


GEOMETRIC: Final[Dict[str, GeometricAxiom]] = {
    'ser': GeometricAxiom('ser', (), ((('w', 'u'),),), ('u',)),
    'ref': GeometricAxiom('ref', (), ((('w', 'w'),),)),
    'tra': GeometricAxiom('tra', (('w', 'u'), ('u', 'v')), ((('w', 'v'),),)),
    'sym': GeometricAxiom('sym', (('w', 'u'),), ((('u', 'w'),),)),
    'euc': GeometricAxiom('euc', (('w', 'u'), ('w', 'v')), ((('u', 'v'),),)),
}


def _validate(axiom: GeometricAxiom) -> None:
    if not axiom.name:
        raise RuleError("geometric rule needs a name")
    if not axiom.disjuncts or any(not d for d in axiom.disjuncts):
        raise RuleError(f"geometric rule {axiom.name}: every disjunct needs at least one atom")
    for atom in list(axiom.antecedent) + [a for d in axiom.disjuncts for a in d]:
        if len(atom) != 2 or not all(isinstance(v, str) and v for v in atom):
            raise RuleError(f"geometric rule {axiom.name}: malformed atom {atom!r}")
    bound = {v for atom in axiom.antecedent for v in atom}
    clash = bound & set(axiom.fresh)
    if clash:
        raise RuleError(f"geometric rule {axiom.name}: fresh variables {sorted(clash)} "
                        f"occur in the antecedent")
    used = {v for d in axiom.disjuncts for atom in d for v in atom}
    if not set(axiom.fresh) <= used:
        raise RuleError(f"geometric rule {axiom.name}: unused fresh variables")


def _matches(atoms: Sequence[Tuple[str, str]], rel: Tuple[RelAtom, ...],
             sigma: Dict[str, str]) -> Iterator[Dict[str, str]]:
    if not atoms:
        yield dict(sigma)
        return
    (x, y), rest = atoms[0], atoms[1:]
    for atom in canon_set(rel):
        if atom.kind != 'R':
            continue
        if sigma.get(x, atom.src) != atom.src or sigma.get(y, atom.dst) != atom.dst:
            continue
        if x == y and atom.src != atom.dst:
            continue
        yield from _matches(rest, rel, dict(sigma, **{x: atom.src, y: atom.dst}))


def _instantiate(disjunct: Sequence[Tuple[str, str]], sigma: Dict[str, str]) -> Tuple[RelAtom, ...]:
    return tuple(RelAtom('R', sigma[x], sigma[y]) for x, y in disjunct)


def _satisfied(axiom: GeometricAxiom, rel: Tuple[RelAtom, ...], sigma: Dict[str, str],
               labels: Sequence[str]) -> bool:
    present = set(rel)
    for disjunct in axiom.disjuncts:
        local = [v for v in axiom.fresh if any(v in atom for atom in disjunct)]
        for values in itertools.product(labels, repeat=len(local)):
            full = dict(sigma, **dict(zip(local, values)))
            if all(a in present for a in _instantiate(disjunct, full)):
                return True
    return False


def compile_geometric(axiom: GeometricAxiom) -> Rule:
    """One premise per disjunct, each adding its atoms; the antecedent atoms stay"""
    _validate(axiom)
    bound = [v for atom in axiom.antecedent for v in atom]
    free = [v for v in axiom.variables() if v not in bound and v not in axiom.fresh]

    def expand(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
        labels = sorted(s.labels())
        seen = set()
        for sigma in _matches(list(axiom.antecedent), s.rel, {}):
            for values in itertools.product(labels, repeat=len(free)):
                full = dict(sigma, **dict(zip(free, values)))
                key = tuple(sorted(full.items()))
                if key in seen:
                    continue
                seen.add(key)
                if supply.searching and _satisfied(axiom, s.rel, full, labels):
                    continue
                for var in axiom.fresh:
                    full[var] = supply.fresh('w')
                premises = tuple(s.replace(rel=s.rel + _instantiate(d, full))
                                 for d in axiom.disjuncts)
                yield premises, {'assignment': ', '.join(f"{k}={v}" for k, v in key)}

    return labeled_rule(axiom.name, expand, one_sided=True, fresh=len(axiom.fresh))


def calculus_lkt(extensions: Sequence[str] = ()) -> Calculus:
    """L(Kt) plus the named geometric extensions (ser, ref, tra, sym, euc)"""
    unknown = [e for e in extensions if e not in GEOMETRIC]
    if unknown:
        raise RuleError(f"unknown L(Kt) extension(s): {', '.join(unknown)} "
                        f"(expected among {', '.join(GEOMETRIC)})")
    rules = [
        labeled_rule('id', _kt_id, one_sided=True, axiom=True),
        labeled_rule('or', _or_r, one_sided=True, invertible=True),
        labeled_rule('and', _and_r, one_sided=True, invertible=True),
        labeled_rule('box', _kt_box(False), one_sided=True, invertible=True, fresh=1),
        labeled_rule('bbox', _kt_box(True), one_sided=True, invertible=True, fresh=1),
        labeled_rule('dia', _kt_dia(False), one_sided=True),
        labeled_rule('bdia', _kt_dia(True), one_sided=True),
    ]
    ordered = [e for e in GEOMETRIC if e in set(extensions)]
    rules += [compile_geometric(GEOMETRIC[e]) for e in ordered]
    calc_id = '+'.join(['lkt'] + ordered)
    return Calculus(calc_id, LabeledSequent, 'labeled', 'tense', rules,
                    'one-sided labeled calculus for tense logic Kt')


# L(IL): relational atoms w <= u

def _le(w: str, u: str) -> RelAtom:
    return RelAtom('<=', w, u)


def _il_id(direct: bool) -> LabeledFn:
    def fn(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
        for lf in canon_set(s.ant):
            if not isinstance(lf.formula, Atom):
                continue
            for target in canon_set(s.suc):
                if target.formula != lf.formula:
                    continue
                w, u = lf.label, target.label
                ok = _le(w, u) in s.rel if direct else reachable(s.rel, w, u)
                if ok:
                    yield (), _ann(lf, target=u)
                    return
    return fn


def _il_bot_l(direct: bool) -> LabeledFn:
    def fn(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
        for lf in canon_set(s.ant):
            if not isinstance(lf.formula, Bot):
                continue
            if direct and not any(a.src == lf.label for a in s.rel):
                continue
            yield (), _ann(lf)
            return
    return fn


def _il_sup_l(direct: bool) -> LabeledFn:
    """w:A => B stays; the target u is a <=-successor (or reachable from w)"""
    def fn(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
        for lf, _ in _principal(s.ant, Sup):
            w, f = lf.label, lf.formula
            if direct:
                targets = sorted({a.dst for a in s.rel if a.src == w})
            else:
                targets = sorted(u for u in s.labels() if reachable(s.rel, w, u))
            for u in targets:
                if supply.searching and (at(u, f.right) in s.ant or at(u, f.left) in s.suc):
                    continue
                yield (s.replace(ant=s.ant + (at(u, f.right),)),
                       s.replace(suc=s.suc + (at(u, f.left),))), _ann(lf, target=u)
    return fn


def _il_sup_r(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for lf, rest in _principal(s.suc, Sup):
        w, f = lf.label, lf.formula
        u = supply.fresh('w')
        yield (LabeledSequent(s.rel + (_le(w, u),), s.ant + (at(u, f.left),),
                              rest + (at(u, f.right),)),), _ann(lf, target=u)


def _il_ref(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    for w in sorted(s.labels()):
        atom = _le(w, w)
        if supply.searching and atom in s.rel:
            continue
        yield (s.replace(rel=s.rel + (atom,)),), {'atom': atom.text}


def _il_tra(s: LabeledSequent, supply: Supply) -> Iterator[Expansion]:
    rel = canon_set(s.rel)
    for a in rel:
        for b in rel:
            if a.dst != b.src or a.kind != '<=' or b.kind != '<=':
                continue
            atom = _le(a.src, b.dst)
            if supply.searching and atom in s.rel:
                continue
            yield (s.replace(rel=s.rel + (atom,)),), {'atom': atom.text, 'via': b.src}


# Labeled structural rules

def _unary(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[LabeledSequent]:
    if len(premises) != 1 or not isinstance(concl, LabeledSequent):
        return None
    premise = premises[0]
    return premise if isinstance(premise, LabeledSequent) else None


def _extra(big: LabeledSequent, small: LabeledSequent
           ) -> Optional[Tuple[Tuple[RelAtom, ...], Tuple[LabeledFormula, ...],
                               Tuple[LabeledFormula, ...]]]:
    rel = multiset_minus(big.rel, small.rel)
    ant = multiset_minus(big.ant, small.ant)
    suc = multiset_minus(big.suc, small.suc)
    if rel is None or ant is None or suc is None:
        return None
    return rel, ant, suc


def verify_wk(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    premise = _unary(concl, premises)
    if premise is None:
        return None
    assert isinstance(concl, LabeledSequent)
    extra = _extra(concl, premise)
    if extra is None or not any(extra):
        return None
    return {'added': [x.text for part in extra for x in part]}


def verify_ctr(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    premise = _unary(concl, premises)
    if premise is None:
        return None
    assert isinstance(concl, LabeledSequent)
    extra = _extra(premise, concl)
    if extra is None or not any(extra):
        return None
    rel, ant, suc = extra
    if not (set(rel) <= set(concl.rel) and set(ant) <= set(concl.ant)
            and set(suc) <= set(concl.suc)):
        return None
    return {'contracted': [x.text for part in extra for x in part]}


def verify_ls(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    """The conclusion is the premise with one label substituted by another"""
    premise = _unary(concl, premises)
    if premise is None:
        return None
    assert isinstance(concl, LabeledSequent)
    for old in sorted(premise.labels()):
        for new in sorted(concl.labels() | premise.labels()):
            if old != new and premise.rename(old, new) == concl:
                return {'from': old, 'to': new}
    return None


def verify_lft(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    """R, w <= u, G, w:A |- D from R, w <= u, G, w:A, u:A |- D"""
    premise = _unary(concl, premises)
    if premise is None:
        return None
    assert isinstance(concl, LabeledSequent)
    extra = _extra(premise, concl)
    if extra is None:
        return None
    rel, ant, suc = extra
    if rel or suc or len(ant) != 1:
        return None
    copy = ant[0]
    for atom in canon_set(concl.rel):
        if atom.dst == copy.label and at(atom.src, copy.formula) in concl.ant:
            if atom.src == copy.label:
                continue
            return {'principal': at(atom.src, copy.formula).text, 'copy': copy.text}
    return None


def verify_cut(concl: Structure, premises: Tuple[Structure, ...]) -> Optional[Annotations]:
    """R, G |- w:A, D and R, G, w:A |- D give R, G |- D"""
    if len(premises) != 2 or not isinstance(concl, LabeledSequent):
        return None
    for left, right in (premises, premises[::-1]):
        if not isinstance(left, LabeledSequent) or not isinstance(right, LabeledSequent):
            return None
        if left.rel != concl.rel or right.rel != concl.rel:
            continue
        if left.ant != concl.ant or right.suc != concl.suc:
            continue
        a = multiset_minus(left.suc, concl.suc)
        b = multiset_minus(right.ant, concl.ant)
        if a is not None and b is not None and len(a) == 1 and a == b:
            return {'cut': a[0].text}
    return None


def labeled_structural_rules() -> List[Rule]:
    return [
        Rule('wk', verify=verify_wk, searchable=False),
        Rule('ctr', verify=verify_ctr, searchable=False),
        Rule('ls', verify=verify_ls, searchable=False),
        Rule('lft', verify=verify_lft, searchable=False),
        Rule('cut', verify=verify_cut, searchable=False),
    ]


def _reachability_rules() -> List[Rule]:
    return [
        labeled_rule('r_id', _il_id(direct=False), axiom=True),
        labeled_rule('r_bot_l', _il_bot_l(direct=False), axiom=True),
        labeled_rule('p_sup_l', _il_sup_l(direct=False)),
    ]


LIL_VARIANTS: Final = ('core', 'reach', 'struct', 'full')


def calculus_lil(variant: str = 'core') -> Calculus:
    """L(IL) and its variants

    'reach' swaps (ref) and (tra) for the reachability rules; 'struct' adds
    the labeled structural rules; 'full' has everything, which is the input
    calculus of the (ref)/(tra) elimination.
    """
    if variant not in LIL_VARIANTS:
        raise RuleError(f"unknown L(IL) variant '{variant}' (expected one of "
                        f"{', '.join(LIL_VARIANTS)})")
    rules = [
        labeled_rule('id', _il_id(direct=True), axiom=True),
        labeled_rule('bot_l', _il_bot_l(direct=True), axiom=True),
        labeled_rule('and_l', _and_l, invertible=True),
        labeled_rule('or_r', _or_r, invertible=True),
        labeled_rule('or_l', _or_l, invertible=True),
        labeled_rule('and_r', _and_r, invertible=True),
        labeled_rule('sup_r', _il_sup_r, invertible=True, fresh=1),
        labeled_rule('sup_l', _il_sup_l(direct=True)),
        labeled_rule('ref', _il_ref),
        labeled_rule('tra', _il_tra),
    ]
    calc = Calculus('lil', LabeledSequent, 'labeled', 'int', rules,
                    'labeled calculus for intuitionistic logic')
    if variant == 'reach':
        return calc.extended('lil+reach', _reachability_rules(), drop=('ref', 'tra'))
    if variant == 'struct':
        return calc.extended('lil+struct', labeled_structural_rules())
    if variant == 'full':
        return calc.extended('lil+full', _reachability_rules() + labeled_structural_rules())
    return calc


# Certificates

@dataclass
class GraphCert:
    """Outcome of a shape check on the relational atoms of a labeled sequent"""
    ok: bool
    root: Optional[str] = None
    order: Tuple[str, ...] = ()
    reason: Optional[str] = None
    edges: List[Tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {'ok': self.ok, 'root': self.root, 'order': list(self.order),
                'reason': self.reason}


PolytreeCert = GraphCert
TreeCert = GraphCert


def _dangling(s: LabeledSequent, nodes: FrozenSet[str]) -> Optional[GraphCert]:
    if not s.rel:
        labels = sorted(s.formula_labels())
        if len(labels) <= 1:
            root = labels[0] if labels else None
            return GraphCert(True, root, tuple(labels))
        return GraphCert(False, reason=f"dangling label: {labels[1]}")
    missing = sorted(s.formula_labels() - nodes)
    if missing:
        return GraphCert(False, reason=f"dangling label: {missing[0]}")
    return None


def polytree_cert(s: LabeledSequent, root: Optional[str] = None) -> PolytreeCert:
    """R is connected and cycle-free as an undirected multigraph"""
    graph = nx.MultiGraph()
    graph.add_edges_from((a.src, a.dst) for a in s.rel)
    early = _dangling(s, frozenset(graph.nodes))
    if early is not None:
        return early
    if not nx.is_connected(graph):
        return GraphCert(False, reason="disconnected")
    if graph.number_of_edges() != graph.number_of_nodes() - 1:
        return GraphCert(False, reason="cycle")
    start = root if root is not None else sorted(graph.nodes)[0]
    if start not in graph:
        return GraphCert(False, reason=f"unknown root: {start}")
    order = tuple(nx.bfs_tree(graph, start).nodes)
    return GraphCert(True, start, order, edges=[(a.src, a.dst) for a in s.rel])


def tree_cert(s: LabeledSequent) -> TreeCert:
    """R is a directed tree with a single root"""
    graph = nx.MultiDiGraph()
    graph.add_edges_from((a.src, a.dst) for a in s.rel)
    early = _dangling(s, frozenset(graph.nodes))
    if early is not None:
        return early
    if not nx.is_weakly_connected(graph):
        return GraphCert(False, reason="disconnected")
    if graph.number_of_edges() != graph.number_of_nodes() - 1:
        return GraphCert(False, reason="cycle")
    roots = sorted(n for n in graph.nodes if graph.in_degree(n) == 0)
    if len(roots) != 1:
        return GraphCert(False, reason="several parents")
    order = tuple(nx.dfs_preorder_nodes(graph, roots[0]))
    return GraphCert(True, roots[0], order, edges=[(a.src, a.dst) for a in s.rel])
