"""
Nested sequent calculi N(Kt) and N(IL) with deep inference
"""

import logging
from typing import Callable, Final, Iterator, List, Optional, Tuple

from .errors import ShapeError, TranslationError
from .formula import And, Atom, BBox, BDia, Bot, Box, Dia, Formula, Not, Or, Sup
from .kernel import Annotations, Calculus, Expansion, Rule, Supply
from .labeled import tree_cert
from .sequents import ILNode, KtNode, LabeledSequent, Structure, canon_set, remove_one

LOGGER: Final = logging.getLogger(__name__)

Path = Tuple[int, ...]
KtExpansion = Tuple[Tuple[KtNode, ...], Annotations]
KtLocal = Callable[[KtNode, bool], Iterator[KtExpansion]]


# Tense nested sequents: holes addressed by child-index paths

def kt_positions(node: KtNode, path: Path = ()) -> Iterator[Tuple[Path, KtNode]]:
    yield path, node
    for i, (_, child) in enumerate(node.children):
        yield from kt_positions(child, path + (i,))


def kt_replace(node: KtNode, path: Path, new: KtNode) -> KtNode:
    if not path:
        return new
    head, rest = path[0], path[1:]
    children = list(node.children)
    kind, child = children[head]
    children[head] = (kind, kt_replace(child, rest, new))
    return KtNode(node.formulas, tuple(children))


def _where(path: Path) -> str:
    return '.'.join(str(i) for i in path) or 'root'


def _kt_principal(node: KtNode, cls: type) -> Iterator[Tuple[Formula, Tuple[Formula, ...]]]:
    for f in canon_set(node.formulas):
        if isinstance(f, cls):
            yield f, remove_one(node.formulas, f)


def kt_id(node: KtNode, searching: bool = False) -> Iterator[KtExpansion]:
    for f in canon_set(node.formulas):
        if isinstance(f, Not) and isinstance(f.sub, Atom) and f.sub in node.formulas:
            yield (), {'principal': f.sub.text}
            return


def kt_or(node: KtNode, searching: bool = False) -> Iterator[KtExpansion]:
    for f, rest in _kt_principal(node, Or):
        yield (KtNode(rest + (f.left, f.right), node.children),), {'principal': f.text}


def kt_and(node: KtNode, searching: bool = False) -> Iterator[KtExpansion]:
    for f, rest in _kt_principal(node, And):
        yield (KtNode(rest + (f.left,), node.children),
               KtNode(rest + (f.right,), node.children)), {'principal': f.text}


def kt_box(black: bool) -> KtLocal:
    cls, kind = (BBox, 'b') if black else (Box, 'o')

    def local(node: KtNode, searching: bool = False) -> Iterator[KtExpansion]:
        for f, rest in _kt_principal(node, cls):
            child = (kind, KtNode((f.sub,)))
            yield (KtNode(rest, node.children + (child,)),), {'principal': f.text}
    return local


def kt_dia_down(black: bool) -> KtLocal:
    """<>A at a node sends A into its o-children; <b>A into its b-children"""
    cls, kind = (BDia, 'b') if black else (Dia, 'o')

    def local(node: KtNode, searching: bool = False) -> Iterator[KtExpansion]:
        for f, _ in _kt_principal(node, cls):
            for i, (k, child) in enumerate(node.children):
                if k != kind or (searching and f.sub in child.formulas):
                    continue
                children = list(node.children)
                children[i] = (k, KtNode(child.formulas + (f.sub,), child.children))
                yield (KtNode(node.formulas, tuple(children)),), \
                    {'principal': f.text, 'child': i}
    return local


def kt_dia_up(black: bool) -> KtLocal:
    """<>A inside a b-child sends A to the parent; <b>A inside an o-child likewise"""
    cls, kind = (BDia, 'o') if black else (Dia, 'b')

    def local(node: KtNode, searching: bool = False) -> Iterator[KtExpansion]:
        seen = set()
        for i, (k, child) in enumerate(node.children):
            if k != kind:
                continue
            for f, _ in _kt_principal(child, cls):
                if f in seen or (searching and f.sub in node.formulas):
                    continue
                seen.add(f)
                yield (KtNode(node.formulas + (f.sub,), node.children),), \
                    {'principal': f.text, 'child': i}
    return local


def deep(name: str, local: KtLocal, **kwargs: object) -> Rule:
    """Apply a node-local rule at any position of the tree"""
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if not isinstance(seq, KtNode):
            return
        for path, node in kt_positions(seq):
            for premises, ann in local(node, supply.searching):
                yield (tuple(kt_replace(seq, path, p) for p in premises),
                       dict(ann, node=_where(path)))
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


def shallow(name: str, local: KtLocal, **kwargs: object) -> Rule:
    """Apply a node-local rule at the root only"""
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if isinstance(seq, KtNode):
            yield from local(seq, supply.searching)
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


def calculus_nkt() -> Calculus:
    rules = [
        deep('id', kt_id, axiom=True),
        deep('or', kt_or, invertible=True),
        deep('and', kt_and, invertible=True),
        deep('box', kt_box(False), invertible=True),
        deep('bbox', kt_box(True), invertible=True),
        deep('dia1', kt_dia_down(False)),
        deep('dia2', kt_dia_up(False)),
        deep('bdia1', kt_dia_down(True)),
        deep('bdia2', kt_dia_up(True)),
    ]
    return Calculus('nkt', KtNode, 'ktnest', 'tense', rules,
                    'deep-inference nested calculus for tense logic Kt')


def kt_n_translate(lam: LabeledSequent) -> KtNode:
    """Nested image of a one-sided tense sequent whose atoms form a directed tree"""
    cert = tree_cert(lam)
    if not cert.ok:
        raise TranslationError(f"not a labeled tree: {cert.reason}")
    if cert.root is None:
        return KtNode()
    children_of = {}
    for atom in lam.rel:
        children_of.setdefault(atom.src, []).append(atom.dst)

    def build(v: str) -> KtNode:
        formulas = tuple(lf.formula for lf in lam.suc if lf.label == v)
        kids = tuple(('o', build(z)) for z in sorted(children_of.get(v, [])))
        return KtNode(formulas, kids)

    return build(cert.root)


# Intuitionistic nested sequents: holes addressed by nesting labels

def il_replace(root: ILNode, label: str, new: ILNode) -> ILNode:
    if root.label == label:
        return new
    return ILNode(root.label, root.ant, root.suc,
                  tuple(il_replace(c, label, new) for c in root.children))


def nested_reachable(s: ILNode, w: str, u: str) -> bool:
    """u lies in the subtree rooted at w"""
    start = s.find(w)
    if start is None:
        raise ShapeError(f"no nesting labeled {w}")
    if s.find(u) is None:
        raise ShapeError(f"no nesting labeled {u}")
    return u in start.labels()


ILLocal = Callable[[ILNode, ILNode, Supply], Iterator[Expansion]]


def _il_principal(side: Tuple[Formula, ...], cls: type
                  ) -> Iterator[Tuple[Formula, Tuple[Formula, ...]]]:
    for f in canon_set(side):
        if isinstance(f, cls):
            yield f, remove_one(side, f)


def _with(node: ILNode, ant: Optional[Tuple[Formula, ...]] = None,
          suc: Optional[Tuple[Formula, ...]] = None,
          children: Optional[Tuple[ILNode, ...]] = None) -> ILNode:
    return ILNode(node.label, node.ant if ant is None else ant,
                  node.suc if suc is None else suc,
                  node.children if children is None else children)


def nil_id(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    for f in canon_set(node.ant):
        if not isinstance(f, Atom):
            continue
        for target in node.nodes():
            if f in target.suc:
                yield (), {'principal': f.text, 'node': node.label, 'target': target.label}
                return


def nil_bot_l(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    if Bot() in node.ant:
        yield (), {'principal': Bot().text, 'node': node.label}


def nil_and_l(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    for f, rest in _il_principal(node.ant, And):
        new = _with(node, ant=rest + (f.left, f.right))
        yield (il_replace(root, node.label, new),), {'principal': f.text, 'node': node.label}


def nil_or_l(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    for f, rest in _il_principal(node.ant, Or):
        left, right = _with(node, ant=rest + (f.left,)), _with(node, ant=rest + (f.right,))
        yield (il_replace(root, node.label, left), il_replace(root, node.label, right)), \
            {'principal': f.text, 'node': node.label}


def nil_or_r(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    for f, rest in _il_principal(node.suc, Or):
        new = _with(node, suc=rest + (f.left, f.right))
        yield (il_replace(root, node.label, new),), {'principal': f.text, 'node': node.label}


def nil_and_r(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    for f, rest in _il_principal(node.suc, And):
        left, right = _with(node, suc=rest + (f.left,)), _with(node, suc=rest + (f.right,))
        yield (il_replace(root, node.label, left), il_replace(root, node.label, right)), \
            {'principal': f.text, 'node': node.label}


def nil_sup_l(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    """A => B at w propagates B (left) and A (right) to any u reachable from w"""
    for f, _ in _il_principal(node.ant, Sup):
        for target in node.nodes():
            if supply.searching and (f.right in target.ant or f.left in target.suc):
                continue
            first = _with(target, ant=target.ant + (f.right,))
            second = _with(target, suc=target.suc + (f.left,))
            yield (il_replace(root, target.label, first),
                   il_replace(root, target.label, second)), \
                {'principal': f.text, 'node': node.label, 'target': target.label}


def nil_sup_r(root: ILNode, node: ILNode, supply: Supply) -> Iterator[Expansion]:
    for f, rest in _il_principal(node.suc, Sup):
        u = supply.fresh('w')
        child = ILNode(u, (f.left,), (f.right,))
        new = _with(node, suc=rest, children=node.children + (child,))
        yield (il_replace(root, node.label, new),), \
            {'principal': f.text, 'node': node.label, 'target': u}


def il_deep(name: str, local: ILLocal, **kwargs: object) -> Rule:
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if not isinstance(seq, ILNode):
            return
        for node in seq.nodes():
            yield from local(seq, node, supply)
    return Rule(name, expand=expand, **kwargs)  # type: ignore[arg-type]


def calculus_nil() -> Calculus:
    rules = [
        il_deep('id', nil_id, axiom=True),
        il_deep('bot_l', nil_bot_l, axiom=True),
        il_deep('and_l', nil_and_l, invertible=True),
        il_deep('or_r', nil_or_r, invertible=True),
        il_deep('or_l', nil_or_l, invertible=True),
        il_deep('and_r', nil_and_r, invertible=True),
        il_deep('sup_r', nil_sup_r, invertible=True, fresh=1),
        il_deep('sup_l', nil_sup_l),
    ]
    return Calculus('nil', ILNode, 'ilnest', 'int', rules,
                    'nested calculus for intuitionistic logic with reachability rules')


def il_labels_distinct(s: ILNode) -> bool:
    labels: List[str] = [n.label for n in s.nodes()]
    return len(labels) == len(set(labels))
