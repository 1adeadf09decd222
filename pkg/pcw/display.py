"""
Display calculus D(Kt): shallow rules plus residuation, and two-sided structures
"""

import logging
from collections import deque
from typing import Callable, Final, Iterator, List

import networkx as nx

from .errors import ShapeError
from .formula import Formula
from .kernel import Calculus, Expansion, Rule, Supply
from .nested import kt_and, kt_box, kt_dia_down, kt_id, kt_or, shallow
from .sequents import DBullet, DComma, DStructure, KtNode, Structure

LOGGER: Final = logging.getLogger(__name__)


def _without(node: KtNode, index: int) -> KtNode:
    children = node.children[:index] + node.children[index + 1:]
    return KtNode(node.formulas, children)


def residuate(node: KtNode, kind: str) -> Iterator[KtNode]:
    """Move the root into each child of the given kind, hanging the rest below it

    kind 'b' gives (rf): .[G], D from G, o[D]; kind 'o' gives (rp): o[G], D from G, .[D].
    """
    back = 'o' if kind == 'b' else 'b'
    for i, (k, child) in enumerate(node.children):
        if k != kind:
            continue
        rest = _without(node, i)
        yield KtNode(child.formulas, child.children + ((back, rest),))


def _residuation(kind: str) -> Callable[[Structure, Supply], Iterator[Expansion]]:
    def expand(seq: Structure, supply: Supply) -> Iterator[Expansion]:
        if not isinstance(seq, KtNode):
            return
        seen = set()
        for premise in residuate(seq, kind):
            if premise in seen:
                continue
            seen.add(premise)
            yield (premise,), {}
    return expand


def calculus_dkt() -> Calculus:
    rules = [
        shallow('id', kt_id, axiom=True),
        shallow('or', kt_or, invertible=True),
        shallow('and', kt_and, invertible=True),
        shallow('box', kt_box(False), invertible=True),
        shallow('bbox', kt_box(True), invertible=True),
        shallow('dia', kt_dia_down(False)),
        shallow('bdia', kt_dia_down(True)),
        Rule('rf', expand=_residuation('b')),
        Rule('rp', expand=_residuation('o')),
    ]
    return Calculus('dkt', KtNode, 'ktnest', 'tense', rules,
                    'shallow display calculus for tense logic Kt')


def display_neighbours(node: KtNode) -> Iterator[KtNode]:
    yield from residuate(node, 'b')
    yield from residuate(node, 'o')


def display_equivalent(a: KtNode, b: KtNode, budget: int) -> bool:
    """b is reachable from a by at most budget (rf)/(rp) steps"""
    if budget < 0:
        raise ShapeError("budget must be non-negative")
    if a == b:
        return True
    if sorted(f.text for f in _formulas(a)) != sorted(f.text for f in _formulas(b)):
        return False
    frontier = deque([(a, 0)])
    seen = {a}
    while frontier:
        current, steps = frontier.popleft()
        if steps == budget:
            continue
        for nxt in display_neighbours(current):
            if nxt == b:
                return True
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, steps + 1))
    LOGGER.debug("display search exhausted after %d sequents", len(seen))
    return False


def display_path(a: KtNode, b: KtNode, budget: int) -> List[KtNode]:
    """The (rf)/(rp) chain from a to b, both ends included; empty when none exists"""
    if a == b:
        return [a]
    parent = {a: a}
    frontier = deque([(a, 0)])
    while frontier:
        current, steps = frontier.popleft()
        if steps == budget:
            continue
        for nxt in display_neighbours(current):
            if nxt in parent:
                continue
            parent[nxt] = current
            if nxt == b:
                chain = [b]
                while chain[-1] != a:
                    chain.append(parent[chain[-1]])
                return chain[::-1]
            frontier.append((nxt, steps + 1))
    return []


def _formulas(node: KtNode) -> Iterator[Formula]:
    yield from node.formulas
    for _, child in node.children:
        yield from _formulas(child)


# Two-sided display structures

def _parts(x: DStructure) -> Iterator[DStructure]:
    if isinstance(x, DComma):
        yield from _parts(x.left)
        yield from _parts(x.right)
    else:
        yield x


def structure_graph(x: DStructure, side: str) -> nx.DiGraph:
    """Polytree of one side of a display sequent

    Nodes carry the bullet-free parts; a bulleted substructure becomes a
    neighbour, with the edge pointing at the parent in the antecedent and
    away from it in the consequent.
    """
    if side not in ('ant', 'suc'):
        raise ShapeError(f"side must be 'ant' or 'suc', got {side!r}")
    graph = nx.DiGraph()

    def build(node: DStructure) -> int:
        nid = graph.number_of_nodes()
        parts = list(_parts(node))
        plain = [p.text for p in parts if not isinstance(p, DBullet)]
        graph.add_node(nid, content=' o '.join(plain))
        for p in parts:
            if isinstance(p, DBullet):
                child = build(p.sub)
                if side == 'ant':
                    graph.add_edge(child, nid)
                else:
                    graph.add_edge(nid, child)
        return nid

    build(x)
    if not nx.is_tree(graph):
        raise ShapeError(f"structure does not encode a polytree: {x.text}")
    return graph
