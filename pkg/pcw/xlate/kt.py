"""
Tense logic: labeled polytree sequents to display sequents, L(Kt) proofs to D(Kt)
"""

import logging
from typing import Dict, Final, List, Set, Tuple

from ..display import display_path, residuate
from ..errors import ShapeError, TranslationError
from ..kernel import Path, Proof, match
from ..labeled import calculus_lkt, polytree_cert
from ..sequents import KtNode, LabeledSequent
from .common import require

LOGGER: Final = logging.getLogger(__name__)

__all__ = ['d_translate', 'lkt_to_dkt', 'polytree_cert']


def d_translate(lam: LabeledSequent, root: str) -> KtNode:
    """D_root: outgoing edges become o-nestings, incoming ones b-nestings"""
    cert = polytree_cert(lam, root)
    if not cert.ok:
        raise TranslationError(f"not a labeled polytree: {cert.reason}")
    if root not in lam.labels():
        raise TranslationError(f"unknown root label: {root}")
    out: Dict[str, List[str]] = {}
    into: Dict[str, List[str]] = {}
    for atom in lam.rel:
        out.setdefault(atom.src, []).append(atom.dst)
        into.setdefault(atom.dst, []).append(atom.src)

    def build(v: str, seen: Set[str]) -> KtNode:
        seen.add(v)
        formulas = tuple(lf.formula for lf in lam.suc if lf.label == v)
        children: List[Tuple[str, KtNode]] = []
        for kind, neighbours in (('o', out.get(v, [])), ('b', into.get(v, []))):
            for u in sorted(neighbours):
                if u not in seen:
                    children.append((kind, build(u, seen)))
        return KtNode(formulas, tuple(children))

    return build(root, set())


def _principal_label(ann: Dict[str, object]) -> str:
    principal = str(ann.get('principal', ''))
    label, sep, _ = principal.partition(':')
    if not sep:
        raise TranslationError(f"no principal labeled formula in {ann!r}")
    return label


def _reroot(start: KtNode, goal: KtNode, budget: int, path: Path) -> List[Tuple[str, KtNode]]:
    """(rf)/(rp) steps turning start into goal, as (rule, premise) pairs"""
    chain = display_path(start, goal, budget)
    if not chain:
        raise TranslationError("display re-rooting failed", path)
    steps = []
    for before, after in zip(chain, chain[1:]):
        rule = 'rf' if after in residuate(before, 'b') else 'rp'
        steps.append((rule, after))
    return steps


def lkt_to_dkt(proof: Proof) -> Proof:
    """Step-wise image of an L(Kt) proof of |- w:A in D(Kt)

    Before each rule the display sequent is re-rooted at the label of the
    principal formula; the rule then applies at the root.
    """
    calc = calculus_lkt()
    require(calc, proof)
    end = proof.conclusion
    assert isinstance(end, LabeledSequent)
    if end.rel or end.ant or len(end.suc) != 1:
        raise ShapeError("L(Kt) endsequent must be a single labeled formula |- w:A")
    budget = 2 * max(1, len(_all_labels(proof)))

    def walk(node: Proof, path: Path, current: str) -> Proof:
        lam = node.conclusion
        assert isinstance(lam, LabeledSequent)
        ann, reason = match(calc, node)
        if ann is None:
            raise TranslationError(f"unmatched ({node.rule}): {reason}", path)
        if node.rule not in ('id', 'or', 'and', 'box', 'bbox', 'dia', 'bdia'):
            raise TranslationError(f"({node.rule}) has no display counterpart", path)
        v = _principal_label(ann)
        here = d_translate(lam, current)
        there = d_translate(lam, v)
        premises = tuple(walk(p, path + (i,), v) for i, p in enumerate(node.premises))
        top = Proof(node.rule, there, premises)
        if here == there:
            return top
        steps = _reroot(here, there, budget, path)
        sequents = [here] + [after for _, after in steps]
        # steps[i] is the rule whose conclusion is sequents[i]
        for i in range(len(steps) - 1, -1, -1):
            top = Proof(steps[i][0], sequents[i], (top,))
        return top

    root_label = end.suc[0].label
    return walk(proof, (), root_label)


def _all_labels(proof: Proof) -> Set[str]:
    found: Set[str] = set(proof.conclusion.labels())
    for p in proof.premises:
        found |= _all_labels(p)
    return found