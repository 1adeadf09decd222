"""
Conditional logic V: IG(V) proofs to G_lV proofs
"""

import itertools
import logging
from typing import Final, List, Optional, Sequence, Tuple

from ..conditional import calculus_glv, calculus_igv
from ..errors import ShapeError, TranslationError
from ..formula import Pref
from ..gentzen import CLASSICAL
from ..kernel import Annotations, Path, Proof, Supply, match
from ..sequents import (Block, BlockSequent, Forces, GlvSequent, LabeledFormula, SphereOf,
                        Structure, Sub)
from .common import chain, require

LOGGER: Final = logging.getLogger(__name__)

Labels = List[Tuple[Block, str]]

_AXIOMS: Final = ('id', 'bot_l', 'top_r')
_PROPOSITIONAL: Final = tuple(name for name, _ in CLASSICAL)


def glv_image(s: BlockSequent, world: str, labels: Sequence[Tuple[Block, str]]) -> GlvSequent:
    """t(S): every block [S <| B] with sphere a gives a in S(x), a ||- B on
    the left and a ||- S on the right"""
    ant: List[Structure] = [SphereOf(a, world) for _, a in labels]
    ant += [Forces(a, block.target) for block, a in labels]
    ant += [LabeledFormula(world, f) for f in s.ant]
    suc: List[Structure] = [LabeledFormula(world, f) for f in s.suc]
    suc += [Forces(a, g) for block, a in labels for g in block.sigma]
    return GlvSequent(tuple(ant), tuple(suc))


def _take(labels: Labels, block: Block) -> Tuple[str, Labels]:
    for i, (b, a) in enumerate(labels):
        if b == block:
            return a, labels[:i] + labels[i + 1:]
    raise TranslationError(f"no sphere label for block {block.text}")


def _block(s: BlockSequent, text: object) -> Block:
    return next(b for b in s.blocks if b.text == text)


def _covers(big: GlvSequent, small: GlvSequent) -> bool:
    return set(small.ant) <= set(big.ant) and set(small.suc) <= set(big.suc)


def _blocked(node: Proof) -> BlockSequent:
    s = node.conclusion
    assert isinstance(s, BlockSequent)
    return s


def _arrange(node: Proof, plan: Sequence[Labels], path: Path) -> List[Tuple[int, Labels]]:
    """Pair each labelling with the premise carrying exactly its blocks"""
    free = list(range(len(node.premises)))
    pairs = []
    for labels in plan:
        want = sorted(b.text for b, _ in labels)
        i = next((i for i in free
                  if sorted(b.text for b in _blocked(node.premises[i]).blocks) == want), None)
        if i is None:
            raise TranslationError(f"no ({node.rule}) premise with blocks {want}", path)
        free.remove(i)
        pairs.append((i, labels))
    return pairs


class _Translator:
    def __init__(self, used: Sequence[str]):
        self.igv = calculus_igv()
        self.glv = calculus_glv('struct')
        self.supply = Supply(avoid=used)

    def expand(self, rule: str, seq: GlvSequent, path: Path,
               targets: Optional[Sequence[GlvSequent]] = None, fresh: Optional[str] = None,
               **want: object) -> Tuple[GlvSequent, ...]:
        """Premises of a G_lV instance on seq with the wanted annotations"""
        found = self.glv.rule(rule)
        assert found is not None and found.expand is not None
        supply = Supply(avoid=seq.labels(), fixed=[fresh] if fresh else None, searching=False)
        for premises, ann in found.expand(seq, supply):
            if any(ann.get(k) != v for k, v in want.items()):
                continue
            glv = tuple(p for p in premises if isinstance(p, GlvSequent))
            if targets is None:
                return glv
            for order in itertools.permutations(glv):
                if all(_covers(p, t) for p, t in zip(order, targets)):
                    return order
        raise TranslationError(f"({rule}) has no suitable instance on {seq.text}", path)

    def connect(self, goal: GlvSequent, proof: Proof, path: Path) -> Proof:
        """Weaken the conclusion of proof up to goal"""
        got = proof.conclusion
        assert isinstance(got, GlvSequent)
        if got == goal:
            return proof
        if not _covers(goal, got):
            raise TranslationError(f"cannot weaken {got.text} to {goal.text}", path)
        return Proof('wk', goal, (proof,))

    def translate(self, node: Proof, path: Path, world: str, labels: Labels) -> Proof:
        s = node.conclusion
        assert isinstance(s, BlockSequent)
        here = glv_image(s, world, labels)
        ann, reason = match(self.igv, node)
        if ann is None:
            raise TranslationError(f"unmatched ({node.rule}): {reason}", path)
        if node.rule in _AXIOMS:
            return Proof(node.rule, here)
        if node.rule in _PROPOSITIONAL:
            return self._propositional(node, path, world, labels, here, ann)
        if node.rule == 'pref_r':
            return self._pref_r(node, path, world, labels, here, ann)
        if node.rule == 'pref_l':
            return self._pref_l(node, path, world, labels, here, ann)
        if node.rule == 'com':
            return self._com(node, path, world, labels, here, ann)
        if node.rule == 'jump':
            return self._jump(node, path, labels, here, ann)
        raise TranslationError(f"({node.rule}) has no G_lV counterpart", path)

    def _premises(self, node: Proof, path: Path, world: str, here: GlvSequent, rule: str,
                  plan: Sequence[Labels], fresh: Optional[str] = None,
                  **want: object) -> Proof:
        pairs = _arrange(node, plan, path)
        targets = [glv_image(_blocked(node.premises[i]), world, labels) for i, labels in pairs]
        glv = self.expand(rule, here, path, targets, fresh, **want)
        subs = tuple(self.connect(g, self.translate(node.premises[i], path + (i,), world, labels),
                                  path)
                     for g, (i, labels) in zip(glv, pairs))
        return Proof(rule, here, subs)

    def _propositional(self, node: Proof, path: Path, world: str, labels: Labels,
                       here: GlvSequent, ann: Annotations) -> Proof:
        principal = f"{world}:{ann['principal']}"
        return self._premises(node, path, world, here, node.rule,
                              [labels] * len(node.premises), principal=principal)

    def _pref_r(self, node: Proof, path: Path, world: str, labels: Labels, here: GlvSequent,
                ann: Annotations) -> Proof:
        s = node.conclusion
        assert isinstance(s, BlockSequent)
        f = next(g for g in s.suc if isinstance(g, Pref) and g.text == ann['principal'])
        a = self.supply.fresh('a')
        plan = [labels + [(Block((f.left,), f.right), a)]]
        return self._premises(node, path, world, here, 'pref_r', plan, fresh=a,
                              principal=f"{world}:{f.text}")

    def _pref_l(self, node: Proof, path: Path, world: str, labels: Labels, here: GlvSequent,
                ann: Annotations) -> Proof:
        s = node.conclusion
        assert isinstance(s, BlockSequent)
        f = next(g for g in s.ant if isinstance(g, Pref) and g.text == ann['principal'])
        block = _block(s, ann['block'])
        a, rest = _take(labels, block)
        grown = Block(block.sigma + (f.right,), block.target)
        split = Block(block.sigma, f.left)
        # both blocks of the second premise live in the sphere of the old one
        plan = [rest + [(grown, a)], rest + [(split, a), (block, a)]]
        return self._premises(node, path, world, here, 'pref_l', plan,
                              principal=f"{world}:{f.text}", sphere=a)

    def _com(self, node: Proof, path: Path, world: str, labels: Labels, here: GlvSequent,
             ann: Annotations) -> Proof:
        s = node.conclusion
        assert isinstance(s, BlockSequent)
        texts = ann['blocks']
        assert isinstance(texts, list)
        first = _block(s, texts[0])
        a, rest = _take(labels, first)
        second = next(blk for blk, _ in rest if blk.text == texts[1])
        b, rest = _take(rest, second)
        union = first.sigma + second.sigma
        plans = [rest + [(Block(union, first.target), a), (second, b)],
                 rest + [(first, a), (Block(union, second.target), b)]]
        pairs = _arrange(node, plans, path)
        if a == b:
            # one sphere for both blocks: the images coincide
            i, labels = pairs[0]
            return self.connect(here, self.translate(node.premises[i], path + (i,), world,
                                                     labels), path)
        try:
            glv = self.expand('nes', here, path, spheres=[a, b])
        except TranslationError:
            glv = self.expand('nes', here, path, spheres=[b, a])
        branches = []
        for q in glv:
            inc = next(t for t in q.ant if isinstance(t, Sub) and t not in here.ant)
            k = 0 if (inc.small, inc.big) == (a, b) else 1
            sigma = second.sigma if k == 0 else first.sigma
            i, labels = pairs[k]
            branches.append(self._mon_branch(q, inc, sigma, node.premises[i], path + (i,),
                                             world, labels))
        return Proof('nes', here, tuple(branches))

    def _mon_branch(self, q: GlvSequent, inc: Sub, sigma: Sequence[object], premise: Proof,
                    path: Path, world: str, labels: Labels) -> Proof:
        """(mon) copies the larger sphere's forcings to the smaller one"""
        steps: List[Tuple[str, Structure]] = []
        current = q
        for g in sigma:
            new = Forces(inc.small, g)
            if new in current.suc:
                continue
            steps.append(('mon', current))
            current = current.add(suc=[new])
        top = self.connect(current, self.translate(premise, path, world, labels), path)
        return chain(top, tuple(reversed(steps)))

    def _jump(self, node: Proof, path: Path, labels: Labels, here: GlvSequent,
              ann: Annotations) -> Proof:
        s = node.conclusion
        assert isinstance(s, BlockSequent)
        block = _block(s, ann['block'])
        a, _ = _take(labels, block)
        y = self.supply.fresh('y')
        current, = self.expand('forces_l', here, path, fresh=y,
                               principal=Forces(a, block.target).text)
        below = current
        steps: List[Tuple[str, Structure]] = []
        for g in block.sigma:
            if LabeledFormula(y, g) in current.suc:
                continue
            steps.append(('forces_r', current))
            current, = self.expand('forces_r', current, path,
                                   principal=Forces(a, g).text, world=y)
        top = self.connect(current, self.translate(node.premises[0], path + (0,), y, []), path)
        top = chain(top, tuple(reversed(steps)))
        assert top.conclusion == below
        return Proof('forces_l', here, (top,))


def igv_to_glv(proof: Proof, world: str = 'x', spheres: Optional[Sequence[str]] = None) -> Proof:
    """Image of an IG(V) proof of S as a G_lV proof of t(S) at world and spheres

    The endsequent's blocks take the sphere labels left to right; blocks
    created on the way get fresh ones, and every (jump) a fresh world.
    """
    require(calculus_igv(), proof)
    end = proof.conclusion
    assert isinstance(end, BlockSequent)
    translator = _Translator([world] + list(spheres or ()))
    if spheres is None:
        spheres = [translator.supply.fresh('a') for _ in end.blocks]
    if len(spheres) != len(end.blocks):
        raise ShapeError(f"{len(end.blocks)} blocks but {len(spheres)} sphere labels")
    labels = list(zip(end.blocks, spheres))
    result = translator.translate(proof, (), world, labels)
    LOGGER.debug("translated IG(V) proof into G_lV with %d fresh labels",
                 len(translator.supply.used))
    return result
