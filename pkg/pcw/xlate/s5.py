"""
S5 translations: labeled proofs to hypersequents, and hypersequent S4 with
(s5') to sequent proofs with analytic cuts
"""

import logging
from typing import Dict, Final, FrozenSet, Iterable, List, Optional, Tuple

from ..errors import ShapeError, TranslationError
from ..formula import Box, Formula
from ..hypersequent import calculus_hs5_b
from ..kernel import Annotations, Calculus, Path, Proof, match, proof_nodes
from ..labeled import calculus_ls5
from ..sequents import GentzenSequent, Hypersequent, LabeledSequent, multiset_minus, remove_one
from .common import chain, require

LOGGER: Final = logging.getLogger(__name__)


def hyper_image(s: LabeledSequent, labels: Iterable[str]) -> Hypersequent:
    """H: one component per label, holding the formulas carrying it"""
    return Hypersequent(tuple(s.restrict(w) for w in sorted(labels)))


def h_labeled_to_hyper(proof: Proof) -> Proof:
    """Node-for-node image of an L(S5) proof in HS5-A

    A label whose formulas are all gone upward keeps its (empty) component.
    """
    require(calculus_ls5(), proof)
    if not proof.conclusion.labels():
        raise ShapeError("the endsequent carries no label")

    def walk(node: Proof, inherited: FrozenSet[str]) -> Proof:
        assert isinstance(node.conclusion, LabeledSequent)
        labels = inherited | node.conclusion.labels()
        return Proof(node.rule, hyper_image(node.conclusion, labels),
                     tuple(walk(p, labels) for p in node.premises), dict(node.annotations))

    return walk(proof, frozenset())


# Hypersequent S4 with (s5') to S4 + (5) + cut

Extra = Tuple[str, Formula, Path]

_LOCAL: Final = ('neg_l', 'neg_r', 'imp_l', 'imp_r', 'box_l')


def _with_extras(comp: GentzenSequent, extras: Iterable[Extra]) -> GentzenSequent:
    extras = list(extras)
    return comp.add(ant=[f for side, f, _ in extras if side == 'ant'],
                    suc=[f for side, f, _ in extras if side == 'suc'])


class _Extractor:
    """Follows one component of the hypersequent proof upward

    Every instance of (s5') carries a mode. In 'suc' mode the boxed formula
    sits as an extra in the consequent and the instance closes with an
    axiom on its boxed component; in 'ant' mode it sits in the antecedent
    and is absorbed where the instance merges it into the other component.
    """

    def __init__(self, calc: Calculus, modes: Dict[Path, str]):
        self.calc = calc
        self.modes = modes
        self.annotations: Dict[Path, Annotations] = {}
        self.memo: Dict[Tuple[Path, str, Tuple[str, ...]], Optional[Proof]] = {}

    def ann(self, path: Path, node: Proof) -> Annotations:
        if path not in self.annotations:
            found, _ = match(self.calc, node)
            self.annotations[path] = found or {}
        return self.annotations[path]

    def extract(self, node: Proof, path: Path, comp: GentzenSequent,
                extras: Tuple[Extra, ...]) -> Optional[Proof]:
        key = (path, comp.text, tuple(sorted(f"{s}:{f.text}:{p}" for s, f, p in extras)))
        if key not in self.memo:
            self.memo[key] = self._extract(node, path, comp, extras)
        return self.memo[key]

    def _extract(self, node: Proof, path: Path, comp: GentzenSequent,
                 extras: Tuple[Extra, ...]) -> Optional[Proof]:
        concl = node.conclusion
        assert isinstance(concl, Hypersequent)
        ann = self.ann(path, node)
        acted = ann.get('component')
        copies = concl.components.count(comp)
        if node.rule == 's5p':
            found = self._s5p(node, path, comp, extras, ann)
            if found is not None:
                return found
        elif node.rule not in ('ew', 'ec') and comp.text == acted:
            found = self._act(node, path, comp, extras)
            if found is not None:
                return found
        if comp.text == acted and copies == 1 and node.rule not in ('ew', 'ec'):
            return None
        for i, premise in enumerate(node.premises):
            assert isinstance(premise.conclusion, Hypersequent)
            if comp in premise.conclusion.components:
                found = self.extract(premise, path + (i,), comp, extras)
                if found is not None:
                    return found
        return None

    def _act(self, node: Proof, path: Path, comp: GentzenSequent,
             extras: Tuple[Extra, ...]) -> Optional[Proof]:
        target = _with_extras(comp, extras)
        concl = node.conclusion
        assert isinstance(concl, Hypersequent)
        if node.rule == 'id':
            return Proof('id', target)
        if node.rule not in _LOCAL and node.rule != 'box_r':
            raise TranslationError(f"({node.rule}) has no counterpart in the sequent calculus",
                                   path)
        rest = remove_one(concl.components, comp)
        parts = []
        for i, premise in enumerate(node.premises):
            assert isinstance(premise.conclusion, Hypersequent)
            diff = multiset_minus(premise.conclusion.components, rest)
            if diff is None or len(diff) != 1:
                return None
            sub = self.extract(premise, path + (i,), diff[0], extras)
            if sub is None:
                return None
            parts.append((diff[0], sub))
        if node.rule != 'box_r':
            return Proof(node.rule, target, tuple(sub for _, sub in parts))
        (premise_comp, sub), = parts
        suc_extras = [f for side, f, _ in extras if side == 'suc']
        if not suc_extras:
            return Proof('box_r', target, (sub,))
        # (4) cannot keep the extra consequent; (5) can, then weaken back
        ant_extras = [f for side, f, _ in extras if side == 'ant']
        boxed = Box(premise_comp.suc[0])
        five = GentzenSequent(premise_comp.ant + tuple(ant_extras), (boxed,) + tuple(suc_extras))
        steps: List[Tuple[str, GentzenSequent]] = []
        current = five
        for f in multiset_minus(target.ant, five.ant) or ():
            current = current.add(ant=(f,))
            steps.append(('wk_l', current))
        for f in multiset_minus(target.suc, five.suc) or ():
            current = current.add(suc=(f,))
            steps.append(('wk_r', current))
        return chain(Proof('box_5', five, (sub,)), tuple(steps))

    def _s5p(self, node: Proof, path: Path, comp: GentzenSequent, extras: Tuple[Extra, ...],
             ann: Annotations) -> Optional[Proof]:
        mode = self.modes.get(path)
        premise = node.premises[0]
        assert isinstance(premise.conclusion, Hypersequent)
        if comp.text == ann.get('boxed') and mode == 'suc':
            return Proof('id', _with_extras(comp, extras))
        if comp.text != ann.get('component'):
            return None
        if mode is None:
            merged = comp
            kept = extras
        elif mode == 'ant':
            kept = tuple(e for e in extras if e[2] != path)
            merged = comp.add(ant=[e[1] for e in extras if e[2] == path])
        else:
            return None
        if merged not in premise.conclusion.components:
            return None
        return self.extract(premise, path + (0,), merged, kept)


def _instances(calc: Calculus, proof: Proof) -> List[Tuple[Path, Formula]]:
    found = []
    for path, node in proof_nodes(proof):
        if node.rule != 's5p':
            continue
        ann, _ = match(calc, node)
        concl = node.conclusion
        assert ann is not None and isinstance(concl, Hypersequent)
        boxed = next(c for c in concl.components if c.text == ann['boxed'])
        if len(boxed.ant) > 1:
            raise TranslationError("(s5') moving several boxed formulas at once", path)
        if boxed.ant:
            found.append((path, boxed.ant[0]))
    # topmost first
    return sorted(found, key=lambda item: (-len(item[0]), item[0]))


def hyper_to_seq_s5(proof: Proof) -> Proof:
    """Sequent proof of the single component of a cut-free HS5-B endsequent

    Each (s5') instance on a boxed formula []A is resolved by a cut on []A
    at the endsequent: the left branch carries []A as an extra consequent,
    the right branch as an extra antecedent.
    """
    calc = calculus_hs5_b()
    require(calc, proof)
    root = proof.conclusion
    assert isinstance(root, Hypersequent)
    if len(root.components) != 1:
        raise ShapeError("the endsequent must have a single component")
    instances = _instances(calc, proof)
    LOGGER.debug("resolving %d (s5') instances", len(instances))
    goal = root.components[0]

    def build(remaining: List[Tuple[Path, Formula]], extras: Tuple[Extra, ...],
              modes: Dict[Path, str]) -> Proof:
        if not remaining:
            extractor = _Extractor(calc, modes)
            found = extractor.extract(proof, (), goal, extras)
            if found is None:
                where = instances[0][0] if instances else ()
                raise TranslationError("(s5') instance cannot be propagated to the endsequent",
                                       where)
            return found
        (path, f), rest = remaining[0], remaining[1:]
        left = build(rest, extras + (('suc', f, path),), {**modes, path: 'suc'})
        right = build(rest, extras + (('ant', f, path),), {**modes, path: 'ant'})
        return Proof('cut', _with_extras(goal, extras), (left, right), {'cut': f.text})

    return build(instances, (), {})
