"""
Intuitionistic translations: S(IL) proofs to labeled ones, (ref)/(tra)
elimination, and labeled tree proofs to nested ones
"""

import logging
from typing import Dict, Final, List, Optional, Sequence, Tuple

from ..errors import ShapeError, TranslationError
from ..formula import Sup
from ..gentzen import calculus_sil
from ..kernel import Calculus, Path, Proof, Supply, check, match, proof_nodes
from ..labeled import at, calculus_lil, tree_cert, verify_lft, verify_ls
from ..sequents import (GentzenSequent, ILNode, LabeledFormula, LabeledSequent, RelAtom,
                        Structure, multiset_minus, remove_one)
from ..syntax import ROOT_LABEL
from .common import chain, map_sequents, require

LOGGER: Final = logging.getLogger(__name__)

_REACH: Final = {'id': 'r_id', 'bot_l': 'r_bot_l', 'sup_l': 'p_sup_l'}
_NESTED: Final = {'r_id': 'id', 'r_bot_l': 'bot_l', 'p_sup_l': 'sup_l'}


def _le(w: str, u: str) -> RelAtom:
    return RelAtom('<=', w, u)


def _labeled(s: Structure) -> LabeledSequent:
    assert isinstance(s, LabeledSequent)
    return s


def labeled_image(s: GentzenSequent, w: str, rel: Sequence[RelAtom] = ()) -> LabeledSequent:
    """w:G |- w:D"""
    return LabeledSequent(tuple(rel), tuple(at(w, f) for f in s.ant),
                          tuple(at(w, f) for f in s.suc))


# S(IL) to L(IL) with structural rules

def sil_to_lil(proof: Proof, label: str = 'w') -> Proof:
    """Step-wise image of an S(IL) proof of G |- D as a proof of w:G |- w:D

    Axioms and (sup_l) gain a (ref) step on w <= w. Each (sup_r) becomes the
    labeled (sup_r) to a fresh u, one (lft) per context formula, and a
    (wk)/(ls) pair moving the translated premise proof from w to u.
    """
    require(calculus_sil(), proof)
    supply = Supply(avoid={label})
    loop = _le(label, label)

    def walk(node: Proof) -> Proof:
        s = node.conclusion
        assert isinstance(s, GentzenSequent)
        here = labeled_image(s, label)
        if node.rule in ('id', 'bot_l'):
            return Proof('ref', here, (Proof(node.rule, here.replace(rel=(loop,))),))
        subs = tuple(walk(p) for p in node.premises)
        if node.rule == 'sup_l':
            widened = tuple(Proof('wk', _labeled(sub.conclusion).replace(rel=(loop,)), (sub,))
                            for sub in subs)
            return Proof('ref', here, (Proof('sup_l', here.replace(rel=(loop,)), widened),))
        if node.rule == 'sup_r':
            return _sup_r_block(node, subs[0], label, supply)
        return Proof(node.rule, here, subs)

    return walk(proof)


def _sup_r_block(node: Proof, sub: Proof, w: str, supply: Supply) -> Proof:
    s, premise = node.conclusion, node.premises[0].conclusion
    assert isinstance(s, GentzenSequent) and isinstance(premise, GentzenSequent)
    added = multiset_minus(premise.ant, s.ant)
    assert added is not None and len(added) == 1
    principal = Sup(added[0], premise.suc[0])
    context, rest = s.ant, remove_one(s.suc, principal)
    u = supply.fresh('w')

    top = Proof('ls', labeled_image(premise, u), (sub,))
    lifted = LabeledSequent((_le(w, u),),
                            tuple(at(w, g) for g in context) + tuple(at(u, g) for g in context)
                            + (at(u, principal.left),),
                            (at(u, principal.right),))
    top = Proof('wk', lifted, (top,))
    steps: List[Tuple[str, Structure]] = []
    current = lifted
    for g in context:
        current = current.replace(ant=remove_one(current.ant, at(u, g)))
        steps.append(('lft', current))
    top = chain(top, tuple(steps))
    narrowed = labeled_image(GentzenSequent(context, (principal,)), w)
    top = Proof('sup_r', narrowed, (top,))
    if rest:
        top = Proof('wk', labeled_image(s, w), (top,))
    return top


# (ref)/(tra) elimination

def _relabel(s: LabeledSequent, env: Dict[str, str]) -> LabeledSequent:
    def sub(x: str) -> str:
        return env.get(x, x)
    return LabeledSequent(tuple(RelAtom(a.kind, sub(a.src), sub(a.dst)) for a in s.rel),
                          tuple(LabeledFormula(sub(lf.label), lf.formula) for lf in s.ant),
                          tuple(LabeledFormula(sub(lf.label), lf.formula) for lf in s.suc))


def _common(tracked: Tuple[LabeledFormula, ...], side: Tuple[LabeledFormula, ...]
            ) -> Tuple[LabeledFormula, ...]:
    pool = list(side)
    found = []
    for lf in tracked:
        if lf in pool:
            pool.remove(lf)
            found.append(lf)
    return tuple(found)


class _Eliminator:
    """Rewrites a checked L(IL) proof with structural and reachability rules
    into one of L'(IL)

    Passes, in order: fresh labels are made globally unique; (wk) and (ls)
    are pushed into the subtree above them; axioms and (sup_l) switch to
    their reachability forms; (lft) is absorbed; (ref) and (tra) are dropped
    together with the atom they introduced.
    """

    def __init__(self, proof: Proof):
        self.calc: Calculus = calculus_lil('full')
        labels = set()
        for _, node in proof_nodes(proof):
            labels |= node.conclusion.labels()
        self.supply = Supply(avoid=labels)

    def uniquify(self, node: Proof, env: Dict[str, str]) -> Proof:
        concl = _labeled(node.conclusion)
        premises = []
        for p in node.premises:
            own = dict(env)
            for x in sorted(p.conclusion.labels() - concl.labels()):
                own[x] = self.supply.fresh('w')
            premises.append(self.uniquify(p, own))
        return Proof(node.rule, _relabel(concl, env), tuple(premises))

    def realize(self, node: Proof) -> Proof:
        premises = tuple(self.realize(p) for p in node.premises)
        if node.rule == 'wk':
            concl, premise = _labeled(node.conclusion), _labeled(node.premises[0].conclusion)
            rel = multiset_minus(concl.rel, premise.rel) or ()
            ant = multiset_minus(concl.ant, premise.ant) or ()
            suc = multiset_minus(concl.suc, premise.suc) or ()

            def widen(s: Structure) -> Structure:
                t = _labeled(s)
                return LabeledSequent(t.rel + rel, t.ant + ant, t.suc + suc)
            return map_sequents(premises[0], widen)
        if node.rule == 'ls':
            ann = verify_ls(node.conclusion, (node.premises[0].conclusion,))
            assert ann is not None
            old, new = str(ann['from']), str(ann['to'])
            return map_sequents(premises[0], lambda s: _labeled(s).rename(old, new))
        return Proof(node.rule, node.conclusion, premises)

    def ensure(self, node: Proof, path: Path) -> Proof:
        ann, reason = match(self.calc, node)
        if ann is None:
            raise TranslationError(f"({node.rule}) no longer applies: {reason}", path)
        return node

    def lifts(self, node: Proof, path: Path) -> Proof:
        premises = tuple(self.lifts(p, path + (i,)) for i, p in enumerate(node.premises))
        if node.rule != 'lft':
            return Proof(node.rule, node.conclusion, premises)
        concl, premise = _labeled(node.conclusion), _labeled(node.premises[0].conclusion)
        ann = verify_lft(concl, (premise,))
        assert ann is not None
        copy = next(lf for lf in premise.ant if lf.text == ann['copy'])
        original = next(lf for lf in concl.ant if lf.text == ann['principal'])
        try:
            return self.drop(premises[0], copy, path + (0,))
        except TranslationError as e:
            LOGGER.debug("copy %s is decomposed above (%s); absorbing it into %s",
                         copy.text, e, original.text)
        return self.absorb(premises[0], (copy,), original, path + (0,))

    def drop(self, node: Proof, copy: LabeledFormula, path: Path) -> Proof:
        """Remove the lifted copy from every sequent above the (lft)"""
        s = _labeled(node.conclusion)
        if copy not in s.ant:
            raise TranslationError(f"lifted formula {copy.text} is decomposed above", path)
        premises = tuple(self.drop(p, copy, path + (i,)) for i, p in enumerate(node.premises))
        return self.ensure(Proof(node.rule, s.replace(ant=remove_one(s.ant, copy)), premises),
                           path)

    def absorb(self, node: Proof, tracked: Tuple[LabeledFormula, ...],
               original: LabeledFormula, path: Path) -> Proof:
        """Move the copy and what it decomposes into back to the original's
        label, then drop the original, which must stay unused above"""
        s = _labeled(node.conclusion)
        live = _common(tracked, s.ant)
        moved = tuple(LabeledFormula(original.label, lf.formula) for lf in live)
        ant = (multiset_minus(s.ant, live) or ()) + moved
        if original not in ant:
            raise TranslationError(f"lifted formula {original.text} is used above", path)
        ann, _ = match(self.calc, node)
        principal = (ann or {}).get('principal')
        hit = next((lf for lf in live if lf.text == principal), None)
        premises = []
        for i, p in enumerate(node.premises):
            carried = live
            if hit is not None and node.rule in ('and_l', 'or_l'):
                pieces = multiset_minus(_labeled(p.conclusion).ant, remove_one(s.ant, hit)) or ()
                carried = remove_one(live, hit) + pieces
            premises.append(self.absorb(p, carried, original, path + (i,)))
        new = Proof(node.rule, s.replace(ant=remove_one(ant, original)), tuple(premises))
        return self.ensure(new, path)

    def strip(self, node: Proof) -> Proof:
        premises = tuple(self.strip(p) for p in node.premises)
        if node.rule not in ('ref', 'tra'):
            return Proof(node.rule, node.conclusion, premises)
        atoms = multiset_minus(_labeled(node.premises[0].conclusion).rel,
                               _labeled(node.conclusion).rel)
        assert atoms is not None and len(atoms) == 1
        atom = atoms[0]

        def forget(s: Structure) -> Structure:
            t = _labeled(s)
            return t.replace(rel=remove_one(t.rel, atom)) if atom in t.rel else t
        return map_sequents(premises[0], forget)

    def run(self, proof: Proof) -> Proof:
        step = self.realize(self.uniquify(proof, {}))
        step = _rename_rules(step, _REACH)
        step = self.lifts(step, ())
        return self.strip(step)


def _rename_rules(proof: Proof, names: Dict[str, str]) -> Proof:
    return Proof(names.get(proof.rule, proof.rule), proof.conclusion,
                 tuple(_rename_rules(p, names) for p in proof.premises))


def eliminate_ref_tra(proof: Proof) -> Proof:
    """A proof of the same endsequent in L'(IL), free of (ref) and (tra)

    The input may also use the reachability rules, (wk), (ls) and (lft);
    these are realized on the way. (ctr) and (cut) are refused.
    """
    require(calculus_lil('full'), proof)
    for path, node in proof_nodes(proof):
        if node.rule in ('ctr', 'cut'):
            raise TranslationError(f"({node.rule}) cannot be eliminated here", path)
    result = _Eliminator(proof).run(proof)
    report = check(calculus_lil('reach'), result)
    if not report.ok:
        path, reason = report.failures[0]
        raise TranslationError(f"elimination left a step that does not check: {reason}", path)
    LOGGER.debug("eliminated (ref)/(tra): %d nodes in, %d out",
                 sum(1 for _ in proof_nodes(proof)), sum(1 for _ in proof_nodes(result)))
    return result


# Labeled tree sequents to nested sequents

def n_translate(lam: LabeledSequent) -> ILNode:
    """N: one nesting per label, children along the w <= u atoms"""
    cert = tree_cert(lam)
    if not cert.ok:
        raise TranslationError(f"not a labeled tree: {cert.reason}")
    children: Dict[str, List[str]] = {}
    for atom in lam.rel:
        children.setdefault(atom.src, []).append(atom.dst)

    def build(v: str) -> ILNode:
        return ILNode(v,
                      tuple(lf.formula for lf in lam.ant if lf.label == v),
                      tuple(lf.formula for lf in lam.suc if lf.label == v),
                      tuple(build(c) for c in sorted(children.get(v, []))))

    root: Optional[str] = cert.root
    return build(root if root is not None else ROOT_LABEL)


def lil_to_nil(proof: Proof) -> Proof:
    """Node-for-node image of an L'(IL) proof of |- w:A in N(IL)"""
    require(calculus_lil('reach'), proof)
    end = _labeled(proof.conclusion)
    if end.rel or end.ant or len(end.suc) != 1:
        raise ShapeError("L'(IL) endsequent must be a single labeled formula |- w:A")

    def walk(node: Proof) -> Proof:
        return Proof(_NESTED.get(node.rule, node.rule), n_translate(_labeled(node.conclusion)),
                     tuple(walk(p) for p in node.premises))

    return walk(proof)
