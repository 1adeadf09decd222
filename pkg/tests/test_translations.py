"""
Tests for the translations between calculi
"""

import os

import pytest

from pcw.bunched import calculus_lbi
from pcw.conditional import calculus_glv, calculus_igv
from pcw.corpus import read_document
from pcw.display import calculus_dkt
from pcw.errors import CheckError, ReconstructionError, TranslationError
from pcw.formula import And
from pcw.gbi import calculus_gbi
from pcw.gentzen import calculus_s4_5_cut, calculus_sil
from pcw.hypersequent import calculus_hs5_a, calculus_hs5_b
from pcw.kernel import (OPEN, Proof, check, count_rule, decode_proof, node_at, proof_nodes,
                        search)
from pcw.labeled import calculus_lil, calculus_lkt, calculus_ls5
from pcw.nested import calculus_nil
from pcw.sequents import BLeaf, BNode, BUnit, GentzenSequent
from pcw.syntax import parse, parse_sequent
from pcw.xlate import (bunch_reconstruct, bunch_to_labels, d_translate, eliminate_ref_tra,
                       h_labeled_to_hyper, hyper_to_seq_s5, igv_to_glv, lbi_to_gbi, lil_to_nil,
                       lkt_to_dkt, n_translate, sil_to_lil)
from pcw.xlate.bi import gbi_image

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'proofs')


def _golden(name, calc):
    return decode_proof(read_document(os.path.join(CORPUS, f"{name}.json"))['proof'], calc)


def test_labeled_s5_to_hypersequents():
    proof = h_labeled_to_hyper(_golden('ls5-axiom-5', calculus_ls5()))
    assert check(calculus_hs5_a(), proof).ok
    assert proof.conclusion.text == '|- ~[]p -> []~[]p'


def test_hypersequents_to_sequents_with_cut():
    proof = hyper_to_seq_s5(_golden('hs5b-axiom-5', calculus_hs5_b()))
    assert check(calculus_s4_5_cut(), proof).ok
    # one (s5') instance gives one cut at the root
    assert proof.rule == 'cut'
    assert count_rule(proof, 'cut') == 1
    assert count_rule(proof, 'box_5') == 1


def test_labeled_tense_to_display():
    proof = lkt_to_dkt(_golden('lkt-converse-past', calculus_lkt()))
    assert check(calculus_dkt(), proof).ok
    assert proof == _golden('dkt-converse-past', calculus_dkt())


def test_intuitionistic_sequents_to_labeled():
    proof = sil_to_lil(_golden('sil-imp-refl', calculus_sil()))
    assert check(calculus_lil('struct'), proof).ok
    assert proof.conclusion == _golden('lil-imp-refl', calculus_lil()).conclusion
    assert count_rule(proof, 'ls') == 2


def test_ref_tra_elimination():
    source = _golden('lil-imp-refl', calculus_lil())
    assert count_rule(source, 'ref') == 1
    proof = eliminate_ref_tra(source)
    assert check(calculus_lil('reach'), proof).ok
    assert count_rule(proof, 'ref') == 0
    assert count_rule(proof, 'p_sup_l') == 1
    assert proof.conclusion == source.conclusion


def test_labeled_trees_to_nested():
    proof = lil_to_nil(_golden('lil-reach-imp-refl', calculus_lil('reach')))
    assert check(calculus_nil(), proof).ok
    assert proof == _golden('nil-imp-refl', calculus_nil())


def test_conditional_blocks_to_labeled():
    proof = igv_to_glv(_golden('igv-pref-refl', calculus_igv()))
    assert check(calculus_glv('struct'), proof).ok
    assert proof.conclusion.text == '|- x:p =< p'


def test_bunched_to_labeled():
    proof = lbi_to_gbi(_golden('lbi-star-comm', calculus_lbi()))
    assert check(calculus_gbi(), proof).ok
    assert proof.rule == 'wand_r'


def test_inputs_must_check():
    end = parse_sequent('|- w:[]p -> p', 'labeled', 'modal')
    with pytest.raises(CheckError):
        h_labeled_to_hyper(Proof(OPEN, end))
    # (ref) is not a rule of the reachability variant
    with pytest.raises(CheckError):
        lil_to_nil(_golden('lil-imp-refl', calculus_lil()))


def test_cut_has_no_gbi_image():
    seq = parse_sequent('p |- p', 'bunched')
    with pytest.raises(TranslationError) as excinfo:
        lbi_to_gbi(Proof('cut', seq, (Proof(OPEN, seq), Proof(OPEN, seq))))
    assert excinfo.value.path == ()


def test_sequent_maps():
    tree = parse_sequent('w <= u, w <= v ; w:p |- u:q, v:r', 'labeled', 'int')
    assert n_translate(tree).text == 'p |- [ |- q ]_u, [ |- r ]_v'

    poly = parse_sequent('w R u ; |- w:p, u:q', 'labeled', 'tense')
    assert d_translate(poly, 'w').text == 'p, o[q]'
    assert d_translate(poly, 'u').text == 'q, b[p]'

    cycle = parse_sequent('w <= u, u <= w ; |- w:p', 'labeled', 'int')
    with pytest.raises(TranslationError):
        n_translate(cycle)


def test_bunches_on_labels():
    s = parse_sequent('p, (q ; r) |- p * q', 'bunched')
    constraints, ant = bunch_to_labels(s.bunch, 'd')
    assert len(constraints) == 2
    assert sorted(lf.text for lf in ant) == ['d0:p', 'd10:q', 'd11:r']
    assert bunch_reconstruct(gbi_image(s), 'd').text == s.bunch.text


def test_reconstruction_failures():
    ambiguous = parse_sequent('l0 <= l, l1 <= l ; l0:p, l1:q |- l:p', 'gbi')
    with pytest.raises(ReconstructionError) as excinfo:
        bunch_reconstruct(ambiguous, 'l')
    assert 'ambiguous-root' in excinfo.value.kinds

    cyclic = parse_sequent('m(l, l) <= l ; |- l:p', 'gbi')
    with pytest.raises(ReconstructionError) as excinfo:
        bunch_reconstruct(cyclic, 'l')
    assert 'cycle' in excinfo.value.kinds

    with pytest.raises(ReconstructionError):
        bunch_reconstruct(cyclic, 'z')


def test_wand_contraction_to_gbi():
    source = _golden('lbi-wand-contraction', calculus_lbi())
    assert count_rule(source, 'cr') == 1
    proof = lbi_to_gbi(source)
    assert check(calculus_gbi(), proof).ok
    assert proof.conclusion == gbi_image(source.conclusion)
    assert check(calculus_gbi(), _golden('gbi-wand-contraction', calculus_gbi())).ok


def test_connectedness_blocks_to_labeled():
    proof = igv_to_glv(_golden('igv-connected', calculus_igv()))
    assert check(calculus_glv('struct'), proof).ok
    assert proof == _golden('glv-connected', calculus_glv('struct'))
    assert node_at(proof, (0, 0, 0, 0)).rule == 'mon'
    assert sorted(leaf.conclusion.text for leaf in proof.leaves()) == [
        'y0:q |- y0:p, y0:q', 'y1:p |- y1:p, y1:q']


def test_reconstruct_conjunction_premises():
    a, b, p = parse('p -* (q => r)', 'bi'), parse('p -* q', 'bi'), parse('p', 'bi')
    s = parse_sequent('m(l3, l4) <= l1, m(l0, l1) <= l2, m <= l0 ; '
                      'l3:(p -* (q => r)) /\\ (p -* q), l4:p |- l2:r', 'gbi')
    expected = BNode(',', BUnit('m'), BNode(',', BLeaf(And(a, b)), BLeaf(p)))
    assert bunch_reconstruct(s, 'l2') == expected

    # the additive split puts both conjuncts under l3
    split = parse_sequent('m <= l0, m(l0, l1) <= l2, m(l3, l4) <= l1, a(l5, l6) <= l3 ; '
                          'l4:p, l5:p -* (q => r), l6:p -* q |- l2:r', 'gbi')
    expected = BNode(',', BUnit('m'), BNode(',', BNode(';', BLeaf(a), BLeaf(b)), BLeaf(p)))
    assert bunch_reconstruct(split, 'l2') == expected


def test_reconstruction_of_a_shared_root():
    proof = _golden('gbi-wand-contraction', calculus_gbi())
    premise = next(node.premises[0].conclusion for _, node in proof_nodes(proof)
                   if node.rule == 'i_a')
    with pytest.raises(ReconstructionError) as excinfo:
        bunch_reconstruct(premise, 'l2')
    reasons = excinfo.value.reasons
    assert reasons[0] == ('ambiguous-root', 'l2: l1 <= l2, m(l0, l1) <= l2, m(m, l1) <= l2')
    assert ('cycle', 'a(l1, l1) <= l1') in reasons


IL_SCHEMES = ['A -> A', 'A -> B -> A', 'A /\\ B -> B /\\ A', 'A \\/ B -> B \\/ A',
              'A -> (A -> B) -> B', 'A /\\ (A -> B) -> B', 'A -> A \\/ B', 'A /\\ B -> A']

IL_INSTANCES = [('p', 'q'), ('q', 'p'), ('p /\\ q', 'r'), ('p -> q', 'r'), ('p \\/ q', 'q'),
                ('r', 'p -> q'), ('p', 'q \\/ r'), ('p /\\ q', 'q \\/ r')]


def _instance(scheme, a, b):
    return parse(scheme.replace('A', f"({a})").replace('B', f"({b})"), 'int')


@pytest.mark.slow
@pytest.mark.parametrize('scheme', IL_SCHEMES)
def test_ref_tra_elimination_on_translated_proofs(scheme):
    for a, b in IL_INSTANCES:
        found = search(calculus_sil(), GentzenSequent((), (_instance(scheme, a, b),)), depth=10)
        assert found.found
        source = sil_to_lil(found.proof)
        proof = eliminate_ref_tra(source)
        assert check(calculus_lil('reach'), proof).ok
        assert proof.conclusion == source.conclusion
        assert count_rule(proof, 'ref') == count_rule(proof, 'tra') == 0
        assert count_rule(proof, 'ls') == count_rule(proof, 'lft') == count_rule(proof, 'wk') == 0


def _lil(text):
    return parse_sequent(text, 'labeled', 'int')


def test_transitivity_below_implication_left():
    rel = 'w <= u, u <= v, w <= v'
    proof = Proof('tra', _lil('w <= u, u <= v ; w:p -> q, v:p |- v:q'), (
        Proof('sup_l', _lil(f"{rel} ; w:p -> q, v:p |- v:q"), (
            Proof('ref', _lil(f"{rel} ; w:p -> q, v:p, v:q |- v:q"), (
                Proof('id', _lil(f"{rel}, v <= v ; w:p -> q, v:p, v:q |- v:q")),)),
            Proof('ref', _lil(f"{rel} ; w:p -> q, v:p |- v:q, v:p"), (
                Proof('id', _lil(f"{rel}, v <= v ; w:p -> q, v:p |- v:q, v:p")),)),
        )),
    ))
    assert check(calculus_lil(), proof).ok
    result = eliminate_ref_tra(proof)
    assert check(calculus_lil('reach'), result).ok
    assert result.rule == 'p_sup_l'
    assert result.conclusion == proof.conclusion
    # the composed atom w <= v is gone everywhere above
    assert all('w <= v' not in node.conclusion.text for _, node in proof_nodes(result))


def test_contraction_and_cut_are_refused():
    loop = _lil('w <= w ; w:p |- w:p')
    contracted = Proof('ctr', loop, (Proof('id', _lil('w <= w ; w:p, w:p |- w:p')),))
    cut = Proof('cut', loop, (Proof('id', _lil('w <= w ; w:p |- w:p, w:p')),
                              Proof('id', _lil('w <= w ; w:p, w:p |- w:p'))))
    for proof in (contracted, cut):
        assert check(calculus_lil('full'), proof).ok
        with pytest.raises(TranslationError):
            eliminate_ref_tra(proof)
