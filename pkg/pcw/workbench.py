"""
Calculus registry, translation routes and the application class behind the CLI
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Final, List, Optional, Sequence, Tuple

import networkx as nx

from .bunched import LBI_VARIANTS, calculus_lbi
from .cache import VerdictCache
from .conditional import GLV_VARIANTS, calculus_glv, calculus_igv
from .config import Config
from .corpus import Entry, ProofStore, read_document
from .display import calculus_dkt
from .errors import ModelError, ParseError, PcwError, RuleError
from .formatter import OutputFormatter
from .formula import Formula, to_nnf
from .gbi import calculus_gbi, theorem_sequent
from .gentzen import calculus_s4_5_cut, calculus_scp, calculus_sil
from .hypersequent import calculus_hs5_a, calculus_hs5_b
from .kernel import (Calculus, CheckReport, Proof, SearchResult, check, countermodel_cpc,
                     decode_proof, encode_proof, search)
from .labeled import GEOMETRIC, LIL_VARIANTS, calculus_lil, calculus_lkt, calculus_ls5
from .models import Verdict, brute_force_valid
from .nested import calculus_nil, calculus_nkt
from .sequents import (BlockSequent, BunchedSequent, BUnit, GentzenSequent, GlvSequent,
                       Hypersequent, ILNode, KtNode, LabeledFormula, LabeledSequent, Structure)
from .syntax import parse, parse_sequent
from .xlate import (eliminate_ref_tra, h_labeled_to_hyper, hyper_to_seq_s5, igv_to_glv,
                    lbi_to_gbi, lil_to_nil, lkt_to_dkt, sil_to_lil)

LOGGER: Final = logging.getLogger(__name__)

CALCULUS_IDS: Final = ('scp', 'sil', 's45cut', 'hs5a', 'hs5b', 'ls5', 'lkt', 'lil', 'glv',
                       'igv', 'nkt', 'nil', 'dkt', 'lbi', 'gbi')

VARIANTS: Final[Dict[str, Sequence[str]]] = {
    'scp': ('core', 'struct'),
    'sil': ('core', 'struct'),
    'hs5a': ('core', 'struct'),
    'lil': LIL_VARIANTS,
    'glv': GLV_VARIANTS,
    'lbi': LBI_VARIANTS,
}

# one-sided tense calculi take formulas in negation normal form
_ONE_SIDED: Final = ('lkt', 'nkt', 'dkt')


def split_id(calc_id: str) -> Tuple[str, Optional[str]]:
    """'lil+reach' -> ('lil', 'reach')"""
    base, _, rest = calc_id.partition('+')
    return base, rest or None


def get_calculus(calc_id: str, variant: Optional[str] = None, cr_copies: int = 2) -> Calculus:
    """Look a calculus up by id; a variant may also be given inline as id+variant"""
    base, inline = split_id(calc_id)
    if variant and inline and variant != inline:
        raise RuleError(f"conflicting variants '{inline}' and '{variant}' for {base}")
    variant = variant or inline
    if base not in CALCULUS_IDS:
        raise RuleError(f"unknown calculus '{base}' (expected one of {', '.join(CALCULUS_IDS)})")
    if base == 'lkt':
        extensions = [e for e in (variant or '').replace('+', ',').split(',') if e]
        return calculus_lkt(extensions)
    allowed = VARIANTS.get(base, ('core',))
    if variant and variant not in allowed:
        raise RuleError(f"unknown variant '{variant}' for {base} "
                        f"(expected one of {', '.join(allowed)})")
    variant = variant or 'core'
    if base == 'scp':
        return calculus_scp(variant)
    if base == 'sil':
        return calculus_sil(variant)
    if base == 'hs5a':
        return calculus_hs5_a(variant)
    if base == 'lil':
        return calculus_lil(variant)
    if base == 'glv':
        return calculus_glv(variant)
    if base == 'lbi':
        return calculus_lbi(variant, cr_copies)
    plain: Dict[str, Callable[[], Calculus]] = {
        's45cut': calculus_s4_5_cut, 'hs5b': calculus_hs5_b, 'ls5': calculus_ls5,
        'igv': calculus_igv, 'nkt': calculus_nkt, 'nil': calculus_nil, 'dkt': calculus_dkt,
        'gbi': calculus_gbi,
    }
    return plain[base]()


def variant_names(base: str) -> List[str]:
    if base == 'lkt':
        return sorted(GEOMETRIC)
    return list(VARIANTS.get(base, ('core',)))


# Translations

@dataclass(frozen=True)
class Translation:
    """One registered translation; its output is checked in check_in"""
    source: str
    target: str
    fn: Callable[[Proof], Proof]
    check_in: str


TRANSLATIONS: Final = (
    Translation('ls5', 'hs5a', h_labeled_to_hyper, 'hs5a'),
    Translation('hs5b', 's45cut', hyper_to_seq_s5, 's45cut'),
    Translation('lkt', 'dkt', lkt_to_dkt, 'dkt'),
    Translation('sil', 'lil', sil_to_lil, 'lil+struct'),
    Translation('lil', 'lil+reach', eliminate_ref_tra, 'lil+reach'),
    Translation('lil+reach', 'nil', lil_to_nil, 'nil'),
    Translation('igv', 'glv', igv_to_glv, 'glv+struct'),
    Translation('lbi', 'gbi', lbi_to_gbi, 'gbi'),
)


def translation_graph() -> nx.DiGraph:
    graph = nx.DiGraph()
    for t in TRANSLATIONS:
        graph.add_edge(t.source, t.target, translation=t)
    return graph


def route(source: str, target: str) -> List[Translation]:
    """Shortest chain of registered translations from source to target"""
    graph = translation_graph()
    try:
        names = nx.shortest_path(graph, source, target)
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        raise RuleError(f"no translation from {source} to {target}") from None
    if len(names) < 2:
        raise RuleError(f"source and target are both {source}")
    return [graph.edges[a, b]['translation'] for a, b in zip(names, names[1:])]


# Goals

def theorem_goal(calc: Calculus, f: Formula) -> Structure:
    """The sequent whose provability is theoremhood of f in calc"""
    if calc.syntax == 'gentzen':
        return GentzenSequent((), (f,))
    if calc.syntax == 'hyper':
        return Hypersequent((GentzenSequent((), (f,)),))
    if calc.syntax == 'labeled':
        return LabeledSequent((), (), (LabeledFormula('w', f),))
    if calc.syntax == 'ktnest':
        return KtNode((f,))
    if calc.syntax == 'ilnest':
        return ILNode('r', (), (f,))
    if calc.syntax == 'glv':
        return GlvSequent((), (LabeledFormula('x', f),))
    if calc.syntax == 'blockseq':
        return BlockSequent((), (f,))
    if calc.syntax == 'bunched':
        return BunchedSequent(BUnit('m'), f)
    if calc.syntax == 'gbi':
        return theorem_sequent(f)
    raise RuleError(f"no theorem goal for {calc.id}")


def read_goal(calc: Calculus, text: str) -> Structure:
    """A sequent in calc's syntax, or a formula standing for its theorem goal"""
    base, _ = split_id(calc.id)
    if '|-' in text:
        return parse_sequent(text, calc.syntax, calc.logic)
    if base in _ONE_SIDED:
        try:
            f = to_nnf(parse(text, 'kt'))
        except ParseError:
            # several formulas or nestings: a nested sequent proper
            if calc.syntax != 'ktnest':
                raise
            return parse_sequent(text, calc.syntax, calc.logic)
        return theorem_goal(calc, f)
    return theorem_goal(calc, parse(text, calc.logic))


class Workbench:
    """Main pcw application class"""

    def __init__(self, config: Config):
        self.config = config
        self.formatter = OutputFormatter(config)
        self.cache: Optional[VerdictCache] = None
        if config.cache.enabled:
            config.ensure_directories()
            self.cache = VerdictCache(config.cache.cache_file)

    def calculus(self, calc_id: str, variant: Optional[str] = None) -> Calculus:
        return get_calculus(calc_id, variant, self.config.search.cr_copies)

    def store(self) -> ProofStore:
        return ProofStore(self.config.corpus.corpus_dir, self.calculus)

    # Parsing

    def parse(self, text: str, logic: Optional[str] = None,
              kind: Optional[str] = None) -> Dict[str, Any]:
        from .formula import to_json
        if kind:
            s = parse_sequent(text, kind, logic)
            return {'kind': kind, 'text': s.text}
        f = parse(text, logic or 'cpc')
        return {'logic': logic or 'cpc', 'text': f.text, 'formula': to_json(f)}

    # Checking

    def load_proof(self, path: str, calc_id: Optional[str] = None,
                   variant: Optional[str] = None) -> Tuple[Calculus, Proof]:
        """Decode a proof document; explicit ids override the document's"""
        data = read_document(path)
        calc_id = calc_id or data.get('calculus')
        if not calc_id:
            raise RuleError(f"{path} names no calculus; pass --calculus")
        calc = self.calculus(calc_id, variant or data.get('variant'))
        return calc, decode_proof(data['proof'], calc)

    def check(self, path: str, calc_id: Optional[str] = None,
              variant: Optional[str] = None) -> Tuple[Calculus, CheckReport]:
        calc, proof = self.load_proof(path, calc_id, variant)
        report = check(calc, proof)
        self.formatter.output_verbose(f"checked {path} in {calc.id}: "
                                      f"{len(report.failures)} failure(s)")
        return calc, report

    # Search

    def prove(self, calc_id: str, text: str, variant: Optional[str] = None,
              depth: Optional[int] = None) -> Tuple[Calculus, SearchResult]:
        calc = self.calculus(calc_id, variant)
        goal = read_goal(calc, text)
        depth = depth or self.config.search.depth
        if self.cache is not None:
            hit = self.cache.get(calc.id, variant or 'core', goal.text, depth)
            if hit is not None:
                return calc, self._cached_result(calc, hit, depth)
        result = search(calc, goal, depth, self.config.search.max_nodes)
        if self.cache is not None:
            self.cache.put(calc.id, variant or 'core', goal.text, depth, result.status,
                           result.explored, self._result_payload(result))
        return calc, result

    @staticmethod
    def _result_payload(result: SearchResult) -> Dict[str, Any]:
        payload: Dict[str, Any] = {'depth': result.depth}
        if result.proof is not None:
            payload['proof'] = encode_proof(result.proof)
        elif result.derivation is not None:
            payload['derivation'] = encode_proof(result.derivation)
        return payload

    @staticmethod
    def _cached_result(calc: Calculus, hit: Dict[str, Any], depth: int) -> SearchResult:
        payload = hit.get('result') or {}
        proof = decode_proof(payload['proof'], calc) if 'proof' in payload else None
        derivation = (decode_proof(payload['derivation'], calc)
                      if 'derivation' in payload else None)
        return SearchResult(hit['status'], proof, derivation, hit.get('explored') or 0,
                            payload.get('depth', depth))

    # Translation

    def translate(self, proof: Proof, source: str,
                  target: str) -> Tuple[List[str], Proof, CheckReport]:
        """Run the translation chain; every step's output must check"""
        steps = route(source, target)
        names = [source]
        report = CheckReport(True)
        for step in steps:
            self.formatter.output_verbose(f"translating {step.source} -> {step.target}")
            proof = step.fn(proof)
            report = check(self.calculus(step.check_in), proof)
            names.append(step.target)
            if not report.ok:
                LOGGER.debug("%s output fails in %s", step.target, step.check_in)
                break
        return names, proof, report

    # Oracles

    def valid(self, logic: str, text: str, bound: Optional[int] = None,
              semantics: Optional[str] = None, frame: Sequence[str] = ()) -> Verdict:
        f = parse(text, logic)
        bound = bound or self.config.oracle.bound
        return brute_force_valid(f, logic, bound, self.config.oracle.max_bound, semantics,
                                 frame)

    def countermodel(self, text: str, logic: Optional[str] = None,
                     calc_id: Optional[str] = None, bound: Optional[int] = None,
                     semantics: Optional[str] = None,
                     frame: Sequence[str] = ()) -> Tuple[str, Any]:
        """('valuation', dict) from classical search, or ('verdict', Verdict)"""
        if calc_id:
            calc = self.calculus(calc_id)
            if calc.logic != 'cpc':
                raise ModelError(f"counter-models from derivations need S(CP), not {calc.id}")
            _, result = self.prove(calc_id, text)
            if result.found or result.derivation is None:
                return 'verdict', Verdict(result.found, 'cpc', 1)
            return 'valuation', countermodel_cpc(result.derivation)
        return 'verdict', self.valid(logic or 'cpc', text, bound, semantics, frame)

    # Corpus

    def check_corpus(self, translate: bool = False) -> List[Dict[str, Any]]:
        """Check every golden proof; optionally push each through its translations"""
        rows: List[Dict[str, Any]] = []
        graph = translation_graph()
        for entry in self.store().entries():
            report = check(self.calculus(entry.calc_id), entry.proof)
            rows.append({'name': entry.name, 'calculus': entry.calc_id, 'ok': report.ok,
                         'failures': len(report.failures)})
            if not translate or not report.ok:
                continue
            source = self._translation_source(graph, entry)
            if source is None:
                continue
            for _, target in graph.out_edges(source):
                rows.append(self._translate_row(entry, source, target))
        return rows

    @staticmethod
    def _translation_source(graph: nx.DiGraph, entry: Entry) -> Optional[str]:
        if entry.calc_id in graph:
            return entry.calc_id
        # struct-decorated L(IL) proofs enter the elimination
        if entry.calc_id in ('lil+struct', 'lil+full'):
            return 'lil'
        return None

    def _translate_row(self, entry: Entry, source: str, target: str) -> Dict[str, Any]:
        name = f"{entry.name} -> {target}"
        try:
            _, _, report = self.translate(entry.proof, source, target)
        except PcwError as e:
            return {'name': name, 'calculus': target, 'ok': False, 'error': str(e)}
        return {'name': name, 'calculus': target, 'ok': report.ok,
                'failures': len(report.failures)}
