"""
Proof trees, rule tables, proof checking and bounded backward search
"""

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import (Any, Callable, Dict, Final, Iterable, Iterator, List, Optional, Sequence,
                    Tuple, Type)

from .errors import CorpusError, ShapeError
from .formula import Atom
from .sequents import GentzenSequent, Structure

LOGGER: Final = logging.getLogger(__name__)

OPEN: Final = 'open'

Path = Tuple[int, ...]
Annotations = Dict[str, Any]
Expansion = Tuple[Tuple[Structure, ...], Annotations]


@dataclass(frozen=True)
class Proof:
    """A derivation node; rule 'open' marks an unexpanded leaf"""
    rule: str
    conclusion: Structure
    premises: Tuple['Proof', ...] = ()
    annotations: Annotations = field(default_factory=dict, compare=False, hash=False)

    @property
    def is_open(self) -> bool:
        return self.rule == OPEN

    def leaves(self) -> Iterator['Proof']:
        if not self.premises:
            yield self
        for p in self.premises:
            yield from p.leaves()


class NoFreshLabel(Exception):
    """Raised by a label supply that has run out of candidates"""


class Supply:
    """Fresh labels for rule instances

    During search labels are generated (w0, w1, ...) avoiding those in use;
    during checking they are drawn from a fixed candidate list, restarting
    from its head once every candidate was handed out, so each rule instance
    of one expansion sees the same labels.
    """

    def __init__(self, avoid: Iterable[str] = (), fixed: Optional[Sequence[str]] = None,
                 searching: bool = True):
        self.avoid = set(avoid)
        self.fixed = list(fixed) if fixed is not None else None
        self.searching = searching
        self.used: List[str] = []
        self._calls = 0

    def fresh(self, prefix: str = 'w') -> str:
        if self.fixed is not None:
            if not self.fixed:
                raise NoFreshLabel()
            label = self.fixed[self._calls % len(self.fixed)]
            self._calls += 1
            if label not in self.used:
                self.used.append(label)
            return label
        label = next(f"{prefix}{i}" for i in itertools.count()
                     if f"{prefix}{i}" not in self.avoid)
        self.avoid.add(label)
        self.used.append(label)
        return label


ExpandFn = Callable[[Structure, Supply], Iterable[Expansion]]
VerifyFn = Callable[[Structure, Tuple[Structure, ...]], Optional[Annotations]]


@dataclass(frozen=True)
class Rule:
    """A rule schema

    expand enumerates the instances whose conclusion is the given sequent.
    Rules whose premises cannot be enumerated from the conclusion (weakening,
    cut, equivalence steps) supply verify instead, which matches a
    conclusion against given premises.
    """
    name: str
    expand: Optional[ExpandFn] = None
    verify: Optional[VerifyFn] = None
    axiom: bool = False
    invertible: bool = False
    searchable: bool = True
    fresh: int = 0


@dataclass
class Calculus:
    id: str
    kind: Type[Structure]
    syntax: str
    logic: str
    rules: List[Rule]
    description: str = ''
    hopeless: Optional[Callable[[Structure], bool]] = None

    def __post_init__(self) -> None:
        names = [r.name for r in self.rules]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate rule ids in {self.id}")
        self._by_name = {r.name: r for r in self.rules}

    def rule(self, name: str) -> Optional[Rule]:
        return self._by_name.get(name)

    @property
    def rule_names(self) -> List[str]:
        return [r.name for r in self.rules]

    def extended(self, id: str, rules: Iterable[Rule], drop: Iterable[str] = ()) -> 'Calculus':
        gone = set(drop)
        kept = [r for r in self.rules if r.name not in gone]
        return Calculus(id, self.kind, self.syntax, self.logic, kept + list(rules),
                        self.description, self.hopeless)

    def instances(self, seq: Structure, supply: Supply) -> Iterator[Tuple[Rule, Expansion]]:
        """Backward instances with conclusion seq; axioms first"""
        ordered = [r for r in self.rules if r.axiom] + [r for r in self.rules if not r.axiom]
        for rule in ordered:
            if rule.expand is None or not rule.searchable:
                continue
            for expansion in rule.expand(seq, supply):
                yield rule, expansion


# Checking

@dataclass
class CheckReport:
    ok: bool
    failures: List[Tuple[Path, str]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'ok': self.ok,
            'failures': [{'path': list(path), 'reason': reason} for path, reason in self.failures],
        }


def _key(items: Iterable[Structure]) -> List[str]:
    return sorted(f"{type(s).__name__}:{s.text}" for s in items)


def match(calc: Calculus, node: Proof) -> Tuple[Optional[Annotations], Optional[str]]:
    """Match one node against its rule; returns (annotations, None) or (None, reason)"""
    rule = calc.rule(node.rule)
    if rule is None:
        return None, "rule not in calculus"
    concl = node.conclusion
    premises = tuple(p.conclusion for p in node.premises)
    if rule.verify is not None:
        ann = rule.verify(concl, premises)
        if ann is None:
            return None, f"not an ({rule.name}) instance"
        return ann, None
    assert rule.expand is not None
    wanted = _key(premises)
    if rule.fresh:
        candidates = sorted(set().union(*(p.labels() for p in premises)) - concl.labels()) \
            if premises else []
        if len(candidates) < rule.fresh:
            return None, "freshness violated"
        orders: Iterable[Sequence[str]] = itertools.permutations(candidates, rule.fresh)
    else:
        orders = [()]
    arities = set()
    for order in orders:
        supply = Supply(avoid=concl.labels(), fixed=order, searching=False)
        try:
            for got, ann in rule.expand(concl, supply):
                arities.add(len(got))
                if len(got) == len(premises) and _key(got) == wanted:
                    result = dict(ann)
                    if supply.used:
                        result.setdefault('fresh', list(supply.used))
                    return result, None
        except NoFreshLabel:
            continue
    if arities and len(premises) not in arities:
        return None, "wrong number of premises"
    return None, f"not an ({rule.name}) instance"


def check(calc: Calculus, proof: Proof) -> CheckReport:
    """Check every node of the proof against the calculus"""
    if not isinstance(proof.conclusion, calc.kind):
        raise ShapeError(f"{calc.id} expects {calc.kind.__name__} sequents, "
                         f"got {type(proof.conclusion).__name__}")
    failures: List[Tuple[Path, str]] = []
    for path, node in proof_nodes(proof):
        if not isinstance(node.conclusion, calc.kind):
            failures.append((path, f"sequent of kind {type(node.conclusion).__name__}"))
            continue
        if node.is_open:
            failures.append((path, "open leaf"))
            continue
        _, reason = match(calc, node)
        if reason is not None:
            failures.append((path, reason))
    LOGGER.debug("checked %s proof: %d nodes, %d failures",
                 calc.id, proof_size(proof), len(failures))
    return CheckReport(not failures, failures)


# Search

@dataclass
class SearchResult:
    status: str
    proof: Optional[Proof] = None
    derivation: Optional[Proof] = None
    explored: int = 0
    depth: int = 0

    @property
    def found(self) -> bool:
        return self.status == 'proof'


class _Budget(Exception):
    pass


class _Searcher:
    """Depth-bounded backward search with a failure memo

    A failure that never touched the depth bound holds at every depth.
    """

    def __init__(self, calc: Calculus, max_nodes: int):
        self.calc = calc
        self.max_nodes = max_nodes
        self.explored = 0
        self.cutoff = False
        self.failed: Dict[Structure, Tuple[int, bool]] = {}

    def prove(self, seq: Structure, depth: int) -> Optional[Proof]:
        memo = self.failed.get(seq)
        if memo is not None and (memo[0] >= depth or not memo[1]):
            self.cutoff = self.cutoff or memo[1]
            return None
        if self.calc.hopeless is not None and self.calc.hopeless(seq):
            self.failed[seq] = (depth, False)
            return None
        if depth < 1:
            self.cutoff = True
            return None
        self.explored += 1
        if self.explored > self.max_nodes:
            raise _Budget()
        outer_cutoff, self.cutoff = self.cutoff, False
        proof = self._axiom(seq) if depth == 1 else self._expand(seq, depth)
        hit = self.cutoff
        self.cutoff = outer_cutoff or hit
        if proof is None:
            self.failed[seq] = (depth, hit)
        return proof

    def _axiom(self, seq: Structure) -> Optional[Proof]:
        """At the last level only zero-premise instances can close seq"""
        supply = Supply(avoid=seq.labels())
        for rule, (premises, ann) in self.calc.instances(seq, supply):
            if rule.axiom and not premises:
                return Proof(rule.name, seq, (), dict(ann))
            if not any(p == seq for p in premises):
                self.cutoff = True
                return None
        return None

    def _expand(self, seq: Structure, depth: int) -> Optional[Proof]:
        supply = Supply(avoid=seq.labels())
        for rule, (premises, ann) in self.calc.instances(seq, supply):
            if rule.axiom and not premises:
                return Proof(rule.name, seq, (), dict(ann))
            if any(p == seq for p in premises):
                continue
            subproofs = []
            for premise in premises:
                sub = self.prove(premise, depth - 1)
                if sub is None:
                    break
                subproofs.append(sub)
            else:
                return Proof(rule.name, seq, tuple(subproofs), dict(ann))
            if rule.invertible:
                return None
        return None


def search(calc: Calculus, goal: Structure, depth: int, max_nodes: int = 200000) -> SearchResult:
    """Iterative deepening search for a proof of height at most depth"""
    if not isinstance(goal, calc.kind):
        raise ShapeError(f"{calc.id} expects {calc.kind.__name__} sequents")
    searcher = _Searcher(calc, max_nodes)
    for d in range(1, depth + 1):
        searcher.cutoff = False
        try:
            proof = searcher.prove(goal, d)
        except _Budget:
            LOGGER.debug("search in %s stopped at node budget %d", calc.id, max_nodes)
            return SearchResult('exhausted', explored=searcher.explored, depth=d)
        LOGGER.debug("search %s depth %d: explored %d", calc.id, d, searcher.explored)
        if proof is not None:
            return SearchResult('proof', proof=proof, explored=searcher.explored, depth=d)
        if not searcher.cutoff:
            return SearchResult('open', derivation=greedy_derivation(calc, goal, depth),
                                explored=searcher.explored, depth=d)
    return SearchResult('exhausted', derivation=greedy_derivation(calc, goal, depth),
                        explored=searcher.explored, depth=depth)


def greedy_derivation(calc: Calculus, goal: Structure, depth: int) -> Proof:
    """Apply the first applicable instance everywhere, leaving open leaves"""
    if depth <= 0:
        return Proof(OPEN, goal)
    supply = Supply(avoid=goal.labels())
    for rule, (premises, ann) in calc.instances(goal, supply):
        if any(p == goal for p in premises):
            continue
        if rule.axiom and not premises:
            return Proof(rule.name, goal, (), dict(ann))
        return Proof(rule.name, goal,
                     tuple(greedy_derivation(calc, p, depth - 1) for p in premises), dict(ann))
    return Proof(OPEN, goal)


def random_derivation(calc: Calculus, goal: Structure, steps: int, rng: random.Random) -> Proof:
    """A random backward derivation of at most `steps` rule applications"""
    tree = Proof(OPEN, goal)
    for _ in range(steps):
        leaves = [path for path, node in proof_nodes(tree) if node.is_open]
        if not leaves:
            break
        path = rng.choice(leaves)
        leaf = node_at(tree, path).conclusion
        supply = Supply(avoid=leaf.labels())
        options = [(rule, exp) for rule, exp in itertools.islice(calc.instances(leaf, supply), 64)
                   if not any(p == leaf for p in exp[0])]
        if not options:
            continue
        rule, (premises, ann) = rng.choice(options)
        expanded = Proof(rule.name, leaf, tuple(Proof(OPEN, p) for p in premises), dict(ann))
        tree = replace_at(tree, path, expanded)
    return tree


# Classical counter-models

def countermodel_cpc(derivation: Proof) -> Dict[str, bool]:
    """Read a falsifying valuation off an open atomic leaf"""
    from .formula import atoms as formula_atoms
    names: set = set()
    root = derivation.conclusion
    if isinstance(root, GentzenSequent):
        for f in root.ant + root.suc:
            names |= formula_atoms(f)
    for leaf in derivation.leaves():
        s = leaf.conclusion
        if not leaf.is_open or not isinstance(s, GentzenSequent):
            continue
        if not all(isinstance(f, Atom) for f in s.ant + s.suc):
            continue
        if set(s.ant) & set(s.suc):
            continue
        true = {f.name for f in s.ant if isinstance(f, Atom)}
        names |= true | {f.name for f in s.suc if isinstance(f, Atom)}
        return {name: name in true for name in sorted(names)}
    raise ShapeError("derivation has no open atomic leaf with disjoint sides")


# Tree helpers

def proof_nodes(proof: Proof, path: Path = ()) -> Iterator[Tuple[Path, Proof]]:
    yield path, proof
    for i, p in enumerate(proof.premises):
        yield from proof_nodes(p, path + (i,))


def node_at(proof: Proof, path: Path) -> Proof:
    for i in path:
        proof = proof.premises[i]
    return proof


def replace_at(proof: Proof, path: Path, new: Proof) -> Proof:
    if not path:
        return new
    head, rest = path[0], path[1:]
    premises = list(proof.premises)
    premises[head] = replace_at(premises[head], rest, new)
    return Proof(proof.rule, proof.conclusion, tuple(premises), proof.annotations)


def proof_height(proof: Proof) -> int:
    """Number of sequents on a longest branch; an axiom has height 1"""
    return 1 + max((proof_height(p) for p in proof.premises), default=0)


def proof_size(proof: Proof) -> int:
    return 1 + sum(proof_size(p) for p in proof.premises)


def rule_multiset(proof: Proof) -> Counter:
    return Counter(node.rule for _, node in proof_nodes(proof))


def skeleton(proof: Proof) -> Tuple[Any, ...]:
    """The rule tree without sequents; premises in canonical order"""
    return (proof.rule, tuple(sorted((skeleton(p) for p in proof.premises), key=repr)))


def count_rule(proof: Proof, name: str) -> int:
    return rule_multiset(proof)[name]


# JSON

def encode_proof(proof: Proof) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        'rule': proof.rule,
        'sequent': proof.conclusion.text,
        'premises': [encode_proof(p) for p in proof.premises],
    }
    ann = {k: v for k, v in proof.annotations.items() if _jsonable(v)}
    if ann:
        data['annotations'] = ann
    return data


def _jsonable(value: Any) -> bool:
    if isinstance(value, (str, int, bool)) or value is None:
        return True
    if isinstance(value, (list, tuple)):
        return all(_jsonable(v) for v in value)
    return False


def decode_proof(data: Any, calc: Calculus) -> Proof:
    from .syntax import parse_sequent
    if not isinstance(data, dict) or 'rule' not in data or 'sequent' not in data:
        raise CorpusError(f"malformed proof node: {str(data)[:80]}")
    seq = parse_sequent(data['sequent'], calc.syntax, calc.logic)
    premises = tuple(decode_proof(p, calc) for p in data.get('premises', []))
    return Proof(data['rule'], seq, premises, dict(data.get('annotations', {})))
