"""
Finite-model oracles: Kripke, simplified S5, sphere and resource models
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import (Any, Callable, Dict, Final, FrozenSet, Iterable, Iterator, List, NoReturn,
                    Optional, Sequence, Tuple, Union)

from .errors import ModelError
from .formula import (And, Atom, BBox, BDia, Bot, Box, Dia, Formula, Imp, MTop, Not, Or, Pref,
                      Star, Sup, Top, Wand, atoms, check_logic)

LOGGER: Final = logging.getLogger(__name__)

World = int
Pair = Tuple[World, World]
Valuation = Dict[str, FrozenSet[World]]


def _valuation_dict(valuation: Valuation) -> Dict[str, List[World]]:
    return {p: sorted(ws) for p, ws in sorted(valuation.items())}


@dataclass(frozen=True)
class KripkeModel:
    """Relational model; intuitionistic models read rel as a persistent preorder"""
    worlds: Tuple[World, ...]
    rel: FrozenSet[Pair]
    valuation: Valuation = field(default_factory=dict)
    intuitionistic: bool = False

    def validate(self) -> 'KripkeModel':
        if not self.worlds:
            raise ModelError("a model has at least one world")
        ws = set(self.worlds)
        if any(a not in ws or b not in ws for a, b in self.rel):
            raise ModelError("relation mentions unknown worlds")
        if any(not set(v) <= ws for v in self.valuation.values()):
            raise ModelError("valuation mentions unknown worlds")
        if self.intuitionistic:
            if not (is_reflexive(self.worlds, self.rel) and is_transitive(self.worlds, self.rel)):
                raise ModelError("intuitionistic models need a preorder")
            for p, true in self.valuation.items():
                if any(w in true and u not in true for w, u in self.rel):
                    raise ModelError(f"valuation of {p} is not persistent")
        return self

    def successors(self, w: World) -> List[World]:
        return [u for u in self.worlds if (w, u) in self.rel]

    def predecessors(self, w: World) -> List[World]:
        return [u for u in self.worlds if (u, w) in self.rel]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'intuitionistic' if self.intuitionistic else 'kripke',
            'worlds': list(self.worlds),
            'edges': {str(w): self.successors(w) for w in self.worlds},
            'valuation': _valuation_dict(self.valuation),
        }


@dataclass(frozen=True)
class SimpleS5Model:
    """Universal-access model: a set of worlds and a valuation"""
    worlds: Tuple[World, ...]
    valuation: Valuation = field(default_factory=dict)

    def validate(self) -> 'SimpleS5Model':
        if not self.worlds:
            raise ModelError("a model has at least one world")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': 's5', 'worlds': list(self.worlds),
                'valuation': _valuation_dict(self.valuation)}


Sphere = FrozenSet[World]


@dataclass(frozen=True)
class SphereModel:
    worlds: Tuple[World, ...]
    spheres: Dict[World, Tuple[Sphere, ...]]
    valuation: Valuation = field(default_factory=dict)

    def validate(self) -> 'SphereModel':
        if not self.worlds:
            raise ModelError("a model has at least one world")
        for w, system in self.spheres.items():
            for alpha in system:
                if not alpha:
                    raise ModelError(f"empty sphere at world {w}")
                for beta in system:
                    if not (alpha <= beta or beta <= alpha):
                        raise ModelError(f"spheres at world {w} are not nested")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'spheres', 'worlds': list(self.worlds),
            'spheres': {str(w): [sorted(a) for a in self.spheres.get(w, ())]
                        for w in self.worlds},
            'valuation': _valuation_dict(self.valuation),
        }


@dataclass(frozen=True)
class ResourceModel:
    """Kripke resource model over a double monoid

    mult and add are the composition tables; order is the preorder as a set
    of pairs; interp maps atoms to upward-closed sets containing absurd.
    """
    carrier: Tuple[World, ...]
    mult: Dict[Pair, World]
    add: Dict[Pair, World]
    unit_m: World
    unit_a: World
    absurd: World
    order: FrozenSet[Pair]
    interp: Valuation = field(default_factory=dict)

    def le(self, a: World, b: World) -> bool:
        return (a, b) in self.order

    def validate(self) -> 'ResourceModel':
        problem = rm_violation(self.carrier, self.mult, self.add, self.unit_m, self.unit_a,
                               self.absurd, self.order)
        if problem:
            raise ModelError(f"not a resource monoid: {problem}")
        for p, true in self.interp.items():
            if self.absurd not in true:
                raise ModelError(f"interpretation of {p} misses the absurd resource")
            if any(a in true and b not in true for a, b in self.order):
                raise ModelError(f"interpretation of {p} is not upward closed")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'resource',
            'carrier': list(self.carrier),
            'units': {'m': self.unit_m, 'a': self.unit_a, 'abs': self.absurd},
            'mult': [[self.mult[(a, b)] for b in self.carrier] for a in self.carrier],
            'add': [[self.add[(a, b)] for b in self.carrier] for a in self.carrier],
            'order': sorted([a, b] for a, b in self.order if a != b),
            'valuation': _valuation_dict(self.interp),
        }


Model = Union[KripkeModel, SimpleS5Model, SphereModel, ResourceModel]


# Frame properties

def is_reflexive(worlds: Sequence[World], rel: FrozenSet[Pair]) -> bool:
    return all((w, w) in rel for w in worlds)


def is_transitive(worlds: Sequence[World], rel: FrozenSet[Pair]) -> bool:
    return all((a, c) in rel for a, b in rel for b2, c in rel if b == b2)


def is_symmetric(worlds: Sequence[World], rel: FrozenSet[Pair]) -> bool:
    return all((b, a) in rel for a, b in rel)


def is_serial(worlds: Sequence[World], rel: FrozenSet[Pair]) -> bool:
    return all(any((w, u) in rel for u in worlds) for w in worlds)


def is_euclidean(worlds: Sequence[World], rel: FrozenSet[Pair]) -> bool:
    return all((b, c) in rel for a, b in rel for a2, c in rel if a == a2)


FRAME_PROPERTIES: Final[Dict[str, Callable[[Sequence[World], FrozenSet[Pair]], bool]]] = {
    'reflexive': is_reflexive,
    'transitive': is_transitive,
    'symmetric': is_symmetric,
    'serial': is_serial,
    'euclidean': is_euclidean,
}


# Evaluation

class _Evaluator:
    def __init__(self, model: Model, semantics: str):
        self.model = model
        self.semantics = semantics
        self.memo: Dict[Tuple[World, str], bool] = {}

    def __call__(self, w: World, f: Formula) -> bool:
        key = (w, f.text)
        if key not in self.memo:
            self.memo[key] = self.clause(w, f)
        return self.memo[key]

    def clause(self, w: World, f: Formula) -> bool:
        raise NotImplementedError

    def classical(self, w: World, f: Formula) -> Optional[bool]:
        """Shared clauses for the boolean connectives; None when f is not one"""
        if isinstance(f, Atom):
            return w in self.model_valuation().get(f.name, frozenset())
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Not):
            return not self(w, f.sub)
        if isinstance(f, And):
            return self(w, f.left) and self(w, f.right)
        if isinstance(f, Or):
            return self(w, f.left) or self(w, f.right)
        if isinstance(f, Imp):
            return not self(w, f.left) or self(w, f.right)
        return None

    def model_valuation(self) -> Valuation:
        return getattr(self.model, 'valuation')

    def unsupported(self, f: Formula) -> NoReturn:
        raise ModelError(f"{type(self.model).__name__} cannot evaluate {type(f).__name__}")


class _KripkeEval(_Evaluator):
    model: KripkeModel

    def clause(self, w: World, f: Formula) -> bool:
        m = self.model
        if m.intuitionistic:
            return self.intuitionistic(w, f)
        value = self.classical(w, f)
        if value is not None:
            return value
        if isinstance(f, Box):
            return all(self(u, f.sub) for u in m.successors(w))
        if isinstance(f, Dia):
            return any(self(u, f.sub) for u in m.successors(w))
        if isinstance(f, BBox):
            return all(self(u, f.sub) for u in m.predecessors(w))
        if isinstance(f, BDia):
            return any(self(u, f.sub) for u in m.predecessors(w))
        return self.unsupported(f)

    def intuitionistic(self, w: World, f: Formula) -> bool:
        m = self.model
        if isinstance(f, (Sup, Imp)):
            return all(not self(u, f.left) or self(u, f.right) for u in m.successors(w))
        if isinstance(f, Not):
            return all(not self(u, f.sub) for u in m.successors(w))
        if isinstance(f, (Atom, Top, Bot, And, Or)):
            value = self.classical(w, f)
            assert value is not None
            return value
        return self.unsupported(f)


class _S5Eval(_Evaluator):
    model: SimpleS5Model

    def clause(self, w: World, f: Formula) -> bool:
        value = self.classical(w, f)
        if value is not None:
            return value
        if isinstance(f, Box):
            return all(self(u, f.sub) for u in self.model.worlds)
        if isinstance(f, Dia):
            return any(self(u, f.sub) for u in self.model.worlds)
        return self.unsupported(f)


class _SphereEval(_Evaluator):
    model: SphereModel

    def clause(self, w: World, f: Formula) -> bool:
        value = self.classical(w, f)
        if value is not None:
            return value
        if isinstance(f, Pref):
            # every sphere meeting B also meets A
            for alpha in self.model.spheres.get(w, ()):
                if any(self(u, f.right) for u in alpha) and \
                        not any(self(v, f.left) for v in alpha):
                    return False
            return True
        return self.unsupported(f)


class _ResourceEval(_Evaluator):
    model: ResourceModel

    def model_valuation(self) -> Valuation:
        return self.model.interp

    def clause(self, w: World, f: Formula) -> bool:
        m = self.model
        sm = self.semantics == 'sm'
        if isinstance(f, Atom):
            return w in m.interp.get(f.name, frozenset({m.absurd}))
        if isinstance(f, Bot):
            return m.le(m.absurd, w)
        if isinstance(f, Top):
            return True if sm else m.le(m.unit_a, w)
        if isinstance(f, MTop):
            return m.le(m.unit_m, w)
        if isinstance(f, Or):
            return self(w, f.left) or self(w, f.right)
        if isinstance(f, Star):
            return self._split(w, f, m.mult)
        if isinstance(f, Wand):
            return self._arrow(w, f, m.mult)
        if isinstance(f, And):
            if sm:
                return self(w, f.left) and self(w, f.right)
            return self._split(w, f, m.add)
        if isinstance(f, Sup):
            if sm:
                return all(not self(u, f.left) or self(u, f.right)
                           for u in m.carrier if m.le(w, u))
            return self._arrow(w, f, m.add)
        return self.unsupported(f)

    def _split(self, w: World, f: Any, table: Dict[Pair, World]) -> bool:
        m = self.model
        return any(m.le(table[(u, v)], w) and self(u, f.left) and self(v, f.right)
                   for u in m.carrier for v in m.carrier)

    def _arrow(self, w: World, f: Any, table: Dict[Pair, World]) -> bool:
        m = self.model
        for u in m.carrier:
            if not self(u, f.left):
                continue
            for v in m.carrier:
                if m.le(table[(w, u)], v) and not self(v, f.right):
                    return False
        return True


_EVALUATORS: Final[Dict[type, type]] = {
    KripkeModel: _KripkeEval,
    SimpleS5Model: _S5Eval,
    SphereModel: _SphereEval,
    ResourceModel: _ResourceEval,
}


def evaluate(model: Model, world: World, f: Formula, semantics: str = 'dm') -> bool:
    """Truth of f at world; resource models read 'dm' (double monoid) or 'sm' clauses"""
    if semantics not in ('dm', 'sm'):
        raise ModelError(f"unknown resource semantics '{semantics}'")
    universe = model.carrier if isinstance(model, ResourceModel) else model.worlds
    if world not in universe:
        raise ModelError(f"world {world} is not in the model")
    return _EVALUATORS[type(model)](model, semantics)(world, f)


def true_everywhere(model: Union[KripkeModel, SimpleS5Model, SphereModel],
                    f: Formula) -> Optional[World]:
    """The first world refuting f, or None"""
    ev = _EVALUATORS[type(model)](model, 'dm')
    for w in model.worlds:
        if not ev(w, f):
            return w
    return None


# Enumeration

def _subsets(items: Sequence[Any]) -> Iterator[FrozenSet[Any]]:
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def relations(n: int, properties: Iterable[str] = ()) -> Iterator[FrozenSet[Pair]]:
    worlds = tuple(range(n))
    checks = [FRAME_PROPERTIES[p] for p in properties]
    pairs = [(a, b) for a in worlds for b in worlds]
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        if all(check(worlds, rel) for check in checks):
            yield rel


def _valuations(names: Sequence[str], sets: List[FrozenSet[World]]) -> Iterator[Valuation]:
    for choice in itertools.product(sets, repeat=len(names)):
        yield dict(zip(names, choice))


def up_sets(worlds: Sequence[World], order: FrozenSet[Pair]) -> List[FrozenSet[World]]:
    return [s for s in _subsets(list(worlds))
            if not any(a in s and b not in s for a, b in order)]


def kripke_models(n: int, names: Sequence[str], properties: Iterable[str] = (),
                  intuitionistic: bool = False) -> Iterator[KripkeModel]:
    worlds = tuple(range(n))
    props = list(properties)
    if intuitionistic:
        props = sorted(set(props) | {'reflexive', 'transitive'})
    for rel in relations(n, props):
        sets = up_sets(worlds, rel) if intuitionistic else list(_subsets(worlds))
        for val in _valuations(names, sets):
            yield KripkeModel(worlds, rel, val, intuitionistic)


def s5_models(n: int, names: Sequence[str]) -> Iterator[SimpleS5Model]:
    worlds = tuple(range(n))
    for val in _valuations(names, list(_subsets(worlds))):
        yield SimpleS5Model(worlds, val)


def _chains(worlds: Sequence[World]) -> List[Tuple[Sphere, ...]]:
    spheres = [s for s in _subsets(list(worlds)) if s]
    found = []
    for system in _subsets(spheres):
        ordered = sorted(system, key=lambda s: (len(s), sorted(s)))
        if all(a <= b for a, b in zip(ordered, ordered[1:])):
            found.append(tuple(ordered))
    return found


def sphere_models(n: int, names: Sequence[str]) -> Iterator[SphereModel]:
    worlds = tuple(range(n))
    chains = _chains(worlds)
    for systems in itertools.product(chains, repeat=n):
        spheres = dict(zip(worlds, systems))
        for val in _valuations(names, list(_subsets(worlds))):
            yield SphereModel(worlds, spheres, val)


def rm_violation(carrier: Sequence[World], mult: Dict[Pair, World], add: Dict[Pair, World],
                 e: World, top: World, absurd: World, order: FrozenSet[Pair]) -> Optional[str]:
    """The first resource-monoid axiom that fails, or None"""
    le = order.__contains__
    for name, table, unit in (('mult', mult, e), ('add', add, top)):
        for a in carrier:
            if table[(a, unit)] != a:
                return f"{unit} is not a unit of {name}"
            for b in carrier:
                if table[(a, b)] != table[(b, a)]:
                    return f"{name} is not commutative"
                for c in carrier:
                    if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                        return f"{name} is not associative"
    for a in carrier:
        if not le((a, a)):
            return "order is not reflexive"
        if not le((a, absurd)) or not le((absurd, mult[(absurd, a)])):
            return "absurd resource is not absorbing"
        for b in carrier:
            if not le((a, add[(a, b)])) or not le((add[(a, a)], a)):
                return "add is not an upper bound"
            for c in carrier:
                if le((a, b)) and le((b, c)) and not le((a, c)):
                    return "order is not transitive"
    for a, b in order:
        for c, d in order:
            if not le((mult[(a, c)], mult[(b, d)])) or not le((add[(a, c)], add[(b, d)])):
                return "compositions are not monotone"
    return None


def _tables(carrier: Sequence[World], unit: World) -> Iterator[Dict[Pair, World]]:
    """Commutative associative tables with the given unit"""
    others = [x for x in carrier if x != unit]
    free = [(a, b) for i, a in enumerate(others) for b in others[i:]]
    for values in itertools.product(carrier, repeat=len(free)):
        table: Dict[Pair, World] = {}
        for x in carrier:
            table[(x, unit)] = table[(unit, x)] = x
        for (a, b), v in zip(free, values):
            table[(a, b)] = table[(b, a)] = v
        if all(table[(table[(a, b)], c)] == table[(a, table[(b, c)])]
               for a in carrier for b in carrier for c in carrier):
            yield table


def _preorders(n: int) -> Iterator[FrozenSet[Pair]]:
    return relations(n, ('reflexive', 'transitive'))


def _monotone(order: FrozenSet[Pair], table: Dict[Pair, World]) -> bool:
    return all((table[(a, c)], table[(b, d)]) in order for a, b in order for c, d in order)


def resource_models(n: int, names: Sequence[str]) -> Iterator[ResourceModel]:
    carrier = tuple(range(n))
    tables = {unit: list(_tables(carrier, unit)) for unit in carrier}
    for order in _preorders(n):
        greatest = [x for x in carrier if all((a, x) in order for a in carrier)]
        least = [x for x in carrier if all((x, a) in order for a in carrier)]
        if not greatest or not least:
            continue
        adds = [(top, t) for top in least for t in tables[top]
                if _monotone(order, t)
                and all((a, t[(a, b)]) in order for a in carrier for b in carrier)
                and all((t[(a, a)], a) in order for a in carrier)]
        mults = [(e, t) for e in carrier for t in tables[e] if _monotone(order, t)]
        sets_all = up_sets(carrier, order)
        for absurd in greatest:
            sets = [s for s in sets_all if absurd in s]
            for (top, add), (e, mult) in itertools.product(adds, mults):
                if rm_violation(carrier, mult, add, e, top, absurd, order):
                    continue
                for val in _valuations(names, sets):
                    yield ResourceModel(carrier, mult, add, e, top, absurd, order, val)


# Validity

@dataclass
class Verdict:
    """valid means no counter-model up to the bound"""
    valid: bool
    logic: str
    bound: int
    checked: int = 0
    countermodel: Optional[Model] = None
    world: Optional[World] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'verdict': 'valid-up-to-bound' if self.valid else 'countermodel',
            'logic': self.logic,
            'bound': self.bound,
            'models_checked': self.checked,
        }
        if self.countermodel is not None:
            data['countermodel'] = self.countermodel.to_dict()
            data['world'] = self.world
        return data


def truth_table_valid(f: Formula) -> Verdict:
    """Classical validity by truth tables"""
    names = sorted(atoms(f))
    checked = 0
    for val in _valuations(names, [frozenset(), frozenset({0})]):
        checked += 1
        model = KripkeModel((0,), frozenset(), val)
        if not evaluate(model, 0, f):
            return Verdict(False, 'cpc', 1, checked, model, 0)
    return Verdict(True, 'cpc', 1, checked)


SEMANTICS: Final = ('k', 's5', 'tense', 'int', 'cond', 'bi', 'bi-sm')


def _default_semantics(logic: str) -> str:
    return {'modal': 'k', 'tense': 'tense', 'kt': 'tense', 'int': 'int', 'cond': 'cond',
            'bi': 'bi'}[logic]


def _models(semantics: str, n: int, names: Sequence[str],
            frame: Sequence[str]) -> Iterator[Model]:
    if semantics in ('k', 'tense'):
        return kripke_models(n, names, frame)
    if semantics == 's5':
        return s5_models(n, names)
    if semantics == 'int':
        return kripke_models(n, names, frame, intuitionistic=True)
    if semantics == 'cond':
        return sphere_models(n, names)
    return resource_models(n, names)


def brute_force_valid(f: Formula, logic: str, bound: int, max_bound: int = 4,
                      semantics: Optional[str] = None,
                      frame: Sequence[str] = ()) -> Verdict:
    """Search all models with at most `bound` worlds for a counter-model

    BI formulas are refuted at the multiplicative unit; every other logic at
    any world.
    """
    check_logic(logic)
    if bound < 1:
        raise ModelError("bound must be at least 1")
    if bound > max_bound:
        raise ModelError(f"bound {bound} exceeds the configured maximum {max_bound}")
    if logic == 'cpc':
        return truth_table_valid(f)
    semantics = semantics or _default_semantics(logic)
    if semantics not in SEMANTICS:
        raise ModelError(f"unknown semantics '{semantics}'")
    unknown = [p for p in frame if p not in FRAME_PROPERTIES]
    if unknown:
        raise ModelError(f"unknown frame properties: {', '.join(unknown)}")
    names = sorted(atoms(f))
    checked = 0
    for n in range(1, bound + 1):
        for model in _models(semantics, n, names, frame):
            checked += 1
            if isinstance(model, ResourceModel):
                mode = 'sm' if semantics == 'bi-sm' else 'dm'
                if not evaluate(model, model.unit_m, f, mode):
                    return Verdict(False, logic, bound, checked, model, model.unit_m)
                continue
            w = true_everywhere(model, f)
            if w is not None:
                LOGGER.debug("countermodel for %s after %d models", f, checked)
                return Verdict(False, logic, bound, checked, model, w)
    LOGGER.debug("%s valid up to %d worlds (%d models)", f, bound, checked)
    return Verdict(True, logic, bound, checked)


def tense_valid(f: Formula, bound: int, max_bound: int = 4) -> Verdict:
    return brute_force_valid(f, 'tense', bound, max_bound, semantics='tense')


def s5_frame_valid(f: Formula, bound: int, max_bound: int = 4) -> Verdict:
    """Validity over reflexive euclidean frames"""
    return brute_force_valid(f, 'modal', bound, max_bound, semantics='k',
                             frame=('reflexive', 'euclidean'))
