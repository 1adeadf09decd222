"""
Concrete syntax: lark grammars for formulas and every sequent shape
"""

import logging
from functools import lru_cache
from typing import Any, Callable, Dict, Final, List, Optional

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from .errors import LogicError, ParseError, PcwError
from .formula import (And, Atom, BBox, BDia, Bot, Box, Dia, Formula, Imp, MTop, Not, Or,
                      Pref, Star, Sup, Top, Wand, check_logic, conditional, well_formed)
from .sequents import (BLeaf, BNode, Block, BlockSequent, BUnit, BunchedSequent, Compound,
                       Constraint, DBullet, DComma, DFormula, DisplaySequent, DStar, DUnit, Forces,
                       GbiSequent, GentzenSequent, GlvSequent, Hypersequent, ILNode,
                       KtNode, LabeledFormula, LabeledSequent, Member, RelAtom, SphereOf,
                       Structure, Sub)

LOGGER: Final = logging.getLogger(__name__)

ROOT_LABEL: Final = 'r'

_FORMULA_RULES = r'''
?formula: imp
?imp: disj
    | disj IMP_OP imp         -> binary
?disj: disj "\\/" conj         -> or_
    | conj
?conj: conj CONJ_OP unary     -> conj_
    | unary
?unary: "~" unary             -> not_
    | "[]" unary              -> box
    | "<>" unary              -> dia
    | "[b]" unary             -> bbox
    | "<b>" unary             -> bdia
    | "(" formula ")"
    | NAME                    -> atom
    | "top"                   -> top
    | "bot"                   -> bot
    | "mtop"                  -> mtop
'''

_COMMON = r'''
%import common.WS
%ignore WS
'''

FORMULA_GRAMMAR: Final = _FORMULA_RULES + r'''
IMP_OP: "->" | "=>" | "-*" | "=<" | ">"
CONJ_OP: "/\\" | "*"
NAME: /(?!(top|bot|mtop|mI|aI)\b)[A-Za-z_][A-Za-z0-9_]*/
''' + _COMMON

STRUCTURE_GRAMMAR: Final = _FORMULA_RULES + r'''
fseq: formula ("," formula)*

gentzen: [fseq] "|-" [fseq]
hyper: gentzen ("|" gentzen)*

ktnest: [ktitems]
ktitems: ktitem ("," ktitem)*
ktitem: formula                 -> ktformula
    | "o[" [ktitems] "]"        -> onest
    | "b[" [ktitems] "]"        -> bnest

ilnest: [fseq] "|-" [ilitems]
ilitems: ilitem ("," ilitem)*
ilitem: formula                 -> ilformula
    | "[" ilnest "]_" LABEL     -> ilchild

labeled: [rels ";"] [lfseq] "|-" [lfseq]
rels: rel ("," rel)*
rel: LABEL "R" LABEL            -> rrel
    | LABEL "<=" LABEL          -> lerel
lfseq: lf ("," lf)*
lf: LABEL ":" formula

glv: [gterms] "|-" [gterms]
gterms: gterm ("," gterm)*
gterm: LABEL ":" formula        -> g_lf
    | LABEL "in" LABEL          -> g_member
    | LABEL "in" "S" "(" LABEL ")" -> g_sphere
    | LABEL "sub" LABEL         -> g_sub
    | LABEL "||-" formula       -> g_forces

blockseq: [fseq] "|-" [bitems]
bitems: bitem ("," bitem)*
bitem: formula                  -> bformula
    | "[" [fseq] "<|" formula "]" -> block

bunched: bunch "|-" formula
bunch: bunch ";" bcomma         -> bsemi_node
    | bcomma                    -> bpass
bcomma: bcomma "," batom        -> bcomma_node
    | batom                     -> bpass
batom: formula                  -> bleaf
    | "mI"                      -> munit
    | "aI"                      -> aunit
    | "(" bunch ")"             -> bpass

gbi: [cons ";"] [glfs] "|-" [glfs]
cons: con ("," con)*
con: glabel "<=" glabel
glfs: glf ("," glf)*
glf: glabel ":" formula
glabel: LABEL                   -> gletter
    | "m(" glabel "," glabel ")" -> gm
    | "a(" glabel "," glabel ")" -> ga

IMP_OP: "->" | "=>" | "-*" | "=<" | ">"
CONJ_OP: "/\\" | "*"
NAME: /(?!(top|bot|mtop|mI|aI)\b)[A-Za-z_][A-Za-z0-9_]*/
LABEL: /[A-Za-z_][A-Za-z0-9_]*/
''' + _COMMON

DISPLAY_GRAMMAR: Final = _FORMULA_RULES + r'''
display: dstruct "=>" dstruct
dstruct: dstruct "o" dunary     -> dcomma
    | dunary                    -> dpass
dunary: "*" dunary              -> dstar
    | "." dunary                -> dbullet
    | "I"                       -> dunit
    | formula                   -> dformula
    | "(" dstruct ")"           -> dpass

IMP_OP: "->"
CONJ_OP: "/\\"
NAME: /(?!(top|bot|mtop|mI|aI|I|o)\b)[A-Za-z_][A-Za-z0-9_]*/
''' + _COMMON

STRUCTURE_KINDS: Final = ('gentzen', 'hyper', 'ktnest', 'ilnest', 'labeled', 'glv',
                          'blockseq', 'bunched', 'gbi', 'display')

# Default formula logic per sequent shape
DEFAULT_LOGIC: Final = {
    'gentzen': 'cpc', 'hyper': 'modal', 'ktnest': 'tense', 'ilnest': 'int',
    'labeled': 'modal', 'glv': 'cond', 'blockseq': 'cond', 'bunched': 'bi',
    'gbi': 'bi', 'display': 'tense',
}


@lru_cache(maxsize=None)
def _parser(kind: str) -> Lark:
    if kind == 'formula':
        return Lark(FORMULA_GRAMMAR, start='formula', parser='lalr')
    if kind == 'display':
        return Lark(DISPLAY_GRAMMAR, start='display', parser='earley', ambiguity='resolve')
    starts = [k for k in STRUCTURE_KINDS if k != 'display']
    return Lark(STRUCTURE_GRAMMAR, start=starts, parser='earley', ambiguity='resolve')


class FormulaBuilder(Transformer):
    """Build formula objects; connective readings depend on the logic"""

    def __init__(self, logic: str):
        super().__init__()
        self.logic = logic

    def binary(self, items: List[Any]) -> Formula:
        left, op, right = items
        return self._binary(str(op), left, right)

    def _binary(self, op: str, left: Formula, right: Formula) -> Formula:
        if op == '->':
            return Sup(left, right) if self.logic == 'int' else Imp(left, right)
        if op == '=>':
            return Sup(left, right)
        if op == '-*':
            return Wand(left, right)
        if op == '=<':
            return Pref(left, right)
        if self.logic == 'bi':
            return Sup(left, right)
        if self.logic == 'cond':
            return conditional(left, right)
        raise LogicError(f"'>' has no reading in {self.logic}")

    def or_(self, items: List[Any]) -> Formula:
        return Or(items[0], items[1])

    def conj_(self, items: List[Any]) -> Formula:
        left, op, right = items
        return Star(left, right) if str(op) == '*' else And(left, right)

    def not_(self, items: List[Any]) -> Formula:
        if self.logic == 'int':
            return Sup(items[0], Bot())
        return Not(items[0])

    def box(self, items: List[Any]) -> Formula:
        return Box(items[0])

    def dia(self, items: List[Any]) -> Formula:
        return Dia(items[0])

    def bbox(self, items: List[Any]) -> Formula:
        return BBox(items[0])

    def bdia(self, items: List[Any]) -> Formula:
        return BDia(items[0])

    def atom(self, items: List[Token]) -> Formula:
        return Atom(str(items[0]))

    def top(self, _: List[Any]) -> Formula:
        return Top()

    def bot(self, _: List[Any]) -> Formula:
        return Bot()

    def mtop(self, _: List[Any]) -> Formula:
        return MTop()


def _opt(item: Optional[List[Any]]) -> List[Any]:
    return list(item) if item else []


class StructureBuilder(FormulaBuilder):
    """Build sequent objects of every shape"""

    def fseq(self, items: List[Any]) -> List[Any]:
        return list(items)

    def gentzen(self, items: List[Any]) -> GentzenSequent:
        return GentzenSequent(tuple(_opt(items[0])), tuple(_opt(items[1])))

    def hyper(self, items: List[Any]) -> Hypersequent:
        return Hypersequent(tuple(items))

    # nested
    def ktnest(self, items: List[Any]) -> KtNode:
        return self._kt(_opt(items[0]))

    def _kt(self, entries: List[Any]) -> KtNode:
        formulas = tuple(e for e in entries if isinstance(e, Formula))
        children = tuple(e for e in entries if isinstance(e, tuple))
        return KtNode(formulas, children)

    def ktitems(self, items: List[Any]) -> List[Any]:
        return list(items)

    def ktformula(self, items: List[Any]) -> Formula:
        return items[0]

    def onest(self, items: List[Any]) -> Any:
        return ('o', self._kt(_opt(items[0])))

    def bnest(self, items: List[Any]) -> Any:
        return ('b', self._kt(_opt(items[0])))

    def ilnest(self, items: List[Any]) -> ILNode:
        entries = _opt(items[1])
        suc = tuple(e for e in entries if isinstance(e, Formula))
        children = tuple(e for e in entries if isinstance(e, ILNode))
        return ILNode(ROOT_LABEL, tuple(_opt(items[0])), suc, children)

    def ilitems(self, items: List[Any]) -> List[Any]:
        return list(items)

    def ilformula(self, items: List[Any]) -> Formula:
        return items[0]

    def ilchild(self, items: List[Any]) -> ILNode:
        node, label = items
        return ILNode(str(label), node.ant, node.suc, node.children)

    # labeled
    def labeled(self, items: List[Any]) -> LabeledSequent:
        return LabeledSequent(tuple(_opt(items[0])), tuple(_opt(items[1])), tuple(_opt(items[2])))

    def rels(self, items: List[Any]) -> List[Any]:
        return list(items)

    def rrel(self, items: List[Any]) -> RelAtom:
        return RelAtom('R', str(items[0]), str(items[1]))

    def lerel(self, items: List[Any]) -> RelAtom:
        return RelAtom('<=', str(items[0]), str(items[1]))

    def lfseq(self, items: List[Any]) -> List[Any]:
        return list(items)

    def lf(self, items: List[Any]) -> LabeledFormula:
        return LabeledFormula(str(items[0]), items[1])

    # conditional
    def glv(self, items: List[Any]) -> GlvSequent:
        return GlvSequent(tuple(_opt(items[0])), tuple(_opt(items[1])))

    def gterms(self, items: List[Any]) -> List[Any]:
        return list(items)

    def g_lf(self, items: List[Any]) -> LabeledFormula:
        return LabeledFormula(str(items[0]), items[1])

    def g_member(self, items: List[Any]) -> Member:
        return Member(str(items[0]), str(items[1]))

    def g_sphere(self, items: List[Any]) -> SphereOf:
        return SphereOf(str(items[0]), str(items[1]))

    def g_sub(self, items: List[Any]) -> Sub:
        return Sub(str(items[0]), str(items[1]))

    def g_forces(self, items: List[Any]) -> Forces:
        return Forces(str(items[0]), items[1])

    def blockseq(self, items: List[Any]) -> BlockSequent:
        entries = _opt(items[1])
        suc = tuple(e for e in entries if isinstance(e, Formula))
        blocks = tuple(e for e in entries if isinstance(e, Block))
        return BlockSequent(tuple(_opt(items[0])), suc, blocks)

    def bitems(self, items: List[Any]) -> List[Any]:
        return list(items)

    def bformula(self, items: List[Any]) -> Formula:
        return items[0]

    def block(self, items: List[Any]) -> Block:
        return Block(tuple(_opt(items[0])), items[1])

    # bunches
    def bunched(self, items: List[Any]) -> BunchedSequent:
        return BunchedSequent(items[0], items[1])

    def bpass(self, items: List[Any]) -> Any:
        return items[0]

    def bsemi_node(self, items: List[Any]) -> BNode:
        return BNode(';', items[0], items[1])

    def bcomma_node(self, items: List[Any]) -> BNode:
        return BNode(',', items[0], items[1])

    def bleaf(self, items: List[Any]) -> BLeaf:
        return BLeaf(items[0])

    def munit(self, _: List[Any]) -> BUnit:
        return BUnit('m')

    def aunit(self, _: List[Any]) -> BUnit:
        return BUnit('a')

    # resource labels
    def gbi(self, items: List[Any]) -> GbiSequent:
        return GbiSequent(tuple(_opt(items[0])), tuple(_opt(items[1])), tuple(_opt(items[2])))

    def cons(self, items: List[Any]) -> List[Any]:
        return list(items)

    def con(self, items: List[Any]) -> Constraint:
        return Constraint(items[0], items[1])

    def glfs(self, items: List[Any]) -> List[Any]:
        return list(items)

    def glf(self, items: List[Any]) -> LabeledFormula:
        return LabeledFormula(items[0], items[1])

    def gletter(self, items: List[Any]) -> str:
        return str(items[0])

    def gm(self, items: List[Any]) -> Compound:
        return Compound('m', items[0], items[1])

    def ga(self, items: List[Any]) -> Compound:
        return Compound('a', items[0], items[1])

    # display structures
    def display(self, items: List[Any]) -> DisplaySequent:
        return DisplaySequent(items[0], items[1])

    def dcomma(self, items: List[Any]) -> DComma:
        return DComma(items[0], items[1])

    def dpass(self, items: List[Any]) -> Any:
        return items[0]

    def dstar(self, items: List[Any]) -> DStar:
        return DStar(items[0])

    def dbullet(self, items: List[Any]) -> DBullet:
        return DBullet(items[0])

    def dunit(self, _: List[Any]) -> DUnit:
        return DUnit()

    def dformula(self, items: List[Any]) -> DFormula:
        return DFormula(items[0])


def _run(text: str, kind: str, builder: Transformer) -> Any:
    try:
        tree = _parser(kind if kind in ('formula', 'display') else 'structure').parse(
            text, **({} if kind in ('formula', 'display') else {'start': kind}))
        return builder.transform(tree)
    except UnexpectedInput as e:
        pos = getattr(e, 'pos_in_stream', None)
        if pos is None or pos < 0:
            pos = len(text)
        raise ParseError(f"syntax error in {kind}: {text!r}",
                         offset=len(text[:pos].encode('utf-8'))) from None
    except VisitError as e:
        if isinstance(e.orig_exc, PcwError):
            raise e.orig_exc from None
        raise


def parse(text: str, logic: str) -> Formula:
    """Parse a formula of the given logic and check it is well formed"""
    check_logic(logic)
    f = _run(text, 'formula', FormulaBuilder(logic))
    well_formed(f, logic)
    return f


def parse_sequent(text: str, kind: str, logic: Optional[str] = None) -> Structure:
    """Parse a sequent of the given shape; formulas are checked against the logic"""
    if kind not in STRUCTURE_KINDS:
        raise ParseError(f"unknown sequent kind '{kind}'")
    logic = check_logic(logic or DEFAULT_LOGIC[kind])
    s = _run(text, kind, StructureBuilder(logic))
    for f in sequent_formulas(s):
        well_formed(f, logic)
    LOGGER.debug("parsed %s sequent %s", kind, s)
    return s


def sequent_formulas(s: Any) -> List[Formula]:
    """All top-level formulas occurring in a structure"""
    found: List[Formula] = []

    def visit(x: Any) -> None:
        if isinstance(x, Formula):
            found.append(x)
        elif isinstance(x, (tuple, list)):
            for y in x:
                visit(y)
        elif isinstance(x, Structure):
            for value in vars(x).values():
                if value is not x and not isinstance(value, str):
                    visit(value)

    visit(s)
    return found


FORMULA_PARSERS: Dict[str, Callable[[str], Formula]] = {
    logic: (lambda text, _logic=logic: parse(text, _logic)) for logic in
    ('cpc', 'modal', 'tense', 'kt', 'int', 'cond', 'bi')
}
