"""
Helpers shared by the translations
"""

from typing import Callable, Tuple

from ..errors import CheckError
from ..kernel import Calculus, Proof, check
from ..sequents import Structure


def require(calc: Calculus, proof: Proof) -> None:
    """Raise CheckError unless the proof checks in calc"""
    report = check(calc, proof)
    if not report.ok:
        path, reason = report.failures[0]
        where = '.'.join(str(i) for i in path) or 'root'
        raise CheckError(f"input does not check in {calc.id}: {reason} at node {where}", report)


def map_sequents(proof: Proof, fn: Callable[[Structure], Structure]) -> Proof:
    return Proof(proof.rule, fn(proof.conclusion),
                 tuple(map_sequents(p, fn) for p in proof.premises), dict(proof.annotations))


def chain(top: Proof, steps: Tuple[Tuple[str, Structure], ...]) -> Proof:
    """Stack unary steps (rule, conclusion) below top, innermost first"""
    for rule, conclusion in steps:
        top = Proof(rule, conclusion, (top,))
    return top
