"""
Exception hierarchy for pcw
"""

from typing import Any, List, Optional, Tuple


class PcwError(Exception):
    """Base class for all workbench errors"""


class ParseError(PcwError):
    """Text does not conform to the formula or structure grammar"""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class LogicError(PcwError):
    """A connective or formula outside the requested logic"""


class ShapeError(PcwError):
    """A sequent shape the operation does not support"""


class CheckError(PcwError):
    """A proof failed to check where a checked proof is required"""

    def __init__(self, message: str, report: Any = None):
        self.report = report
        super().__init__(message)


class TranslationError(PcwError):
    """A translation met an input shape it cannot handle"""

    def __init__(self, message: str, path: Tuple[int, ...] = ()):
        self.path = path
        where = '.'.join(str(i) for i in path) or 'root'
        super().__init__(f"{message} [node {where}]")


class ReconstructionError(PcwError):
    """Label constraints do not describe a bunch"""

    def __init__(self, reasons: List[Tuple[str, str]]):
        self.reasons = reasons
        summary = '; '.join(f"{kind}: {detail}" for kind, detail in reasons)
        super().__init__(f"cannot reconstruct bunch: {summary}")

    @property
    def kinds(self) -> List[str]:
        return [kind for kind, _ in self.reasons]


class ModelError(PcwError):
    """Model kind mismatch, malformed model or bound out of range"""


class ConfigError(PcwError):
    """Invalid configuration"""


class CorpusError(PcwError):
    """A proof file could not be read or decoded"""


class RuleError(PcwError):
    """A malformed rule description or an unknown calculus extension"""
