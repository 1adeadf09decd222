"""
pcw: a proof-calculus workbench for modal, tense, intuitionistic, conditional
and bunched logics
"""

__version__ = "0.1.0"
__author__ = "pcw developers"
