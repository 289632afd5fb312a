"""Decide whether two regular expressions share a word.

Linear-time algorithms cover the tractable pairs of homogeneous types of depth
at most two; everything else falls back to a product of position automata.
"""

from .answer import Answer, BudgetExceeded
from .automata import Nfa, enumerate_language, glushkov, member, product_nonempty
from .canonical import (
    AlphaClosure,
    NotCoercible,
    PosSets,
    PowerStr,
    Run,
    RunAlt,
    RunSeq,
    StarSeq,
    StrDict,
    TypeDescriptor,
    classify,
    coercible_types,
    extract_canonical,
)
from .dispatch import PairRoute, dispatch, route_for
from .syntax import Alt, Concat, Leaf, Plus, RegexSyntaxError, Star, parse, parse_word, render, render_word, size

__all__ = [
    "AlphaClosure", "Alt", "Answer", "BudgetExceeded", "Concat", "Leaf", "Nfa", "NotCoercible",
    "PairRoute", "Plus", "PosSets", "PowerStr", "RegexSyntaxError", "Run", "RunAlt", "RunSeq",
    "Star", "StarSeq", "StrDict", "TypeDescriptor", "classify", "coercible_types", "dispatch",
    "enumerate_language", "extract_canonical", "glushkov", "member", "parse", "parse_word",
    "product_nonempty", "render", "render_word", "route_for", "size",
]
