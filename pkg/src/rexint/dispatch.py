"""Route a pair of regexps to a linear algorithm or to the product baseline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import linear
from .answer import Answer
from .automata import DEFAULT_PAIR_BUDGET, product_nonempty
from .canonical import CanonicalForm, coercible_types
from .syntax import Regex

LINEAR = "linear"
BASELINE = "baseline"
TRIVIAL = "trivially_nonempty"

# Fixed priority: closure, then runalt, then star reduction, then the
# ∘-rooted pairs (form-producing routes first).
_CLOSURE = ("+|", "*|")
_RUNALT = ("|+", "|*")
_STAR_PARTNERS = ("*∘", "∘|", "∘+", "|∘", "+∘")
_PAIRS: tuple[tuple[str, str, str, Callable], ...] = (
    ("∘|", "∘|", "possets_possets", linear.intersect_possets_possets),
    ("∘+", "∘+", "runseq_runseq", linear.intersect_runseq_runseq),
    ("+∘", "+∘", "power_power", linear.intersect_power_power),
    ("|∘", "|∘", "dict_dict", linear.intersect_dict_dict),
    ("∘|", "|∘", "possets_dict", linear.intersect_possets_dict),
    ("∘|", "+∘", "possets_power", linear.intersect_possets_power),
    ("∘+", "|∘", "runseq_dict", linear.intersect_runseq_dict),
    ("∘+", "+∘", "runseq_power", linear.intersect_runseq_power),
    ("+∘", "|∘", "power_dict", linear.intersect_power_dict),
)
_B_PREFERENCE = ("+|", "*|", "|+", "|*", "∘|", "∘+", "|∘", "+∘", "*∘", "∘*")


@dataclass(frozen=True)
class PairRoute:
    left: str  # type the left operand is read as ("" when it has none)
    right: str
    route: str  # LINEAR | BASELINE | TRIVIAL
    case: str = ""
    swapped: bool = False  # the chosen algorithm takes the operands in the other order

    def __str__(self) -> str:
        if self.route == BASELINE:
            return "baseline"
        return f"{self.route}({self.case})"


def _pick(forms: dict, order) -> Optional[str]:
    for t in order:
        if t in forms:
            return t
    return None


def plan(fa: dict[str, CanonicalForm], fb: dict[str, CanonicalForm]) -> PairRoute:
    """Choose a route given the coercible forms of both operands."""
    if not fa or not fb:
        return PairRoute(_pick(fa, _B_PREFERENCE) or "", _pick(fb, _B_PREFERENCE) or "", BASELINE)
    for special, case in ((_CLOSURE, "closure"), (_RUNALT, "runalt")):
        for x, y, swapped in ((fa, fb, False), (fb, fa, True)):
            t = _pick(x, special)
            if t is not None:
                u = _pick(y, _B_PREFERENCE)
                left, right = (u, t) if swapped else (t, u)
                return PairRoute(left, right, LINEAR, case, swapped)
    for x, y, swapped in ((fa, fb, False), (fb, fa, True)):
        if "*∘" in x:
            u = _pick(y, _STAR_PARTNERS)
            if u is not None:
                route = TRIVIAL if u == "*∘" else LINEAR
                left, right = (u, "*∘") if swapped else ("*∘", u)
                return PairRoute(left, right, route, "star_reduce", swapped)
    for t, u, case, _ in _PAIRS:
        if t in fa and u in fb:
            return PairRoute(t, u, LINEAR, case, False)
        if u in fa and t in fb:
            return PairRoute(u, t, LINEAR, case, True)
    return PairRoute(_pick(fa, _B_PREFERENCE) or "", _pick(fb, _B_PREFERENCE) or "", BASELINE)


_CASE_FUNCS = {case: fn for _, _, case, fn in _PAIRS}


def run_route(route: PairRoute, fa: dict, fb: dict) -> Answer:
    x, y = (fb, fa) if route.swapped else (fa, fb)
    tx, ty = (route.right, route.left) if route.swapped else (route.left, route.right)
    first, second = x[tx], y[ty]
    if route.case == "closure":
        return linear.closure_vs_form(first, second)
    if route.case == "runalt":
        return linear.runalt_vs_form(first, second)
    if route.case == "star_reduce":
        return linear.star_reduce_forms(first, second)
    return _CASE_FUNCS[route.case](first, second)


def route_for(a: Regex, b: Regex) -> PairRoute:
    return plan(coercible_types(a), coercible_types(b))


def dispatch(a: Regex, b: Regex, force_baseline: bool = False, budget: int = DEFAULT_PAIR_BUDGET) -> Answer:
    """Decide whether L(a) ∩ L(b) is nonempty.

    Uses a linear-time algorithm whenever both operands coerce to a tractable
    pair of types; otherwise (or when forced) the product-automaton search,
    which may raise BudgetExceeded.
    """
    if force_baseline:
        return product_nonempty(a, b, budget)
    fa, fb = coercible_types(a), coercible_types(b)
    route = plan(fa, fb)
    if route.route == BASELINE:
        return product_nonempty(a, b, budget)
    return run_route(route, fa, fb)
