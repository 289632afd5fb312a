"""Linear-time intersection tests for the tractable pairs of depth-2 types.

Each ``intersect_*`` function takes canonical forms (see :mod:`rexint.canonical`)
and returns an :class:`~rexint.answer.Answer`.  Letter-set membership uses
Python sets, which stand in for direct-address tables over the integer alphabet.
"""

from __future__ import annotations

from math import gcd

from .answer import Answer, empty, found
from .syntax import Alt, Concat, Leaf, Plus, Star
from .canonical import (
    AlphaClosure,
    CanonicalForm,
    PosSets,
    PowerStr,
    Run,
    RunAlt,
    RunSeq,
    StarSeq,
    StrDict,
    coercible_types,
    run_decompose,
)

# --- ∘| against ∘|, |∘, +∘ ---------------------------------------------------


def intersect_possets_possets(a: PosSets, b: PosSets) -> Answer:
    algo = "possets_possets"
    if len(a.sets) != len(b.sets):
        return empty(algo)
    meet = []
    for sa, sb in zip(a.sets, b.sets):
        common = set(sa).intersection(sb)
        if not common:
            return empty(algo)
        meet.append(tuple(sorted(common)))
    return found((s[0] for s in meet), algo, PosSets(tuple(meet)))


def _fits_possets(sets: list[set], word) -> bool:
    return len(word) == len(sets) and all(c in s for c, s in zip(word, sets))


def intersect_possets_dict(a: PosSets, b: StrDict) -> Answer:
    """First dictionary word (in input order) that fits position by position."""
    algo = "possets_dict"
    k = len(a.sets)
    sets = None
    for w in b.words:
        if len(w) != k:
            continue
        if sets is None:
            sets = [set(s) for s in a.sets]
        if _fits_possets(sets, w):
            return found(w, algo)
    return empty(algo)


def intersect_possets_power(a: PosSets, b: PowerStr) -> Answer:
    """``b`` must be a +-power; the only candidate word is T^(k/|T|)."""
    algo = "possets_power"
    k, t = len(a.sets), b.word
    if k % len(t):
        return empty(algo)
    reps = k // len(t)
    for i, s in enumerate(a.sets):
        if t[i % len(t)] not in s:
            return empty(algo)
    return found(t * reps, algo)


# --- ∘+ against ∘+, |∘, +∘ ---------------------------------------------------


def _run_admits(r: Run, length: int) -> bool:
    return length >= r.length if r.open else length == r.length


def intersect_runseq_runseq(a: RunSeq, b: RunSeq) -> Answer:
    algo = "runseq_runseq"
    if len(a.runs) != len(b.runs):
        return empty(algo)
    out = []
    for x, y in zip(a.runs, b.runs):
        if x.letter != y.letter:
            return empty(algo)
        if x.open and y.open:
            out.append(Run(x.letter, max(x.length, y.length), True))
        elif x.open or y.open:
            fixed, flex = (y, x) if x.open else (x, y)
            if fixed.length < flex.length:
                return empty(algo)
            out.append(fixed)
        elif x.length == y.length:
            out.append(x)
        else:
            return empty(algo)
    form = RunSeq(tuple(out))
    witness = [r.letter for r in out for _ in range(r.length)]
    return found(witness, algo, form)


def _runseq_accepts(a: RunSeq, word) -> bool:
    runs = run_decompose(word)
    if len(runs) != len(a.runs):
        return False
    return all(r.letter == c and _run_admits(r, n) for r, (c, n) in zip(a.runs, runs))


def intersect_runseq_dict(a: RunSeq, b: StrDict) -> Answer:
    algo = "runseq_dict"
    for w in b.words:
        if _runseq_accepts(a, w):
            return found(w, algo)
    return empty(algo)


def intersect_runseq_power(a: RunSeq, b: PowerStr) -> Answer:
    """Match the runs of ``a`` against the run structure of T^l.

    With T = b_1^{l_1}..b_h^{l_h}: when b_1 != b_h, T^l has l*h runs repeating
    the runs of T; when b_1 == b_h (h >= 2) the copies fuse, giving l*(h-1)+1
    runs with interior boundary runs of length l_h + l_1.  For h == 1, T = c^l
    and ``a`` must be a single run of c.
    """
    algo = "runseq_power"
    t_runs = run_decompose(b.word)
    h, k = len(t_runs), len(a.runs)
    t = b.word
    if h == 1:
        c, ell = t_runs[0]
        if k != 1 or a.runs[0].letter != c:
            return empty(algo)
        r = a.runs[0]
        if r.open:
            reps = max(1, -(-r.length // ell))
        elif r.length % ell == 0:
            reps = r.length // ell
        else:
            return empty(algo)
        return found(t * reps, algo)
    if h > k:
        return empty(algo)
    fused = t_runs[0][0] == t_runs[-1][0]
    if not fused:
        if k % h:
            return empty(algo)
        reps = k // h
        for j, r in enumerate(a.runs):
            c, n = t_runs[j % h]
            if r.letter != c or not _run_admits(r, n):
                return empty(algo)
        return found(t * reps, algo)
    if (k - 1) % (h - 1):
        return empty(algo)
    reps = (k - 1) // (h - 1)
    boundary = t_runs[-1][1] + t_runs[0][1]
    for j, r in enumerate(a.runs):
        if j == 0:
            c, n = t_runs[0]
        elif j == k - 1:
            c, n = t_runs[-1]
        elif j % (h - 1) == 0:
            c, n = t_runs[0][0], boundary
        else:
            c, n = t_runs[j % (h - 1)]
        if r.letter != c or not _run_admits(r, n):
            return empty(algo)
    return found(t * reps, algo)


# --- |∘ and +∘ among themselves ------------------------------------------------


def intersect_dict_dict(a: StrDict, b: StrDict) -> Answer:
    """A shared word, taken in ``a``'s order."""
    algo = "dict_dict"
    other = set(b.words)
    for w in a.words:
        if w in other:
            return found(w, algo)
    return empty(algo)


def is_power_of(word, root) -> bool:
    n, r = len(word), len(root)
    if n == 0 or n % r:
        return False
    return all(word[i] == root[i % r] for i in range(n))


def intersect_power_dict(a: PowerStr, b: StrDict) -> Answer:
    """``a`` is a +-power; first dictionary word equal to T^k, k >= 1."""
    algo = "power_dict"
    for w in b.words:
        if is_power_of(w, a.word):
            return found(w, algo)
    return empty(algo)


def have_common_divisor(t1, t2) -> bool:
    """T1 and T2 are powers of one word iff T1·T2 == T2·T1."""
    return tuple(t1) + tuple(t2) == tuple(t2) + tuple(t1)


def intersect_power_power(a: PowerStr, b: PowerStr) -> Answer:
    """Both +-powers.  When nonempty the intersection is (T1^(L/|T1|))+ with L = lcm."""
    algo = "power_power"
    t1, t2 = a.word, b.word
    if not have_common_divisor(t1, t2):
        return empty(algo)
    lcm = len(t1) * len(t2) // gcd(len(t1), len(t2))
    w = t1 * (lcm // len(t1))
    return found(w, algo, PowerStr(w, "plus"))


# --- *∘ against ∘|, ∘+, |∘, +∘, *∘ ---------------------------------------------

_PLUS_ROUTES = {
    PosSets: lambda p, o: intersect_possets_power(o, p),
    RunSeq: lambda p, o: intersect_runseq_power(o, p),
    StrDict: lambda p, o: intersect_power_dict(p, o),
    PowerStr: lambda p, o: intersect_power_power(p, o),
}


def star_reduce_forms(a: PowerStr, b: CanonicalForm) -> Answer:
    if b.nullable:
        return found((), "star_reduce:epsilon")
    route = _PLUS_ROUTES.get(type(b))
    if route is None:
        raise ValueError(f"no star reduction against {type(b).__name__}")
    ans = route(PowerStr(a.word, "plus"), b)
    return Answer(ans.nonempty, ans.witness, "star_reduce:" + ans.algo, ans.form)


def intersect_star_reduce(a, b) -> Answer:
    """``a`` of type *∘; ``b`` of type ∘|, ∘+, |∘, +∘ or *∘ (regexps or forms)."""
    fa = a if isinstance(a, PowerStr) else coercible_types(a)["*∘"]
    if isinstance(b, (PosSets, RunSeq, StrDict, PowerStr)):
        return star_reduce_forms(fa, b)
    forms = coercible_types(b)
    for t in ("*∘", "∘|", "∘+", "|∘", "+∘"):
        if t in forms:
            return star_reduce_forms(fa, forms[t])
    raise ValueError("right operand has no type star reduction handles")


# --- Σ_A^+ / Σ_A^* against anything ---------------------------------------------


def closure_vs_form(a: AlphaClosure, b: CanonicalForm) -> Answer:
    """Does L(b) contain a word over a.letters (nonempty unless a allows ε)?

    Witnesses are shortest words; ties go to the smallest letters.
    """
    algo = "closure"
    sigma = set(a.letters)
    if a.epsilon and b.nullable:
        return found((), algo)
    if isinstance(b, AlphaClosure):
        common = sigma.intersection(b.letters)
        return found((min(common),), algo) if common else empty(algo)
    if isinstance(b, RunAlt):
        common = [c for c, _ in b.entries if c in sigma]
        return found((common[0],), algo) if common else empty(algo)
    if isinstance(b, PosSets):
        w = []
        for s in b.sets:
            ok = [c for c in s if c in sigma]
            if not ok:
                return empty(algo)
            w.append(ok[0])
        return found(w, algo)
    if isinstance(b, RunSeq):
        if all(r.letter in sigma for r in b.runs):
            return found([r.letter for r in b.runs for _ in range(r.length)], algo)
        return empty(algo)
    if isinstance(b, PowerStr):
        return found(b.word, algo) if all(c in sigma for c in b.word) else empty(algo)
    if isinstance(b, StrDict):
        for w in b.words:
            if all(c in sigma for c in w):
                return found(w, algo)
        return empty(algo)
    if isinstance(b, StarSeq):
        bare = [c for c, starred in b.items if not starred]
        if not all(c in sigma for c in bare):
            return empty(algo)
        if bare:
            return found(bare, algo)
        # only starred letters: ε was ruled out above, so one letter is needed
        usable = [c for c, _ in b.items if c in sigma]
        return found((min(usable),), algo) if usable else empty(algo)
    raise TypeError(f"unsupported form {type(b).__name__}")


def intersect_closure_any(a: AlphaClosure, b) -> Answer:
    return closure_vs_form(a, _some_form(b))


# --- union of single-letter runs against anything --------------------------------


def _unary_lengths(b: CanonicalForm):
    """Yield (letter, min_length, unbounded) describing {n >= 1 : c^n in L(b)}.

    For PowerStr the lengths are multiples of the first yielded length; callers
    only need the minimum and whether longer runs exist, except for closed
    entries which need exactly length 1.
    """
    if isinstance(b, AlphaClosure):
        for c in b.letters:
            yield c, 1, True
    elif isinstance(b, RunAlt):
        for c, is_open in b.entries:
            yield c, 1, is_open
    elif isinstance(b, StrDict):
        for w in b.words:
            if all(x == w[0] for x in w):
                yield w[0], len(w), False
    elif isinstance(b, PosSets):
        common = set(b.sets[0])
        for s in b.sets[1:]:
            common.intersection_update(s)
            if not common:
                return
        for c in sorted(common):
            yield c, len(b.sets), False
    elif isinstance(b, RunSeq):
        if len(b.runs) == 1:
            r = b.runs[0]
            yield r.letter, r.length, r.open
    elif isinstance(b, PowerStr):
        runs = run_decompose(b.word)
        if len(runs) == 1:
            yield runs[0][0], runs[0][1], True
    elif isinstance(b, StarSeq):
        bare = [c for c, s in b.items if not s]
        distinct = set(bare)
        if len(distinct) > 1:
            return
        if distinct:
            (c,) = distinct
            yield c, len(bare), any(s and x == c for x, s in b.items)
        else:
            for c in sorted({x for x, _ in b.items}):
                yield c, 1, True
    else:
        raise TypeError(f"unsupported form {type(b).__name__}")


def runalt_vs_form(a: RunAlt, b: CanonicalForm) -> Answer:
    """L(a) is a union of runs c (closed entry) or c^n, n >= 1 (open entry), maybe with ε."""
    algo = "runalt"
    if a.epsilon and b.nullable:
        return found((), algo)
    entries = dict(a.entries)
    best = None
    for c, n, _ in _unary_lengths(b):
        if c not in entries:
            continue
        if not entries[c] and n != 1:
            continue
        cand = (n, c)
        if best is None or cand < best:
            best = cand
    if best is None:
        return empty(algo)
    n, c = best
    return found((c,) * n, algo)


def intersect_runalt_any(a: RunAlt, b) -> Answer:
    return runalt_vs_form(a, _some_form(b))


_FORM_PREFERENCE = ("+|", "*|", "|+", "|*", "∘|", "∘+", "|∘", "+∘", "*∘", "∘*")


def _some_form(b) -> CanonicalForm:
    if not isinstance(b, (Leaf, Concat, Alt, Plus, Star)):
        return b
    forms = coercible_types(b)
    for t in _FORM_PREFERENCE:
        if t in forms:
            return forms[t]
    raise ValueError("operand is not a homogeneous regexp of depth <= 2")
