"""Random instance generators, the oracle self-test and the scaling harness."""

from __future__ import annotations

import csv
import gc
import logging
import math
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .answer import Answer
from .automata import member, product_nonempty
from .canonical import DEPTH1_TYPES, DEPTH2_TYPES, TypeDescriptor, classify
from .dispatch import dispatch, route_for
from .ov import OvInstance, TriviallyDecided, build_reduction, normalize_instance, ov_bruteforce
from .syntax import Alt, Concat, Leaf, Plus, Regex, Star, alt, concat, render, size, string_regex

log = logging.getLogger(__name__)

ALL_TYPES = ("",) + DEPTH1_TYPES + DEPTH2_TYPES

# smallest leaf count for which each type is realizable
MIN_SIZE = {
    "": 1, "∘": 2, "|": 2, "+": 1, "*": 1,
    "∘|": 3, "∘+": 2, "∘*": 2, "|∘": 3, "|+": 2, "|*": 2,
    "+∘": 2, "*∘": 2, "+|": 2, "*|": 2, "+*": 1, "*+": 1,
}
# types whose shape has a fixed leaf count
FIXED_SIZE = {"": 1, "+": 1, "*": 1, "+*": 1, "*+": 1}


def alphabet(k: int) -> list[int]:
    if not 1 <= k <= 26:
        raise ValueError("alphabet size must be in 1..26")
    return [ord("a") + i for i in range(k)]


def _type_name(t) -> str:
    return t.name if isinstance(t, TypeDescriptor) else t


def _split(total: int, rng: random.Random, lo: int, hi: int) -> list[int]:
    """Random parts in [lo, hi] summing to ``total`` (total >= lo)."""
    parts = []
    while total > 0:
        k = rng.randint(lo, min(hi, total))
        if 0 < total - k < lo:
            k = total  # absorb the remainder so every part is >= lo
            if k > hi and parts:
                parts[-1] += k - lo
                k = lo
        parts.append(k)
        total -= k
    return parts


def gen_random_regex(t, size: int, alphabet_size: int, seed) -> Regex:
    """A homogeneous regexp of type ``t`` with ``size`` leaves.

    Types with a fixed shape (ε-free depth 0, +, *, +*, *+) ignore ``size``
    beyond checking it is >= 1.  ``seed`` may be an int or a Random.
    """
    name = _type_name(t)
    if name not in MIN_SIZE:
        raise ValueError(f"unknown type {name!r}")
    if size < MIN_SIZE[name]:
        raise ValueError(f"type {name or '-'} needs at least {MIN_SIZE[name]} leaves, got {size}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    letters = alphabet(alphabet_size)

    def leaf():
        return Leaf(rng.choice(letters))

    def letter_set(k):
        if k <= len(letters):
            return Alt(tuple(Leaf(c) for c in sorted(rng.sample(letters, k))))
        return Alt(tuple(leaf() for _ in range(k)))

    if name == "":
        return leaf()
    if name == "∘":
        return Concat(tuple(leaf() for _ in range(size)))
    if name == "|":
        return letter_set(size)
    if name in ("+", "*", "+*", "*+"):
        inner = leaf()
        for op in reversed(name):
            inner = Plus(inner) if op == "+" else Star(inner)
        return inner
    if name == "∘|":
        parts = _split(size, rng, 1, min(3, max(2, alphabet_size)))
        if len(parts) < 2 or all(k == 1 for k in parts):
            parts = [2] + [1] * (size - 2)
        return Concat(tuple(leaf() if k == 1 else letter_set(k) for k in parts))
    if name in ("∘+", "∘*", "|+", "|*"):
        wrap = Plus if name[1] == "+" else Star
        kids = [wrap(leaf()) if rng.random() < 0.5 else leaf() for _ in range(size)]
        if not any(isinstance(k, wrap) for k in kids):
            i = rng.randrange(size)
            kids[i] = wrap(kids[i])
        return Concat(tuple(kids)) if name[0] == "∘" else Alt(tuple(kids))
    if name == "|∘":
        parts = _split(size, rng, 1, max(2, min(6, size // 2)))
        if len(parts) < 2 or all(k == 1 for k in parts):
            parts = [2] + [1] * (size - 2)
        return Alt(tuple(leaf() if k == 1 else Concat(tuple(leaf() for _ in range(k))) for k in parts))
    if name in ("+∘", "*∘"):
        body = Concat(tuple(leaf() for _ in range(size)))
        return Plus(body) if name[0] == "+" else Star(body)
    if name in ("+|", "*|"):
        body = letter_set(size)
        return Plus(body) if name[0] == "+" else Star(body)
    raise AssertionError(name)


# --- planting -------------------------------------------------------------------


def sample_word(node: Regex, rng: random.Random, max_repeat: int = 3) -> tuple[int, ...]:
    """A random word of L(node): Plus repeats 1..max_repeat times, Star 0..max_repeat-1."""
    out: list[int] = []

    def walk(n):
        if isinstance(n, Leaf):
            out.append(n.letter)
        elif isinstance(n, Concat):
            for c in n.children:
                walk(c)
        elif isinstance(n, Alt):
            walk(rng.choice(n.children))
        else:
            lo = 1 if isinstance(n, Plus) else 0
            for _ in range(rng.randint(lo, lo + max_repeat - 1)):
                walk(n.child)

    walk(node)
    return tuple(out)


def _runs(word):
    out = []
    for c in word:
        if out and out[-1][0] == c:
            out[-1][1] += 1
        else:
            out.append([c, 1])
    return out


def plant_regex(t, word: Sequence[int], alphabet_size: int, rng: random.Random) -> Optional[Regex]:
    """A regexp of type ``t`` whose language contains ``word``, or None if the shape cannot hold it."""
    name = _type_name(t)
    word = tuple(word)
    letters = alphabet(alphabet_size)
    n = len(word)
    if name == "":
        return Leaf(word[0]) if n == 1 else None
    if name == "∘":
        return Concat(tuple(Leaf(c) for c in word)) if n >= 2 else None
    if name == "|":
        if n != 1:
            return None
        other = rng.choice(letters)
        return Alt((Leaf(word[0]), Leaf(other)))
    if name in ("+", "*", "+*", "*+"):
        if len(set(word)) > 1 or (n == 0 and "*" not in name):
            return None
        c = word[0] if word else rng.choice(letters)
        inner: Regex = Leaf(c)
        for op in reversed(name):
            inner = Plus(inner) if op == "+" else Star(inner)
        return inner
    if name == "∘|":
        if n < 2:
            return None
        kids = []
        for c in word:
            extra = [x for x in letters if x != c and rng.random() < 0.4]
            kids.append(Alt(tuple(Leaf(x) for x in sorted([c] + extra))) if extra else Leaf(c))
        if not any(isinstance(k, Alt) for k in kids):
            i = rng.randrange(n)
            kids[i] = Alt((Leaf(word[i]), Leaf(word[i])))
        return Concat(tuple(kids))
    if name in ("∘+", "∘*"):
        wrap = Plus if name[1] == "+" else Star
        kids: list[Regex] = []
        for c, k in _runs(word):
            opened = rng.random() < 0.6
            fixed = rng.randint(0 if wrap is Star else 1, k) if opened else k
            if wrap is Plus and opened:
                kids += [Leaf(c)] * (fixed - 1) + [Plus(Leaf(c))]
            else:
                kids += [Leaf(c)] * fixed + ([Star(Leaf(c))] if opened else [])
        if wrap is Star and rng.random() < 0.3:
            kids.insert(rng.randrange(len(kids) + 1), Star(Leaf(rng.choice(letters))))
        if not any(isinstance(k, wrap) for k in kids):
            if not kids:
                kids = [Star(Leaf(rng.choice(letters)))]
            else:
                i = rng.randrange(len(kids))
                c = kids[i].letter
                kids[i] = Plus(Leaf(c)) if wrap is Plus else Leaf(c)
                if wrap is Star:
                    kids.insert(i, Star(Leaf(c)))
        if len(kids) < 2:
            if wrap is Star:
                kids.append(Star(Leaf(rng.choice(letters))))
            else:
                return None
        return Concat(tuple(kids))
    if name == "|∘":
        if n == 0:
            return None
        others = [gen_random_regex("∘", rng.randint(2, 4), alphabet_size, rng) for _ in range(rng.randint(1, 2))]
        kids = [string_regex(word)] + others
        rng.shuffle(kids)
        return Alt(tuple(kids))
    if name in ("|+", "|*"):
        if len(set(word)) > 1 or (n == 0 and name == "|+"):
            return None
        wrap = Plus if name == "|+" else Star
        c = word[0] if word else rng.choice(letters)
        kids = [wrap(Leaf(c)) if (n != 1 or rng.random() < 0.7) else Leaf(c)]
        kids.append(wrap(Leaf(rng.choice(letters))))
        if rng.random() < 0.5:
            kids.append(Leaf(rng.choice(letters)))
        rng.shuffle(kids)
        return Alt(tuple(kids))
    if name in ("+∘", "*∘"):
        if n == 0:
            return Star(gen_random_regex("∘", rng.randint(2, 4), alphabet_size, rng)) if name == "*∘" else None
        divisors = [p for p in range(1, n + 1) if n % p == 0 and word[:p] * (n // p) == word]
        p = rng.choice(divisors)
        if p < 2:
            if n < 2:
                return None
            p = n
        body = Concat(tuple(Leaf(c) for c in word[:p]))
        return Plus(body) if name[0] == "+" else Star(body)
    if name in ("+|", "*|"):
        used = sorted(set(word))
        if not used:
            if name == "+|":
                return None
            used = [rng.choice(letters)]
        extra = [x for x in letters if x not in used and rng.random() < 0.3]
        body = sorted(used + extra)
        if len(body) < 2:
            body = body * 2
        body_alt = Alt(tuple(Leaf(c) for c in body))
        return Plus(body_alt) if name[0] == "+" else Star(body_alt)
    raise ValueError(f"unknown type {name!r}")


# --- oracle self-test ------------------------------------------------------------


@dataclass
class SelftestFailure:
    seed: int
    index: int
    a: str
    b: str
    detail: str

    def __str__(self) -> str:
        return f"MISMATCH seed={self.seed} index={self.index} a={self.a} b={self.b} {self.detail}"


@dataclass
class SelftestReport:
    total: int = 0
    agree: int = 0
    nonempty: int = 0
    witnesses_checked: int = 0
    routes: dict = field(default_factory=dict)
    type_pairs: set = field(default_factory=set)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.agree == self.total and not self.failures

    def __str__(self) -> str:
        return f"{self.agree}/{self.total} agree"


def random_pair(rng: random.Random, max_size: int = 40) -> tuple[Regex, Regex, str, str]:
    """Two random homogeneous regexps; about half the time B is planted with a word of A."""
    k = rng.randint(1, 4)
    ta, tb = rng.choice(ALL_TYPES), rng.choice(ALL_TYPES)

    def pick_size(t):
        lo = MIN_SIZE[t]
        hi = max(lo, max_size)
        return min(hi, lo + int(rng.expovariate(1 / 5)))

    a = gen_random_regex(ta, pick_size(ta), k, rng)
    b = None
    if rng.random() < 0.5:
        b = plant_regex(tb, sample_word(a, rng), k, rng)
        if b is not None and size(b) > max_size:
            b = None
    if b is None:
        b = gen_random_regex(tb, pick_size(tb), k, rng)
    if rng.random() < 0.5:
        return b, a, tb, ta
    return a, b, ta, tb


def check_pair(a: Regex, b: Regex) -> tuple[Answer, Answer, Optional[str]]:
    """Run dispatch and the product oracle; return both answers and a problem description or None."""
    got = dispatch(a, b)
    want = product_nonempty(a, b)
    if got.nonempty != want.nonempty:
        return got, want, f"dispatch={got.verdict} ({got.algo}) oracle={want.verdict}"
    for ans in (got, want):
        if ans.nonempty and not (member(ans.witness, a) and member(ans.witness, b)):
            return got, want, f"invalid witness {ans.witness!r} from {ans.algo}"
    return got, want, None


def selftest(seed: int, count: int, max_size: int = 40, stop_after: int = 10) -> SelftestReport:
    rng = random.Random(seed)
    rep = SelftestReport()
    for i in range(count):
        a, b, ta, tb = random_pair(rng, max_size)
        rep.total += 1
        rep.type_pairs.add((classify(a).name, classify(b).name))
        got, want, problem = check_pair(a, b)
        if problem is None:
            rep.agree += 1
            rep.nonempty += got.nonempty
            rep.witnesses_checked += got.nonempty + want.nonempty
            key = got.algo.split(":")[0]
            rep.routes[key] = rep.routes.get(key, 0) + 1
        else:
            rep.failures.append(SelftestFailure(seed, i, render(a), render(b), problem))
            if len(rep.failures) >= stop_after:
                break
    return rep


# --- scaling workloads ----------------------------------------------------------------

LINEAR_ROUTES = (
    "possets_possets", "runseq_runseq", "power_power", "dict_dict", "possets_dict",
    "possets_power", "runseq_dict", "runseq_power", "power_dict",
    "closure", "runalt", "star_reduce",
)
HARD_ROUTE = "baseline_hard"


def _letters_word(rng, n, k):
    letters = alphabet(k)
    return tuple(rng.choice(letters) for _ in range(n))


def gen_route_pair(route: str, n: int, seed: int) -> tuple[Regex, Regex]:
    """A nonempty pair that takes ``route`` and must be read to the end; the larger side has size about ``n``.

    The common word is planted through the whole length of both inputs, so
    every algorithm has to scan everything before it can answer.
    """
    rng = random.Random(seed)
    h = max(4, n // 2)
    if route == "possets_possets":
        w = _letters_word(rng, h, 4)
        return plant_regex("∘|", w, 4, rng), plant_regex("∘|", w, 4, rng)
    if route == "runseq_runseq":
        w = _letters_word(rng, h, 3)
        a = plant_regex("∘+", w, 3, rng)
        return a, plant_regex("∘+", w, 3, rng)
    if route == "power_power":
        # T2 = T1^2 keeps the shortest common word (length lcm(|T1|, |T2|)) linear
        t1 = _letters_word(rng, 7, 2) * max(1, h // 7)
        return Plus(string_regex(t1)), Plus(string_regex(t1 * 2))
    if route == "dict_dict":
        return _dict_pair(rng, h)
    if route == "possets_dict":
        _, b = _dict_pair(rng, h)
        return plant_regex("∘|", _last_word(b), 3, rng), b
    if route == "possets_power":
        root = _letters_word(rng, 11, 3)
        w = root * max(1, h // 11)
        return plant_regex("∘|", w, 3, rng), Plus(string_regex(root))
    if route == "runseq_dict":
        _, b = _dict_pair(rng, h, runs=True)
        return plant_regex("∘+", _last_word(b), 3, rng), b
    if route == "runseq_power":
        root = (ord("a"),) * 2 + (ord("b"),) + (ord("c"),) * 3 + (ord("a"),)
        w = root * max(2, h // len(root))
        return plant_regex("∘+", w, 3, rng), Plus(string_regex(root))
    if route == "power_dict":
        root = _letters_word(rng, 9, 3)
        words = [_letters_word(rng, 2 * 9 + 1, 3) for _ in range(max(1, h // 19 - 1))]
        words.append(root * 2)
        return Plus(string_regex(root)), Alt(tuple(string_regex(w) for w in words))
    if route == "closure":
        w = _letters_word(rng, h, 4)
        return Plus(Alt(tuple(Leaf(c) for c in alphabet(4)))), plant_regex("∘|", w, 4, rng)
    if route == "runalt":
        kids = [Plus(Leaf(c)) if rng.random() < 0.5 else Leaf(c) for c in _letters_word(rng, h, 25)]
        kids.append(Plus(Leaf(ord("z"))))
        # open run last: with z+ first the witness check would carry O(h) live states
        z = Leaf(ord("z"))
        return Alt(tuple(kids)), Concat((z,) * (2 * h - 1) + (Plus(z),))
    if route == "star_reduce":
        root = _letters_word(rng, 5, 3)
        a = plant_regex("∘|", root * max(1, h // 5), 3, rng)
        return Star(string_regex(root)), a
    raise ValueError(f"unknown route {route!r}")


def _last_word(d: Alt) -> tuple[int, ...]:
    return sample_word(d.children[-1], random.Random(0))


def _dict_pair(rng, h, runs=False):
    """Two word sets of total size about ``h`` each sharing a single word."""
    k = 3
    wl = 24
    count = max(2, h // wl)
    shared = _letters_word(rng, wl, k)
    if runs:
        shared = tuple(c for c in shared for _ in range(2))

    def side():
        # the shared word goes last so scans cannot stop early
        words = [_letters_word(rng, len(shared), k) for _ in range(count - 1)] + [shared]
        return Alt(tuple(string_regex(w) for w in words))

    return side(), side()


def hard_instance(n0: int, m0: int, seed: int, plant: bool = False) -> OvInstance:
    """OV instance with d=5; without ``plant`` every row has a 1 in coordinate 1, so no pair exists."""
    rng = random.Random(seed)

    def row():
        return (1,) + tuple(rng.randint(0, 1) for _ in range(3)) + (0,)

    a = [row() for _ in range(m0)]
    b = [row() for _ in range(n0)]
    if plant:
        i, j = rng.randrange(m0), rng.randrange(n0)
        # last coordinate is 0 in every α, so setting it keeps β nonzero and orthogonal
        b[j] = (0,) + tuple(0 if a[i][k] else rng.randint(0, 1) for k in range(1, 4)) + (1,)
    return OvInstance(tuple(a), tuple(b), 5)


def _hard_sizes(n0: int, m0: int) -> tuple[int, int]:
    norm = normalize_instance(hard_instance(n0, m0, 0))
    ra, rb = build_reduction(norm)
    return size(ra), size(rb)


def min_hard_size() -> int:
    sa, sb = _hard_sizes(1, 1)
    return (sa + sb) // 2


def gen_hard_family(n: int, seed: int, plant: bool = False) -> tuple[Regex, Regex, OvInstance]:
    """Reduction outputs (∘+, ∘|) of a d=5 OV instance (d=9 after normalization).

    Picks the vector counts whose mean output size is closest to ``n``.  The B
    side is several times larger than the A side, so only the mean tracks ``n``.
    """
    smallest = min_hard_size()
    if n < smallest * 0.9:
        raise ValueError(f"hard family needs n >= {int(smallest * 0.9)} (got {n})")
    best = None
    n0 = 1
    while True:
        m0 = max(1, n0 // 2)
        sa, sb = _hard_sizes(n0, m0)
        mean = (sa + sb) / 2
        if best is None or abs(mean - n) < abs(best[0] - n):
            best = (mean, n0, m0)
        if mean > n:
            break
        n0 += 1
    _, n0, m0 = best
    inst = hard_instance(n0, m0, seed, plant)
    norm = normalize_instance(inst)
    if isinstance(norm, TriviallyDecided):  # pragma: no cover - rows are never zero or all-ones
        raise AssertionError("hard instance unexpectedly trivial")
    ra, rb = build_reduction(norm)
    return ra, rb, inst


# --- timing ----------------------------------------------------------------------------

CSV_HEADER = ("route", "size_m", "size_n", "trial", "seconds", "verdict", "seed")


@dataclass(frozen=True)
class BenchRecord:
    route: str
    size_m: int
    size_n: int
    seconds: float
    verdict: str
    seed: int
    trial: str = "median"

    def row(self) -> tuple:
        return (self.route, self.size_m, self.size_n, self.trial, f"{self.seconds:.6f}", self.verdict, self.seed)


@dataclass
class ScalingReport:
    route: str
    slope: float
    slope_low: float
    slope_high: float
    points: list[BenchRecord]
    discarded: list[int] = field(default_factory=list)

    def __str__(self) -> str:
        return (f"route={self.route} slope={self.slope:.3f} "
                f"range={self.slope_low:.3f}..{self.slope_high:.3f} points={len(self.points)}")


CLOCK_FLOOR = 1e-5


def fit_slope(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares slope of log y on log x with a ~95% range from the slope's standard error."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    slope, intercept = statistics.linear_regression(lx, ly)
    k = len(lx)
    if k <= 2:
        return slope, slope, slope
    resid = [y - (slope * x + intercept) for x, y in zip(lx, ly)]
    sxx = sum((x - statistics.fmean(lx)) ** 2 for x in lx)
    se = math.sqrt(sum(r * r for r in resid) / (k - 2) / sxx)
    return slope, slope - 2 * se, slope + 2 * se


def _workload(route: str, n: int, seed: int) -> tuple[Regex, Regex, Callable[[Regex, Regex], Answer]]:
    if route == HARD_ROUTE:
        a, b, _ = gen_hard_family(n, seed)
        return a, b, product_nonempty
    if route not in LINEAR_ROUTES:
        raise ValueError(f"unknown route {route!r}")
    a, b = gen_route_pair(route, n, seed)
    return a, b, dispatch


MIN_TRIAL_SECONDS = 0.05


def _loops_for(fn, a, b) -> int:
    t0 = time.perf_counter()
    fn(a, b)
    once = time.perf_counter() - t0
    return max(1, math.ceil(MIN_TRIAL_SECONDS / max(once, 1e-9)))


def run_scaling(route: str, sizes: Sequence[int], trials: int = 5, seed: int = 0,
                csv_path: Optional[str] = None, append: bool = False) -> ScalingReport:
    """Time ``route`` at each size and fit the log-log slope.

    Each point gets a checked warm-up call (route taken, witness in both
    languages).  A trial repeats the call until it lasts MIN_TRIAL_SECONDS and
    records the mean; trials go round-robin over the sizes so a slow spell on
    the machine does not land on a single point.  The point's time is the
    median over ``trials``.  Points below the clock floor are dropped.
    """
    if len(sizes) < 5:
        raise ValueError("need at least 5 sizes")
    if trials < 5:
        raise ValueError("need at least 5 trials")
    work = []
    for n in sizes:
        a, b, fn = _workload(route, n, seed)
        ans = fn(a, b)
        if route != HARD_ROUTE:
            taken = route_for(a, b).case
            if taken != route:
                raise AssertionError(f"workload for {route} took route {taken}")
        if ans.nonempty and not (member(ans.witness, a) and member(ans.witness, b)):
            raise AssertionError(f"unsound witness on {route} at n={n}")
        work.append((n, a, b, fn, ans.verdict, _loops_for(fn, a, b)))

    times: list[list[float]] = [[] for _ in work]
    gc_was = gc.isenabled()
    gc.disable()
    try:
        for _ in range(trials):
            for slot, (_, a, b, fn, _, loops) in enumerate(work):
                t0 = time.perf_counter()
                for _ in range(loops):
                    fn(a, b)
                times[slot].append((time.perf_counter() - t0) / loops)
    finally:
        if gc_was:
            gc.enable()

    points: list[BenchRecord] = []
    dropped: list[int] = []
    for (n, a, b, _, verdict, _), ts in zip(work, times):
        med = statistics.median(ts)
        if med < CLOCK_FLOOR:
            log.warning("route %s size %d below clock resolution; point discarded", route, n)
            dropped.append(n)
            continue
        points.append(BenchRecord(route, size(a), size(b), med, verdict, seed))
    del work
    gc.collect()
    if len(points) < 2:
        raise ValueError(f"too few timed points for {route}")
    slope, lo, hi = fit_slope([p.size_m + p.size_n for p in points], [p.seconds for p in points])
    report = ScalingReport(route, slope, lo, hi, points, dropped)
    if csv_path:
        write_csv(csv_path, points, append=append)
    return report


def write_csv(path: str, records: Sequence[BenchRecord], append: bool = False) -> None:
    import os

    fresh = not append or not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a" if append else "w", newline="") as fh:
        w = csv.writer(fh)
        if fresh:
            w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.row())


def geometric_sizes(lo: int, hi: int, count: int) -> list[int]:
    if count < 2:
        return [lo]
    ratio = (hi / lo) ** (1 / (count - 1))
    return [round(lo * ratio ** i) for i in range(count)]
