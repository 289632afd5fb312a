"""Orthogonal Vectors instances and their reduction to (∘+, ∘|) intersection.

The reduction builds a ∘+ regexp from the A-vectors and a ∘| regexp from the
B-vectors over the alphabet {x, y, $}; the two languages intersect exactly
when some α ∈ A and β ∈ B are orthogonal.  It needs instances in a normal
form (see :func:`normalize_instance`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .automata import DEFAULT_PAIR_BUDGET, member, product_nonempty
from .answer import BudgetExceeded
from .syntax import Alt, Leaf, Plus, Regex, concat, render, string_regex

X, Y, DOLLAR = ord("x"), ord("y"), ord("$")

Row = tuple[int, ...]


class OvFormatError(ValueError):
    pass


class AssumptionError(AssertionError):
    """A normalized instance violates one of the structural assumptions (internal bug)."""


@dataclass(frozen=True)
class OvInstance:
    a: tuple[Row, ...]
    b: tuple[Row, ...]
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if not self.a or not self.b:
            raise ValueError("both vector sets must be nonempty")
        for row in self.a + self.b:
            if len(row) != self.d or any(v not in (0, 1) for v in row):
                raise ValueError(f"bad row {row!r} for d={self.d}")

    @property
    def M(self) -> int:
        return len(self.a)

    @property
    def N(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class NormalizedOvInstance(OvInstance):
    # index into the original A/B for each row, None for sentinel rows
    a_origin: tuple[Optional[int], ...] = ()
    b_origin: tuple[Optional[int], ...] = ()
    sentinel_coordinate: int = -1  # -1 when the input already had the required shape


@dataclass(frozen=True)
class TriviallyDecided:
    orthogonal: bool
    pair: Optional[tuple[int, int]] = None


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x & y for x, y in zip(u, v))


def ov_bruteforce(inst: OvInstance) -> Optional[tuple[int, int]]:
    """Lexicographically first (i, j), 0-based, with α_i · β_j = 0."""
    for i, alpha in enumerate(inst.a):
        for j, beta in enumerate(inst.b):
            if not dot(alpha, beta):
                return i, j
    return None


# --- file format -----------------------------------------------------------


def parse_ov(text: str) -> OvInstance:
    """``M N d`` header, then M rows for A and N rows for B; ``#`` lines are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise OvFormatError("empty OV file")
    try:
        m, n, d = (int(x) for x in lines[0].split())
    except ValueError:
        raise OvFormatError(f"bad header line {lines[0]!r}; expected 'M N d'") from None
    rows = lines[1:]
    if len(rows) != m + n:
        raise OvFormatError(f"expected {m + n} rows, found {len(rows)}")
    parsed = []
    for r in rows:
        if len(r) != d or set(r) - {"0", "1"}:
            raise OvFormatError(f"bad row {r!r}; expected {d} characters of 0/1")
        parsed.append(tuple(int(ch) for ch in r))
    try:
        return OvInstance(tuple(parsed[:m]), tuple(parsed[m:]), d)
    except ValueError as e:
        raise OvFormatError(str(e)) from None


def format_ov(inst: OvInstance) -> str:
    out = [f"{inst.M} {inst.N} {inst.d}"]
    out += ["".join(map(str, r)) for r in inst.a]
    out += ["".join(map(str, r)) for r in inst.b]
    return "\n".join(out) + "\n"


def random_instance(m: int, n: int, d: int, seed: int, plant: bool = False, density: float = 0.5) -> OvInstance:
    rng = random.Random(seed)
    a = [tuple(int(rng.random() < density) for _ in range(d)) for _ in range(m)]
    b = [tuple(int(rng.random() < density) for _ in range(d)) for _ in range(n)]
    if plant:
        i, j = rng.randrange(m), rng.randrange(n)
        b[j] = tuple(0 if a[i][k] else b[j][k] for k in range(d))
    return OvInstance(tuple(a), tuple(b), d)


# --- normalization -----------------------------------------------------------


def normalize_instance(inst: OvInstance) -> Union[TriviallyDecided, NormalizedOvInstance]:
    """Rewrite ``inst`` into an instance with the same answer satisfying:

    1. M odd, N ≡ 0 (mod 4), M < N;
    2. d odd;
    3. A-rows start and end with 1, B-rows with 0;
    4. no row is 1^d, 0^d, 10^{d-2}1 or 01^{d-2}0;
    5. the first and last A-rows are orthogonal to no B-row;
    6. if any orthogonal pair exists, one exists with indices of equal parity.

    Zero rows decide the instance outright; all-ones rows are dropped.  Inputs
    that already satisfy 2-4 keep their coordinates unchanged.
    """
    zero_a = next((i for i, r in enumerate(inst.a) if not any(r)), None)
    if zero_a is not None:
        return TriviallyDecided(True, (zero_a, 0))
    zero_b = next((j for j, r in enumerate(inst.b) if not any(r)), None)
    if zero_b is not None:
        return TriviallyDecided(True, (0, zero_b))
    a = [(i, r) for i, r in enumerate(inst.a) if not all(r)]
    b = [(j, r) for j, r in enumerate(inst.b) if not all(r)]
    if not a or not b:
        return TriviallyDecided(False)

    shaped = _already_shaped(a, b, inst.d)
    if shaped is not None:
        return _finish(a, b, inst.d, shaped, -1)

    # sentinel coordinate: 0 in every α, 1 in every β; dot products unchanged
    a = [(i, r + (0,)) for i, r in a]
    b = [(j, r + (1,)) for j, r in b]
    d = inst.d + 1
    if d % 2 == 0:
        a = [(i, r + (0,)) for i, r in a]
        b = [(j, r + (0,)) for j, r in b]
        d += 1
    a = [(i, (1,) + r + (1,)) for i, r in a]
    b = [(j, (0,) + r + (0,)) for j, r in b]
    sentinel_coord = inst.d + 1  # 0-based, after the leading pad
    d += 2

    sentinel = tuple(1 if k in (0, sentinel_coord, d - 1) else 0 for k in range(d))
    return _finish(a, b, d, sentinel, sentinel_coord)


def _already_shaped(a, b, d) -> Optional[Row]:
    """A sentinel A-row if the rows already have odd d >= 5, the right boundary bits
    and no banned vectors, so no coordinate needs to be added; else None.

    The sentinel is all ones except one interior 0 at a position k where no β
    is the unit vector e_k, so it meets every β.
    """
    if d < 5 or d % 2 == 0:
        return None
    if any(r[0] != 1 or r[-1] != 1 for _, r in a) or any(r[0] != 0 or r[-1] != 0 for _, r in b):
        return None
    banned = {(1,) + (0,) * (d - 2) + (1,), (0,) + (1,) * (d - 2) + (0,)}
    if any(r in banned for _, r in a + b):
        return None
    units = {r.index(1) for _, r in b if sum(r) == 1}
    for k in range(1, d - 1):
        if k not in units:
            return tuple(0 if i == k else 1 for i in range(d))
    return None


def _finish(a, b, d, sentinel, sentinel_coord) -> NormalizedOvInstance:
    a_rows = [(None, sentinel)] + a + [(None, sentinel)]
    if len(a_rows) % 2 == 0:
        a_rows.append((None, sentinel))
    # adjacent copies give every β an index of each parity
    b_rows = [x for pair in b for x in (pair, pair)]
    while len(b_rows) % 4 or len(b_rows) <= len(a_rows):
        b_rows.extend([b[0], b[0]])

    norm = NormalizedOvInstance(
        tuple(r for _, r in a_rows),
        tuple(r for _, r in b_rows),
        d,
        tuple(i for i, _ in a_rows),
        tuple(j for j, _ in b_rows),
        sentinel_coord,
    )
    check_assumptions(norm)
    return norm


def check_assumptions(norm: OvInstance) -> None:
    """Raise AssumptionError unless conditions 1-5 of normalize_instance hold (6 holds by construction)."""
    M, N, d = norm.M, norm.N, norm.d

    def need(cond, what):
        if not cond:
            raise AssumptionError(what)

    need(M % 2 == 1 and N % 4 == 0 and M < N, f"counts M={M}, N={N}")
    need(d % 2 == 1 and d >= 5, f"dimension d={d}")
    need(all(r[0] == 1 and r[-1] == 1 for r in norm.a), "A-rows must start and end with 1")
    need(all(r[0] == 0 and r[-1] == 0 for r in norm.b), "B-rows must start and end with 0")
    banned = {
        (1,) * d,
        (0,) * d,
        (1,) + (0,) * (d - 2) + (1,),
        (0,) + (1,) * (d - 2) + (0,),
    }
    need(not banned.intersection(norm.a + norm.b), "trivial vectors present")
    need(all(dot(norm.a[0], beta) and dot(norm.a[-1], beta) for beta in norm.b),
         "first/last A-row orthogonal to some B-row")


# --- gadgets ------------------------------------------------------------------
# A-side fragments are tuples of Leaf / Plus(Leaf) items; B-side fragments are
# tuples of Leaf / Alt items.  Coordinates are 1-based as in the construction.


def _letter(k: int) -> int:
    return Y if k % 2 == 1 else X


def coord_gadgets(v: int, k: int) -> tuple[tuple[Regex, ...], tuple[int, ...]]:
    """(C_A(v, k), C_B(v, k)): y for odd k, x for even k; 1 ↦ ccc+ / c, 0 ↦ c+ / ccc."""
    if k < 1:
        raise ValueError("coordinates are 1-based")
    c = _letter(k)
    if v:
        return (Leaf(c), Leaf(c), Plus(Leaf(c))), (c,)
    return (Plus(Leaf(c)),), (c, c, c)


def vector_gadget_a(alpha: Sequence[int]) -> tuple[Regex, ...]:
    if len(alpha) % 2 == 0 or alpha[0] != 1 or alpha[-1] != 1:
        raise ValueError("A-vector must have odd length and start and end with 1")
    out: list[Regex] = []
    for k, v in enumerate(alpha, 1):
        out.extend(coord_gadgets(v, k)[0])
    return tuple(out)


def vector_gadget_b(beta: Sequence[int], j: int) -> tuple[int, ...]:
    """b_j as a word; even j is wrapped in yyy ... yyy."""
    if len(beta) % 2 == 0 or beta[0] != 0 or beta[-1] != 0:
        raise ValueError("B-vector must have odd length and start and end with 0")
    out: list[int] = []
    for k, v in enumerate(beta, 1):
        out.extend(coord_gadgets(v, k)[1])
    if j % 2 == 0:
        out = [Y] * 3 + out + [Y] * 3
    return tuple(out)


def _word_items(word) -> tuple[Regex, ...]:
    return tuple(Leaf(c) for c in word)


_XY = Alt((Leaf(X), Leaf(Y)))
_Y_OR_DOLLAR = Alt((Leaf(Y), Leaf(DOLLAR)))
_YP, _XP = Plus(Leaf(Y)), Plus(Leaf(X))


@dataclass(frozen=True)
class GadgetSet:
    d: int
    a0: tuple
    a_even: tuple
    b0: tuple
    b_even: tuple
    b_odd: tuple
    b0_d: tuple = field(init=False)
    b_even_d: tuple = field(init=False)
    b_odd_d: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "b0_d", self.b0 + (_Y_OR_DOLLAR,))
        object.__setattr__(self, "b_even_d", self.b_even + (_Y_OR_DOLLAR,))
        object.__setattr__(self, "b_odd_d", self.b_odd + (_Y_OR_DOLLAR,))


def special_gadgets(d: int) -> GadgetSet:
    if d % 2 == 0 or d < 5:
        raise ValueError("gadgets need an odd dimension d >= 5")
    half = d // 2
    y3, y6 = (Leaf(Y),) * 3, (Leaf(Y),) * 6
    a0 = (_YP, _XP) * half + (_YP,)
    a_even = y6 + (_XP,) + (_YP, _XP) * (half - 1) + y6
    b0 = (y3 + (_XY,) * 3) * half + y3
    b_even = y6 + (Leaf(X),) + (Leaf(Y), Leaf(X)) * (half - 1) + y6
    b_odd = y3 + (Leaf(X),) + (Leaf(Y), Leaf(X)) * (half - 1) + y3
    return GadgetSet(d, a0, a_even, b0, b_even, b_odd)


def build_reduction(norm: NormalizedOvInstance) -> tuple[Regex, Regex]:
    """The ∘+ regexp for A and the ∘| regexp for B."""
    check_assumptions(norm)
    M, N = norm.M, norm.N
    if (2 * M + N - 2) % 4:
        raise AssumptionError("2M + N - 2 must be divisible by 4")
    g = special_gadgets(norm.d)
    dollar = (Leaf(DOLLAR),)
    reps = 2 * M + N

    a_perp: list = list(vector_gadget_a(norm.a[0]))
    for alpha in norm.a[1:]:
        a_perp += dollar + g.a0 + dollar + vector_gadget_a(alpha)
    a_pre = g.a0 * reps + (g.a0 + dollar) * (N - 1) + g.a_even + dollar
    a_suf = dollar + g.a_even + (dollar + g.a0) * (N - 1) + g.a0 * reps

    b_perp: list = []
    for j, beta in enumerate(norm.b, 1):
        b_perp += g.b0_d + _word_items(vector_gadget_b(beta, j)) + dollar
    block = g.b0_d + g.b_odd_d + g.b0_d + g.b_even_d
    b_pre = g.b0 * reps + block * ((reps - 2) // 4)
    b_suf = block * ((reps - 2) // 4) + g.b0 * reps

    return concat(a_pre + tuple(a_perp) + a_suf), concat(b_pre + tuple(b_perp) + b_suf)


def reduction_parts(norm: NormalizedOvInstance) -> dict[str, Regex]:
    """The central fragments A⊥ and B⊥ on their own (for audits)."""
    g = special_gadgets(norm.d)
    dollar = (Leaf(DOLLAR),)
    a_perp: list = list(vector_gadget_a(norm.a[0]))
    for alpha in norm.a[1:]:
        a_perp += dollar + g.a0 + dollar + vector_gadget_a(alpha)
    b_perp: list = []
    for j, beta in enumerate(norm.b, 1):
        b_perp += g.b0_d + _word_items(vector_gadget_b(beta, j)) + dollar
    return {"A_perp": concat(a_perp), "B_perp": concat(b_perp)}


# --- verification -----------------------------------------------------------------


@dataclass
class ReductionReport:
    status: str  # PASS | FAIL | INCONCLUSIVE
    expected: bool  # brute force found an orthogonal pair
    got: Optional[bool]  # reduction intersection nonempty
    pair: Optional[tuple[int, int]] = None
    witness: Optional[tuple[int, ...]] = None
    size_a: int = 0
    size_b: int = 0
    trivial: bool = False
    note: str = ""

    def __str__(self) -> str:
        parts = [f"status={self.status}", f"orthogonal={str(self.expected).lower()}"]
        if self.got is not None:
            parts.append(f"intersection={'NONEMPTY' if self.got else 'EMPTY'}")
        if self.pair is not None:
            parts.append(f"pair={self.pair[0] + 1},{self.pair[1] + 1}")
        if self.trivial:
            parts.append("trivial=true")
        else:
            parts.append(f"size_a={self.size_a} size_b={self.size_b}")
        if self.note:
            parts.append(f"note={self.note}")
        return " ".join(parts)


def verify_reduction(inst: OvInstance, budget: int = DEFAULT_PAIR_BUDGET) -> ReductionReport:
    """Run the reduction through the product automaton and compare with brute force."""
    from .syntax import size

    pair = ov_bruteforce(inst)
    expected = pair is not None
    norm = normalize_instance(inst)
    if isinstance(norm, TriviallyDecided):
        status = "PASS" if norm.orthogonal == expected else "FAIL"
        return ReductionReport(status, expected, norm.orthogonal, pair, trivial=True)
    ra, rb = build_reduction(norm)
    sa, sb = size(ra), size(rb)
    try:
        ans = product_nonempty(ra, rb, budget)
    except BudgetExceeded as e:
        return ReductionReport("INCONCLUSIVE", expected, None, pair, None, sa, sb, note=str(e).replace(" ", "_"))
    if ans.nonempty and not (member(ans.witness, ra) and member(ans.witness, rb)):
        return ReductionReport("FAIL", expected, True, pair, ans.witness, sa, sb, note="invalid_witness")
    status = "PASS" if ans.nonempty == expected else "FAIL"
    return ReductionReport(status, expected, ans.nonempty, pair, ans.witness, sa, sb)


# --- gadget relations -------------------------------------------------------------


@dataclass
class RelationCheck:
    item: int
    label: str
    expected: bool
    got: bool

    @property
    def ok(self) -> bool:
        return self.expected == self.got


@dataclass
class RelationReport:
    checks: list[RelationCheck]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.ok]


def gadget_relation_suite(norm: NormalizedOvInstance, k_max: int = 2) -> RelationReport:
    """Check the pairwise gadget relations for k, h in 0..k_max.

    Items: (1) a0 meets b0^k b_j; (2) every a_i meets b0^k, k >= 1; (3) a_i meets
    b0^k b_j iff α_i ⊥ β_j; (4) a0 meets b0^k b_even b0^h and b0^k b_odd b0^h,
    no a_i (i >= 1) does; (5) a_even meets b_even but not b0 or b_odd; (6) a_even
    meets b_p iff p is even; (7) no a_i (including a0) spans two vector gadgets,
    e.g. a0 misses b_even b0 b_odd.
    """
    g = special_gadgets(norm.d)
    a_gadgets = [g.a0] + [vector_gadget_a(alpha) for alpha in norm.a]  # index 0 is a0
    b_words = [vector_gadget_b(beta, j) for j, beta in enumerate(norm.b, 1)]
    checks: list[RelationCheck] = []

    def meets(a_items, b_items) -> bool:
        return product_nonempty(concat(a_items), concat(b_items)).nonempty

    def add(item, label, expected, a_items, b_items):
        checks.append(RelationCheck(item, label, expected, meets(a_items, b_items)))

    ks = range(k_max + 1)
    for k in ks:
        for j, bj in enumerate(b_words, 1):
            add(1, f"a0 ⊓ b0^{k} b{j}", True, g.a0, g.b0 * k + _word_items(bj))
    for i, ai in enumerate(a_gadgets):
        for k in ks:
            if k >= 1:
                add(2, f"a{i} ⊓ b0^{k}", True, ai, g.b0 * k)
    for i in range(1, len(a_gadgets)):
        for j, bj in enumerate(b_words, 1):
            orth = dot(norm.a[i - 1], norm.b[j - 1]) == 0
            for k in ks:
                add(3, f"a{i} ⊓ b0^{k} b{j}", orth, a_gadgets[i], g.b0 * k + _word_items(bj))
    for k in ks:
        for h in ks:
            for name, mid in (("b_even", g.b_even), ("b_odd", g.b_odd)):
                frag = g.b0 * k + mid + g.b0 * h
                add(4, f"a0 ⊓ b0^{k} {name} b0^{h}", True, g.a0, frag)
                for i in range(1, len(a_gadgets)):
                    add(4, f"a{i} ⊓ b0^{k} {name} b0^{h}", False, a_gadgets[i], frag)
    add(5, "a_even ⊓ b_even", True, g.a_even, g.b_even)
    add(5, "a_even ⊓ b0", False, g.a_even, g.b0)
    add(5, "a_even ⊓ b_odd", False, g.a_even, g.b_odd)
    for p, bp in enumerate(b_words, 1):
        add(6, f"a_even ⊓ b{p}", p % 2 == 0, g.a_even, _word_items(bp))
    for i, ai in enumerate(a_gadgets):
        add(7, f"a{i} ⊓ b_even b0 b_odd", False, ai, g.b_even + g.b0 + g.b_odd)
        for k in ks:
            for j in (1, 2):
                if j + 1 <= len(b_words):
                    frag = _word_items(b_words[j - 1]) + g.b0 * k + _word_items(b_words[j])
                    add(7, f"a{i} ⊓ b{j} b0^{k} b{j + 1}", False, ai, frag)
    return RelationReport(checks)


def dollar_count_bounds(norm: NormalizedOvInstance) -> dict[str, int]:
    """Fixed and optional '$' positions in B, and the exact '$' count of every word of A."""
    M, N = norm.M, norm.N
    return {
        "a_exact": 2 * M + 2 * N - 2,
        "a_perp_exact": 2 * M - 2,
        "b_min": N,
        "b_max": 4 * N + 4 * M - 4,
    }


def dollar_audit(ra: Regex, rb: Regex) -> dict[str, int]:
    """Count '$' in the built regexps: exact in A, fixed and optional positions in B."""
    a_exact = sum(1 for c in ra.children if isinstance(c, Leaf) and c.letter == DOLLAR)
    if any(isinstance(c, Plus) and c.child.letter == DOLLAR for c in ra.children):
        raise AssumptionError("A must not repeat '$'")
    b_fixed = sum(1 for c in rb.children if isinstance(c, Leaf) and c.letter == DOLLAR)
    b_optional = sum(
        1 for c in rb.children if isinstance(c, Alt) and any(x.letter == DOLLAR for x in c.children)
    )
    return {"a_exact": a_exact, "b_min": b_fixed, "b_max": b_fixed + b_optional}
