"""Position (Glushkov) automata, membership, product emptiness and bounded enumeration.

This is the quadratic baseline and the oracle the linear routes are checked against.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .answer import Answer, BudgetExceeded, Word, empty, found
from .syntax import Alt, Concat, Leaf, Plus, Regex, Star

DEFAULT_PAIR_BUDGET = 10_000_000


@dataclass(frozen=True, eq=False)
class Nfa:
    """ε-free automaton: state 0 is the start, state ``i >= 1`` is the i-th leaf.

    ``letters[i]`` is the letter read when entering state ``i``; ``follow[i]``
    lists successor states sorted by id.
    """

    letters: tuple[int, ...]
    follow: tuple[tuple[int, ...], ...]
    accepting: frozenset
    _by_letter: dict = field(default_factory=dict, repr=False)

    @property
    def state_count(self) -> int:
        return len(self.letters)

    @property
    def start(self) -> int:
        return 0

    def transitions(self) -> list[tuple[int, int, int]]:
        return [(p, self.letters[q], q) for p, qs in enumerate(self.follow) for q in qs]

    def by_letter(self, state: int) -> dict[int, list[int]]:
        """Successors of ``state`` grouped by letter (sorted by letter, then target)."""
        cached = self._by_letter.get(state)
        if cached is None:
            groups: dict[int, list[int]] = {}
            for q in self.follow[state]:
                groups.setdefault(self.letters[q], []).append(q)
            cached = dict(sorted(groups.items()))
            self._by_letter[state] = cached
        return cached

    def is_deterministic(self) -> bool:
        return all(
            len({self.letters[q] for q in qs}) == len(qs) for qs in self.follow
        )


def glushkov(node: Regex) -> Nfa:
    """Build the position automaton of ``node`` (size(node) + 1 states)."""
    letters: list[int] = [-1]
    follow: list[list[int]] = [[]]

    # returns (nullable, first, last) with positions numbered left to right
    def visit(n) -> tuple[bool, list[int], list[int]]:
        if isinstance(n, Leaf):
            letters.append(n.letter)
            follow.append([])
            p = len(letters) - 1
            return False, [p], [p]
        if isinstance(n, Concat):
            parts = [visit(c) for c in n.children]
            for i, (_, _, last_i) in enumerate(parts[:-1]):
                for j in range(i + 1, len(parts)):
                    nul_j, first_j, _ = parts[j]
                    for p in last_i:
                        follow[p].extend(first_j)
                    if not nul_j:
                        break
            first: list[int] = []
            for nul, f, _ in parts:
                first.extend(f)
                if not nul:
                    break
            last: list[int] = []
            for nul, _, l in reversed(parts):
                last.extend(l)
                if not nul:
                    break
            return all(p[0] for p in parts), first, last
        if isinstance(n, Alt):
            parts = [visit(c) for c in n.children]
            first = [p for part in parts for p in part[1]]
            last = [p for part in parts for p in part[2]]
            return any(part[0] for part in parts), first, last
        nul, first, last = visit(n.child)
        for p in last:
            follow[p].extend(first)
        return nul or isinstance(n, Star), first, last

    nul, first, last = visit(node)
    follow[0] = list(first)
    accepting = set(last)
    if nul:
        accepting.add(0)
    return Nfa(
        tuple(letters),
        tuple(tuple(sorted(set(f))) for f in follow),
        frozenset(accepting),
    )


def _as_nfa(x) -> Nfa:
    return x if isinstance(x, Nfa) else glushkov(x)


def member(word: Sequence[int], node) -> bool:
    """State-set simulation of the position automaton; O(|word| * size)."""
    nfa = _as_nfa(node)
    current = {0}
    letters = nfa.letters
    for c in word:
        nxt = set()
        for s in current:
            for q in nfa.follow[s]:
                if letters[q] == c:
                    nxt.add(q)
        if not nxt:
            return False
        current = nxt
    return not current.isdisjoint(nfa.accepting)


def product_nonempty(a, b, budget: int = DEFAULT_PAIR_BUDGET) -> Answer:
    """BFS over reachable state pairs of the two position automata.

    Returns the shortest, then lexicographically smallest, common word.  Raises
    BudgetExceeded when more than ``budget`` pairs would be visited.
    """
    na, nb = _as_nfa(a), _as_nfa(b)
    width = nb.state_count
    acc_a, acc_b = na.accepting, nb.accepting
    if 0 in acc_a and 0 in acc_b:
        return found((), "baseline")
    parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
    queue = deque([0])
    while queue:
        pair = queue.popleft()
        p, q = divmod(pair, width)
        out_b = nb.by_letter(q)
        if not out_b:
            continue
        for c, targets_a in na.by_letter(p).items():
            targets_b = out_b.get(c)
            if targets_b is None:
                continue
            for p2 in targets_a:
                base = p2 * width
                hit_a = p2 in acc_a
                for q2 in targets_b:
                    nxt = base + q2
                    if nxt in parent:
                        continue
                    parent[nxt] = (pair, c)
                    if hit_a and q2 in acc_b:
                        return found(_unwind(parent, nxt), "baseline")
                    if len(parent) > budget:
                        raise BudgetExceeded(f"product exceeded {budget} state pairs")
                    queue.append(nxt)
    return empty("baseline")


def _unwind(parent: dict, pair: int) -> Word:
    out = []
    while pair:
        pair, c = parent[pair]
        out.append(c)
    return tuple(reversed(out))


def reachable_pairs(a, b, budget: int = DEFAULT_PAIR_BUDGET) -> int:
    """Number of reachable state pairs in the product (full exploration)."""
    na, nb = _as_nfa(a), _as_nfa(b)
    width = nb.state_count
    seen = {0}
    stack = [0]
    while stack:
        p, q = divmod(stack.pop(), width)
        out_b = nb.by_letter(q)
        for c, targets_a in na.by_letter(p).items():
            for q2 in out_b.get(c, ()):
                for p2 in targets_a:
                    nxt = p2 * width + q2
                    if nxt not in seen:
                        seen.add(nxt)
                        if len(seen) > budget:
                            raise BudgetExceeded(f"product exceeded {budget} state pairs")
                        stack.append(nxt)
    return len(seen)


def enumerate_language(node, max_len: int, limit: int = 200_000) -> set[Word]:
    """All words of length <= max_len in the language, by breadth-first extension."""
    nfa = _as_nfa(node)
    alphabet = sorted(set(nfa.letters[1:]))
    out: set[Word] = set()
    frontier: list[tuple[Word, frozenset]] = [((), frozenset({0}))]
    for length in range(max_len + 1):
        nxt = []
        for word, states in frontier:
            if not states.isdisjoint(nfa.accepting):
                out.add(word)
            if length == max_len:
                continue
            for c in alphabet:
                succ = frozenset(q for s in states for q in nfa.follow[s] if nfa.letters[q] == c)
                if succ:
                    nxt.append((word + (c,), succ))
        if len(out) + len(nxt) > limit:
            raise BudgetExceeded(f"enumeration exceeded {limit} words")
        frontier = nxt
    return out


def words_up_to(alphabet: Iterable[int], max_len: int) -> list[Word]:
    """Every word over ``alphabet`` of length <= max_len, shortest first."""
    alphabet = sorted(set(alphabet))
    layer: list[Word] = [()]
    out = [()]
    for _ in range(max_len):
        layer = [w + (c,) for w in layer for c in alphabet]
        out.extend(layer)
    return out
