"""Homogeneous types, canonical forms and letter classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .syntax import ALT, CAT, PLUS, STAR, Alt, Concat, Leaf, Plus, Regex, Star, alt, concat, plus, star


@dataclass(frozen=True)
class TypeDescriptor:
    homogeneous: bool
    depth: int
    ops: tuple[str, ...]

    @property
    def name(self) -> str:
        return "".join(self.ops)

    def __str__(self) -> str:
        if not self.homogeneous:
            return f"non-homogeneous depth={self.depth}"
        return f"type={self.name or '-'} depth={self.depth}"


def classify(node: Regex) -> TypeDescriptor:
    """Homogeneity, depth and operator sequence of a normalized tree.

    Walks the tree level by level; the tree is homogeneous when every level's
    inner nodes carry one operator.
    """
    level = [node]
    level_ops: list[set] = []
    while True:
        ops = {n.op for n in level if not isinstance(n, Leaf)}
        if not ops:
            break
        level_ops.append(ops)
        nxt = []
        for n in level:
            if isinstance(n, (Concat, Alt)):
                nxt.extend(n.children)
            elif isinstance(n, (Plus, Star)):
                nxt.append(n.child)
        level = nxt
    depth = len(level_ops)
    if all(len(s) == 1 for s in level_ops):
        return TypeDescriptor(True, depth, tuple(next(iter(s)) for s in level_ops))
    return TypeDescriptor(False, depth, _longest_path(node))


def _longest_path(node: Regex) -> tuple[str, ...]:
    if isinstance(node, Leaf):
        return ()
    kids = node.children if isinstance(node, (Concat, Alt)) else (node.child,)
    best: tuple[str, ...] = ()
    for k in kids:
        p = _longest_path(k)
        if len(p) > len(best):
            best = p
    return (node.op,) + best


# --- canonical forms -----------------------------------------------------


class Run(NamedTuple):
    letter: int
    length: int
    open: bool  # True: length or more


def _run_items(r: Run) -> list[Regex]:
    if r.open:
        return [Leaf(r.letter)] * (r.length - 1) + [Plus(Leaf(r.letter))]
    return [Leaf(r.letter)] * r.length


@dataclass(frozen=True)
class PosSets:
    """Concatenation of letter sets (type ∘|)."""

    sets: tuple[tuple[int, ...], ...]

    nullable = False

    def to_regex(self) -> Regex:
        return concat(alt(Leaf(c) for c in s) for s in self.sets)


@dataclass(frozen=True)
class RunSeq:
    """Concatenation of runs c^l or c^{l+}, adjacent letters distinct (type ∘+)."""

    runs: tuple[Run, ...]

    nullable = False

    def to_regex(self) -> Regex:
        items: list[Regex] = []
        for r in self.runs:
            items.extend(_run_items(r))
        return concat(items)


@dataclass(frozen=True)
class StrDict:
    """Finite dictionary of nonempty words (type |∘)."""

    words: tuple[tuple[int, ...], ...]

    nullable = False

    def to_regex(self) -> Regex:
        return alt(concat(Leaf(c) for c in w) for w in self.words)


@dataclass(frozen=True)
class PowerStr:
    """[T]+ or [T]* for a nonempty word T (types +∘, *∘)."""

    word: tuple[int, ...]
    kind: str  # "plus" | "star"

    @property
    def nullable(self) -> bool:
        return self.kind == "star"

    def to_regex(self) -> Regex:
        body = concat(Leaf(c) for c in self.word)
        return plus(body) if self.kind == "plus" else star(body)


@dataclass(frozen=True)
class StarSeq:
    """Concatenation of letters, each optionally starred (type ∘*)."""

    items: tuple[tuple[int, bool], ...]

    @property
    def nullable(self) -> bool:
        return all(s for _, s in self.items)

    def to_regex(self) -> Regex:
        return concat(Star(Leaf(c)) if s else Leaf(c) for c, s in self.items)


@dataclass(frozen=True)
class RunAlt:
    """Union of single-letter runs: c (closed) or c^+ (open), optionally with ε (types |+, |*)."""

    entries: tuple[tuple[int, bool], ...]  # sorted by letter, one entry per letter
    epsilon: bool

    @property
    def nullable(self) -> bool:
        return self.epsilon

    def to_regex(self) -> Regex:
        if self.epsilon and not any(o for _, o in self.entries):
            raise ValueError("RunAlt with ε needs an open entry to be written as |*")
        wrap = star if self.epsilon else plus
        return alt(wrap(Leaf(c)) if o else Leaf(c) for c, o in self.entries)


@dataclass(frozen=True)
class AlphaClosure:
    """Σ_A^+ or Σ_A^* (types +|, *|, and the collapsed +*, *+)."""

    letters: tuple[int, ...]
    epsilon: bool

    @property
    def nullable(self) -> bool:
        return self.epsilon

    def to_regex(self) -> Regex:
        body = alt(Leaf(c) for c in self.letters)
        return star(body) if self.epsilon else plus(body)


CanonicalForm = Union[PosSets, RunSeq, StrDict, PowerStr, StarSeq, RunAlt, AlphaClosure]

DEPTH2_TYPES = ("∘|", "∘+", "∘*", "|∘", "|+", "|*", "+∘", "+|", "+*", "*∘", "*|", "*+")
DEPTH1_TYPES = ("∘", "|", "+", "*")


def run_decompose(word) -> list[tuple[int, int]]:
    """Maximal single-letter runs of ``word`` as (letter, length) pairs."""
    runs: list[list[int]] = []
    for c in word:
        if runs and runs[-1][0] == c:
            runs[-1][1] += 1
        else:
            runs.append([c, 1])
    return [(c, n) for c, n in runs]


def _runseq_from_items(items) -> RunSeq:
    runs: list[list] = []
    for it in items:
        if isinstance(it, Plus):
            c, is_open = it.child.letter, True
        else:
            c, is_open = it.letter, False
        if runs and runs[-1][0] == c:
            runs[-1][1] += 1
            runs[-1][2] = runs[-1][2] or is_open
        else:
            runs.append([c, 1, is_open])
    return RunSeq(tuple(Run(c, n, o) for c, n, o in runs))


def _sorted_set(letters) -> tuple[int, ...]:
    return tuple(sorted(set(letters)))


def _letter_forms(c: int) -> dict[str, CanonicalForm]:
    return {
        "∘|": PosSets(((c,),)),
        "∘+": RunSeq((Run(c, 1, False),)),
        "∘*": StarSeq(((c, False),)),
        "|∘": StrDict(((c,),)),
        "|+": RunAlt(((c, False),), False),
    }


def _word_forms(word: tuple[int, ...]) -> dict[str, CanonicalForm]:
    return {
        "∘|": PosSets(tuple((c,) for c in word)),
        "∘+": RunSeq(tuple(Run(c, n, False) for c, n in run_decompose(word))),
        "∘*": StarSeq(tuple((c, False) for c in word)),
        "|∘": StrDict((word,)),
    }


def _letter_set_forms(letters: list[int]) -> dict[str, CanonicalForm]:
    s = _sorted_set(letters)
    return {
        "∘|": PosSets((s,)),
        "|∘": StrDict(tuple((c,) for c in letters)),
        "|+": RunAlt(tuple((c, False) for c in s), False),
    }


def _plus_letter_forms(c: int) -> dict[str, CanonicalForm]:
    return {
        "∘+": RunSeq((Run(c, 1, True),)),
        "|+": RunAlt(((c, True),), False),
        "+∘": PowerStr((c,), "plus"),
        "+|": AlphaClosure((c,), False),
    }


def _star_letter_forms(c: int) -> dict[str, CanonicalForm]:
    return {
        "∘*": StarSeq(((c, True),)),
        "|*": RunAlt(((c, True),), True),
        "*∘": PowerStr((c,), "star"),
        "*|": AlphaClosure((c,), True),
    }


def _run_alt(children, unary) -> RunAlt:
    entries: dict[int, bool] = {}
    for ch in children:
        if isinstance(ch, unary):
            entries[ch.child.letter] = True
        else:
            entries.setdefault(ch.letter, False)
    return RunAlt(tuple(sorted(entries.items())), unary is Star)


def coercible_types(node: Regex) -> dict[str, CanonicalForm]:
    """Every depth-2 type (by name) whose canonical form has exactly the language of ``node``.

    Returns an empty dict for non-homogeneous or deeper trees.  Strings, letter
    sets, ``c+`` and ``c*`` coerce to several types; ``(c+)*`` and ``(c*)+``
    collapse to ``c*``.
    """
    td = classify(node)
    if not td.homogeneous or td.depth > 2:
        return {}
    native = _native_forms(node, td.name)
    if len(native) > 1:
        return native
    return {**_degenerate_forms(native), **native}


def _degenerate_forms(native: dict[str, CanonicalForm]) -> dict[str, CanonicalForm]:
    # natives whose language is really a word, a letter, c+ or c*
    (form,) = native.values()
    if isinstance(form, PosSets) and all(len(s) == 1 for s in form.sets):
        word = tuple(s[0] for s in form.sets)
        return _letter_forms(word[0]) if len(word) == 1 else _word_forms(word)
    if isinstance(form, StrDict) and len(set(form.words)) == 1:
        word = form.words[0]
        return _letter_forms(word[0]) if len(word) == 1 else _word_forms(word)
    if isinstance(form, AlphaClosure) and len(form.letters) == 1:
        c = form.letters[0]
        return _star_letter_forms(c) if form.epsilon else _plus_letter_forms(c)
    if isinstance(form, RunAlt) and len(form.entries) == 1:
        c, is_open = form.entries[0]
        if form.epsilon:
            return _star_letter_forms(c)
        return _plus_letter_forms(c) if is_open else _letter_forms(c)
    return {}


def _native_forms(node: Regex, t: str) -> dict[str, CanonicalForm]:
    if t == "":
        return _letter_forms(node.letter)
    if t == "∘":
        return _word_forms(tuple(c.letter for c in node.children))
    if t == "|":
        letters = [c.letter for c in node.children]
        if len(set(letters)) == 1:
            return _letter_forms(letters[0])
        return _letter_set_forms(letters)
    if t == "+":
        return _plus_letter_forms(node.child.letter)
    if t in ("*", "+*", "*+"):
        inner = node.child if t == "*" else node.child.child
        return _star_letter_forms(inner.letter)
    if t == "∘|":
        return {t: PosSets(tuple(
            (ch.letter,) if isinstance(ch, Leaf) else _sorted_set(g.letter for g in ch.children)
            for ch in node.children
        ))}
    if t == "∘+":
        return {t: _runseq_from_items(node.children)}
    if t == "∘*":
        return {t: StarSeq(tuple(
            (ch.child.letter, True) if isinstance(ch, Star) else (ch.letter, False)
            for ch in node.children
        ))}
    if t == "|∘":
        return {t: StrDict(tuple(
            (ch.letter,) if isinstance(ch, Leaf) else tuple(g.letter for g in ch.children)
            for ch in node.children
        ))}
    if t == "|+":
        return {t: _run_alt(node.children, Plus)}
    if t == "|*":
        return {t: _run_alt(node.children, Star)}
    if t in ("+∘", "*∘"):
        word = tuple(g.letter for g in node.child.children)
        return {t: PowerStr(word, "plus" if t[0] == PLUS else "star")}
    if t in ("+|", "*|"):
        return {t: AlphaClosure(_sorted_set(g.letter for g in node.child.children), t[0] == STAR)}
    raise AssertionError(f"unhandled homogeneous type {t!r}")


class NotCoercible(ValueError):
    pass


def extract_canonical(node: Regex, target: str | TypeDescriptor) -> CanonicalForm:
    """Canonical form of ``node`` for the type ``target`` (a name like ``"∘+"``)."""
    name = target.name if isinstance(target, TypeDescriptor) else target
    forms = coercible_types(node)
    if name not in forms:
        raise NotCoercible(f"cannot coerce to type {name!r}; available: {sorted(forms)}")
    return forms[name]


# --- letter classification ------------------------------------------------


@dataclass(frozen=True)
class AlphabetInfo:
    alph: frozenset
    plus_letters: frozenset
    star_letters: frozenset
    bare_letters: frozenset
    nullable: bool


def nullable(node: Regex) -> bool:
    if isinstance(node, Leaf):
        return False
    if isinstance(node, Star):
        return True
    if isinstance(node, Plus):
        return nullable(node.child)
    if isinstance(node, Concat):
        return all(nullable(c) for c in node.children)
    return any(nullable(c) for c in node.children)


def alphabet_info(node: Regex) -> AlphabetInfo:
    alph, plus_l, star_l, bare = set(), set(), set(), set()
    stack = [(node, False, False)]
    while stack:
        n, under_plus, under_star = stack.pop()
        if isinstance(n, Leaf):
            alph.add(n.letter)
            if under_plus:
                plus_l.add(n.letter)
            if under_star:
                star_l.add(n.letter)
            if not (under_plus or under_star):
                bare.add(n.letter)
        elif isinstance(n, (Concat, Alt)):
            stack.extend((c, under_plus, under_star) for c in n.children)
        elif isinstance(n, Plus):
            stack.append((n.child, True, under_star))
        else:
            stack.append((n.child, under_plus, True))
    return AlphabetInfo(frozenset(alph), frozenset(plus_l), frozenset(star_l), frozenset(bare), nullable(node))
