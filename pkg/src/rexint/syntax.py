"""Regular expression trees over an integer alphabet, plus text parsing and rendering.

Concrete syntax::

    regex  := factor+
    factor := atom ('+' | '*')*
    atom   := letter | '[' regex ('|' regex)* ']' | '(' regex ('|' regex)* ')'
    letter := [A-Za-z0-9] | '$' | '#' digits

Whitespace is ignored.  A printable letter's id is its code point, so ``#97``
and ``a`` denote the same letter.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

PRINTABLE = frozenset(string.ascii_letters + string.digits + "$")

CAT = "∘"
ALT = "|"
PLUS = "+"
STAR = "*"


class RegexSyntaxError(ValueError):
    """Raised on malformed regexp text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    @property
    def line_col(self) -> tuple[int, int]:
        before = self.text[: self.position]
        line = before.count("\n") + 1
        col = self.position - (before.rfind("\n") + 1) + 1
        return line, col


@dataclass(frozen=True, slots=True)
class Leaf:
    letter: int

    op = None


@dataclass(frozen=True, slots=True)
class Concat:
    children: tuple

    op = CAT


@dataclass(frozen=True, slots=True)
class Alt:
    children: tuple

    op = ALT


@dataclass(frozen=True, slots=True)
class Plus:
    child: "Regex"

    op = PLUS


@dataclass(frozen=True, slots=True)
class Star:
    child: "Regex"

    op = STAR


Regex = Union[Leaf, Concat, Alt, Plus, Star]


def letter_of(ch: str) -> int:
    if ch not in PRINTABLE:
        raise ValueError(f"not a printable letter: {ch!r}")
    return ord(ch)


def letter_text(letter: int) -> str:
    if letter < 0:
        raise ValueError("letters are nonnegative integers")
    ch = chr(letter) if letter < 0x110000 else ""
    return ch if ch in PRINTABLE else f"#{letter}"


# Smart constructors keep trees normalized: no single-child Concat/Alt, no
# Concat directly under Concat, no Alt under Alt, no Plus under Plus, no Star
# under Star.


def concat(children: Iterable[Regex]) -> Regex:
    flat: list = []
    for c in children:
        if isinstance(c, Concat):
            flat.extend(c.children)
        else:
            flat.append(c)
    if not flat:
        raise ValueError("empty concatenation")
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def alt(children: Iterable[Regex]) -> Regex:
    flat: list = []
    for c in children:
        if isinstance(c, Alt):
            flat.extend(c.children)
        else:
            flat.append(c)
    if not flat:
        raise ValueError("empty alternation")
    if len(flat) == 1:
        return flat[0]
    return Alt(tuple(flat))


def plus(child: Regex) -> Regex:
    return child if isinstance(child, Plus) else Plus(child)


def star(child: Regex) -> Regex:
    return child if isinstance(child, Star) else Star(child)


def string_regex(word: Sequence[int]) -> Regex:
    return concat(Leaf(c) for c in word)


def normalize(node: Regex) -> Regex:
    """Rebuild ``node`` through the smart constructors."""
    if isinstance(node, Leaf):
        return node
    if isinstance(node, Concat):
        return concat(normalize(c) for c in node.children)
    if isinstance(node, Alt):
        return alt(normalize(c) for c in node.children)
    if isinstance(node, Plus):
        return plus(normalize(node.child))
    return star(normalize(node.child))


def size(node: Regex) -> int:
    """Number of leaves."""
    total = 0
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Leaf):
            total += 1
        elif isinstance(n, (Concat, Alt)):
            stack.extend(n.children)
        else:
            stack.append(n.child)
    return total


def leaves(node: Regex) -> list[int]:
    """Letters of the leaves, left to right."""
    out: list[int] = []
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Leaf):
            out.append(n.letter)
        elif isinstance(n, (Concat, Alt)):
            stack.extend(reversed(n.children))
        else:
            stack.append(n.child)
    return out


# --- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(#\d+)|([A-Za-z0-9$])|([\[\]()|+*])|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, object, int]] = []
        pos = 0
        for m in _TOKEN.finditer(text):
            raw, ch, punct, bad = m.groups()
            start = m.start(m.lastindex)
            if raw is not None:
                self.tokens.append(("letter", int(raw[1:]), start))
            elif ch is not None:
                self.tokens.append(("letter", ord(ch), start))
            elif punct is not None:
                self.tokens.append((punct, None, start))
            else:
                if bad == "#":
                    raise RegexSyntaxError("'#' must be followed by digits", start, text)
                raise RegexSyntaxError(f"unexpected character {bad!r}", start, text)
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)

    def parse(self) -> Regex:
        if not self.tokens:
            raise RegexSyntaxError("empty regular expression", 0, self.text)
        node = self.regex()
        if self.i < len(self.tokens):
            tok = self.peek()
            if tok in ("]", ")"):
                raise RegexSyntaxError(f"unbalanced {tok!r}", self.where(), self.text)
            raise RegexSyntaxError(f"unexpected {tok!r}", self.where(), self.text)
        return node

    def regex(self) -> Regex:
        factors = []
        while self.peek() in ("letter", "[", "("):
            factors.append(self.factor())
        if not factors:
            raise RegexSyntaxError("expected a letter or group", self.where(), self.text)
        return concat(factors)

    def factor(self) -> Regex:
        node = self.atom()
        while self.peek() in ("+", "*"):
            kind = self.tokens[self.i][0]
            self.i += 1
            node = plus(node) if kind == "+" else star(node)
        return node

    def atom(self) -> Regex:
        kind, value, pos = self.tokens[self.i]
        if kind == "letter":
            self.i += 1
            return Leaf(value)
        closer = "]" if kind == "[" else ")"
        self.i += 1
        branches = [self.regex()]
        while self.peek() == "|":
            self.i += 1
            branches.append(self.regex())
        if self.peek() != closer:
            raise RegexSyntaxError(f"unclosed {kind!r}", pos, self.text)
        self.i += 1
        return alt(branches)


def parse(text: str) -> Regex:
    """Parse regexp text into a normalized tree.

    >>> parse("b+bc+c+a") == Concat((Plus(Leaf(98)), Leaf(98), Plus(Leaf(99)), Plus(Leaf(99)), Leaf(97)))
    True
    """
    try:
        return _Parser(text).parse()
    except RecursionError:
        raise RegexSyntaxError("nesting too deep", 0, text) from None


def parse_word(text: str) -> tuple[int, ...]:
    """Parse a plain word (letters only); ``<epsilon>`` or blank is the empty word."""
    text = text.strip()
    if text in ("", "<epsilon>"):
        return ()
    out = []
    for kind, value, pos in _Parser(text).tokens:
        if kind != "letter":
            raise RegexSyntaxError("a word may contain letters only", pos, text)
        out.append(value)
    return tuple(out)


# --- rendering -----------------------------------------------------------


def _join(pieces: list[str]) -> str:
    # "#12" followed by a digit would re-lex as one raw letter
    out = []
    prev = ""
    for p in pieces:
        if prev and p and p[0].isdigit() and re.search(r"#\d+$", prev):
            out.append(" ")
        out.append(p)
        prev = p
    return "".join(out)


def render(node: Regex) -> str:
    if isinstance(node, Leaf):
        return letter_text(node.letter)
    if isinstance(node, Concat):
        return _join([render(c) for c in node.children])
    if isinstance(node, Alt):
        return "[" + "|".join(render(c) for c in node.children) + "]"
    inner = render(node.child)
    if isinstance(node.child, Concat):
        inner = "(" + inner + ")"
    return inner + node.op


def render_word(word: Sequence[int]) -> str:
    if not word:
        return "<epsilon>"
    return _join([letter_text(c) for c in word])
