import itertools
import random

import pytest

from rexint.automata import enumerate_language, member
from rexint.canonical import (
    AlphaClosure, NotCoercible, PosSets, PowerStr, Run, RunAlt, RunSeq, StarSeq, StrDict,
    alphabet_info, classify, coercible_types, extract_canonical, nullable,
)
from rexint.syntax import Leaf, parse

A, B, C, X, Y = (ord(ch) for ch in "abcxy")


def w(s):
    return tuple(ord(ch) for ch in s)


@pytest.mark.parametrize("text,expected", [
    ("b+bc+c+a", "type=∘+ depth=2"),
    ("[a|b]bc[a|b|c]", "type=∘| depth=2"),
    ("a", "type=- depth=0"),
    ("abc", "type=∘ depth=1"),
    ("[a|b]", "type=| depth=1"),
    ("a+", "type=+ depth=1"),
    ("(ab)*", "type=*∘ depth=2"),
    ("[a+|b]", "type=|+ depth=2"),
    ("(a+)*", "type=*+ depth=2"),
    ("a+b[c|a]", "non-homogeneous depth=2"),
    ("[ab|c]", "type=|∘ depth=2"),
])
def test_classify(text, expected):
    assert str(classify(parse(text))) == expected


def test_classify_deeper():
    t = classify(parse("([a|b]c)+"))
    assert t.homogeneous and t.depth == 3 and t.name == "+∘|"


def test_classify_never_repeats_operators():
    rng = random.Random(3)
    from tests.test_syntax import random_ast

    for _ in range(2000):
        ops = classify(random_ast(rng, 4)).ops
        assert all(x != y for x, y in zip(ops, ops[1:]))


def test_runseq_rewrite():
    form = extract_canonical(parse("b+bc+c+a"), "∘+")
    assert form == RunSeq((Run(B, 2, True), Run(C, 2, True), Run(A, 1, False)))


def test_string_coercions():
    forms = coercible_types(parse("aaa"))
    assert forms["∘|"] == PosSets(((A,), (A,), (A,)))
    assert forms["∘+"] == RunSeq((Run(A, 3, False),))
    assert forms["|∘"] == StrDict((w("aaa"),))


def test_collapsed_unary_chains():
    for text in ("(a+)*", "(a*)+", "a*"):
        assert coercible_types(parse(text))["*|"] == AlphaClosure((A,), True)


def test_dictionary_is_not_possets():
    forms = coercible_types(parse("[ab|ba]"))
    assert set(forms) == {"|∘"}


def test_extract_examples():
    assert extract_canonical(parse("abba"), "∘|") == PosSets(((A,), (B,), (B,), (A,)))
    assert extract_canonical(parse("(abba)+"), "+∘") == PowerStr(w("abba"), "plus")
    with pytest.raises(NotCoercible):
        extract_canonical(parse("[ab|ba]"), "∘|")


def test_non_homogeneous_has_no_forms():
    assert coercible_types(parse("a+b[c|a]")) == {}
    assert coercible_types(parse("([a|b]c)+")) == {}


def test_alphabet_info_examples():
    info = alphabet_info(parse("ab*a*b"))
    assert info.bare_letters == {A, B} and info.star_letters == {A, B} and not info.nullable
    assert alphabet_info(parse("(baab)*")).nullable
    info = alphabet_info(parse("[a+|b+|c]"))
    assert info.plus_letters == {A, B} and info.bare_letters == {C}


def test_alphabet_info_partition_and_nullable():
    from tests.test_syntax import random_ast

    rng = random.Random(11)
    for _ in range(500):
        x = random_ast(rng, 4)
        info = alphabet_info(x)
        assert info.plus_letters | info.star_letters | info.bare_letters == info.alph
        assert info.nullable == member((), x) == nullable(x)


def _small_asts():
    """Every homogeneous shape of size <= 4 over {a, b, c}, plus random size <= 8 ones."""
    from rexint.bench import ALL_TYPES, gen_random_regex

    rng = random.Random(5)
    for t in ALL_TYPES:
        for size in range(1, 9):
            for _ in range(12):
                try:
                    yield gen_random_regex(t, size, 3, rng)
                except ValueError:
                    break


def test_coercion_soundness_by_enumeration():
    # every returned form has the same words as the tree up to length 8 [DERIVED]
    checked = 0
    for x in _small_asts():
        want = enumerate_language(x, 8)
        for name, form in coercible_types(x).items():
            assert enumerate_language(form.to_regex(), 8) == want, (x, name, form)
            checked += 1
    assert checked > 1000


def test_runalt_with_epsilon_and_closed_entry():
    form = coercible_types(parse("[a*|b]"))["|*"]
    assert form == RunAlt(((A, True), (B, False)), True)
    assert form.nullable
