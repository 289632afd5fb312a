import random

import pytest
from hypothesis import given, settings, strategies as st

from rexint.syntax import (
    Alt, Concat, Leaf, Plus, RegexSyntaxError, Star, alt, concat, leaves, normalize, parse,
    parse_word, plus, render, render_word, size, star,
)

a, b, c = Leaf(ord("a")), Leaf(ord("b")), Leaf(ord("c"))


def test_parse_runs_example():
    assert parse("b+bc+c+a") == Concat((Plus(b), b, Plus(c), Plus(c), a))


def test_parse_possets_example():
    assert parse("[a|b]bc[a|b|c]") == Concat((Alt((a, b)), b, c, Alt((a, b, c))))


def test_parse_single_letter():
    assert parse("a") == a


def test_parse_ignores_whitespace():
    assert parse(" a b \n [ a | b ] ") == Concat((a, b, Alt((a, b))))


def test_parens_group_and_alternate():
    assert parse("(ab)+") == Plus(Concat((a, b)))
    assert parse("(a|b)") == Alt((a, b))


def test_same_operator_levels_merge():
    assert parse("a(bc)") == Concat((a, b, c))
    assert parse("[a|[b|c]]") == Alt((a, b, c))
    assert parse("(a)") == a


def test_unary_chains():
    assert parse("a++") == Plus(a)
    assert parse("a**") == Star(a)
    # (c+)* is kept as written
    assert parse("(a+)*") == Star(Plus(a))
    assert parse("a+*") == Star(Plus(a))


def test_raw_letters():
    assert parse("#97") == a
    assert parse("#300 #301") == Concat((Leaf(300), Leaf(301)))


@pytest.mark.parametrize("text", ["", "   ", "[a|b", "(a", "a)", "a]", "+a", "[|a]", "a|b", "a%b", "[]", "#"])
def test_syntax_errors(text):
    with pytest.raises(RegexSyntaxError):
        parse(text)


def test_error_position_line_col():
    with pytest.raises(RegexSyntaxError) as ei:
        parse("ab\ncd%")
    assert ei.value.line_col == (2, 3)


def test_deep_nesting_is_a_syntax_error_not_a_crash():
    with pytest.raises(RegexSyntaxError):
        parse("(" * 5000 + "a" + ")" * 5000)


def test_render_examples():
    assert render(Concat((Plus(b), b))) == "b+b"
    assert render(Alt((a, b))) == "[a|b]"
    assert render(Leaf(300)) == "#300"
    assert render(Plus(Concat((a, b)))) == "(ab)+"


def test_render_keeps_raw_letters_apart():
    node = Concat((Leaf(300), Leaf(ord("1"))))
    assert parse(render(node)) == node


def test_smart_constructors_flatten():
    assert concat([a]) == a
    assert concat([concat([a, b]), c]) == Concat((a, b, c))
    assert alt([alt([a, b]), c]) == Alt((a, b, c))
    assert plus(plus(a)) == Plus(a)
    assert star(star(a)) == Star(a)


def test_normalize_and_size():
    raw = Concat((Concat((a, b)), Alt((Alt((a,)), c))))
    n = normalize(raw)
    assert n == Concat((a, b, Alt((a, c))))
    assert size(n) == 4
    assert leaves(n) == [97, 98, 97, 99]


def test_words():
    assert parse_word("abc") == (97, 98, 99)
    assert parse_word("<epsilon>") == ()
    assert parse_word("") == ()
    assert render_word(()) == "<epsilon>"
    with pytest.raises(RegexSyntaxError):
        parse_word("a+")


def random_ast(rng: random.Random, depth: int = 3):
    letters = [97, 98, 99, 300]
    if depth == 0 or rng.random() < 0.3:
        return Leaf(rng.choice(letters))
    k = rng.randrange(4)
    if k == 0:
        return concat(random_ast(rng, depth - 1) for _ in range(rng.randint(2, 3)))
    if k == 1:
        return alt(random_ast(rng, depth - 1) for _ in range(rng.randint(2, 3)))
    if k == 2:
        return plus(random_ast(rng, depth - 1))
    return star(random_ast(rng, depth - 1))


def test_round_trip_10000_random_trees():
    rng = random.Random(7)
    for _ in range(10_000):
        x = random_ast(rng, 4)
        assert parse(render(x)) == x


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip_property(seed):
    x = random_ast(random.Random(seed), 5)
    assert parse(render(x)) == x
