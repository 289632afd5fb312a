import csv
import random

import pytest

from rexint.automata import member
from rexint.bench import (
    ALL_TYPES, CSV_HEADER, HARD_ROUTE, LINEAR_ROUTES, MIN_SIZE, FIXED_SIZE, fit_slope,
    gen_hard_family, gen_random_regex, gen_route_pair, geometric_sizes, min_hard_size,
    plant_regex, run_scaling, sample_word, selftest,
)
from rexint.canonical import classify
from rexint.dispatch import route_for
from rexint.ov import ov_bruteforce
from rexint.automata import product_nonempty
from rexint.syntax import Alt, Concat, Plus, size


@pytest.mark.parametrize("t", ALL_TYPES)
def test_generated_type_and_size(t):
    rng = random.Random(1)
    for n in (MIN_SIZE[t], 10, 40):
        for _ in range(20):
            x = gen_random_regex(t, n, 3, rng)
            assert classify(x).homogeneous and classify(x).name == t
            if t not in FIXED_SIZE:
                assert abs(size(x) - n) <= 0.1 * n


def test_generator_examples():
    x = gen_random_regex("∘|", 10, 3, 4)
    assert isinstance(x, Concat) and size(x) == 10
    assert gen_random_regex("∘|", 10, 3, 4) == x
    y = gen_random_regex("+∘", 7, 2, 4)
    assert isinstance(y, Plus) and size(y) == 7
    with pytest.raises(ValueError):
        gen_random_regex("+∘", 0, 2, 0)
    with pytest.raises(ValueError):
        gen_random_regex("∘|", 2, 2, 0)


def test_planted_regexps_contain_the_word():
    rng = random.Random(2)
    planted = 0
    for _ in range(3000):
        ta, tb = rng.choice(ALL_TYPES), rng.choice(ALL_TYPES)
        a = gen_random_regex(ta, rng.randint(MIN_SIZE[ta], 12), 3, rng)
        word = sample_word(a, rng)
        assert member(word, a)
        b = plant_regex(tb, word, 3, rng)
        if b is None:
            continue
        planted += 1
        assert classify(b).name == tb
        assert member(word, b)
    assert planted > 800


@pytest.mark.parametrize("route", LINEAR_ROUTES)
def test_route_workloads(route):
    a, b = gen_route_pair(route, 3000, 1)
    assert route_for(a, b).case == route
    assert product_nonempty(a, b, budget=10**8).nonempty if size(a) * size(b) < 2 * 10**6 else True
    # the larger side carries the requested size; the other may be tiny or of the same order
    assert 0.4 * 3000 <= max(size(a), size(b)) <= 2.5 * 3000


def test_hard_family():
    a, b, inst = gen_hard_family(1000, 0)
    assert classify(a).name == "∘+" and classify(b).name == "∘|"
    assert abs((size(a) + size(b)) / 2 - 1000) < 200
    assert ov_bruteforce(inst) is None
    assert product_nonempty(a, b).empty
    a, b, inst = gen_hard_family(1000, 3, plant=True)
    assert ov_bruteforce(inst) is not None
    assert product_nonempty(a, b).nonempty
    with pytest.raises(ValueError):
        gen_hard_family(100, 0)
    assert min_hard_size() > 500


def test_fit_slope_exact():
    xs = [10, 100, 1000, 10_000, 100_000]
    slope, lo, hi = fit_slope(xs, [3 * x ** 1.5 for x in xs])
    assert slope == pytest.approx(1.5)
    assert lo == pytest.approx(1.5) and hi == pytest.approx(1.5)


def test_geometric_sizes():
    assert geometric_sizes(10, 1000, 3) == [10, 100, 1000]


def test_run_scaling_and_csv(tmp_path):
    path = tmp_path / "out.csv"
    rep = run_scaling("dict_dict", geometric_sizes(2000, 20_000, 5), 5, 0, str(path))
    rows = list(csv.reader(open(path)))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 1 + len(rep.points) == 6
    assert all(r[0] == "dict_dict" and r[5] == "NONEMPTY" for r in rows[1:])
    assert 0.5 < rep.slope < 1.6
    with pytest.raises(ValueError):
        run_scaling("dict_dict", [100, 200], 5, 0)
    with pytest.raises(ValueError):
        run_scaling("dict_dict", geometric_sizes(2000, 20_000, 5), 3, 0)


def test_selftest_small():
    rep = selftest(3, 400)
    assert rep.ok and str(rep) == "400/400 agree"
    assert rep.witnesses_checked > 0
