from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_isometric, brute_unit_square_orbit, cyclic_form
from surgeq.homology import LinkingForm, linking_form
from surgeq.linking_iso import (
    Status,
    brute_force_cyclic,
    check_witness,
    cyclic_class,
    elementary_divisors,
    is_unit_square,
    isomorphic,
    orthogonal_sum,
    primary_parts,
    same_square_class,
    scale,
    square_root_unit,
)


@pytest.mark.parametrize("form, a", [
    (cyclic_form(1, 9), 1),
    (linking_form([[3, 1], [1, 2]]), None),
    (cyclic_form(4, 7), 4),
])
def test_cyclic_class(form, a):
    if a is None:
        assert same_square_class(cyclic_class(form), 2, 5)
    else:
        assert cyclic_class(form) == a


def test_l52_form_has_class_2():
    # L(5,2) read directly: lambda(1,1) = 2/5
    assert cyclic_class(cyclic_form(2, 5)) == 2


def test_identity_witness():
    f = orthogonal_sum(cyclic_form(1, 3), cyclic_form(2, 5))
    ans = isomorphic(f, f)
    assert ans.status is Status.YES and check_witness(f, f, ans.witness)


@pytest.mark.parametrize("a, b, n, expected", [
    (1, 2, 5, Status.NO),
    (1, 2, 7, Status.YES),
    (1, 4, 7, Status.YES),
    (1, 6, 7, Status.NO),
    (1, 4, 5, Status.YES),
    (1, 3, 8, Status.NO),
    (1, 9, 16, Status.YES),
    (1, 5, 8, Status.NO),
    (1, 3, 4, Status.NO),
])
def test_cyclic_examples(a, b, n, expected):
    ans = isomorphic(cyclic_form(a, n), cyclic_form(b, n))
    assert ans.status is expected
    if expected is Status.YES:
        (k,), = ans.witness
        assert (k * k * b - a) % n == 0
        assert check_witness(cyclic_form(a, n), cyclic_form(b, n), ans.witness)


def test_order_mismatch():
    assert isomorphic(cyclic_form(1, 5), cyclic_form(1, 7)).status is Status.NO


def test_z2_single_class():
    assert isomorphic(cyclic_form(1, 2), cyclic_form(1, 2)).status is Status.YES


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
def test_two_classes_mod_odd_prime(p):
    classes = {frozenset(brute_unit_square_orbit(a, p)) for a in range(1, p)}
    assert len(classes) == 2
    assert (p % 4 == 1) == is_unit_square(-1, p)


@given(st.integers(2, 120), st.data())
def test_unit_square_matches_enumeration(n, data):
    a = data.draw(st.integers(1, n - 1).filter(lambda x: math.gcd(x, n) == 1))
    b = data.draw(st.integers(1, n - 1).filter(lambda x: math.gcd(x, n) == 1))
    assert same_square_class(a, b, n) == (b in brute_unit_square_orbit(a, n))
    assert same_square_class(a, b, n) == (brute_force_cyclic(a, b, n) is not None)


@given(st.integers(2, 200), st.data())
def test_cyclic_witness_is_sound(n, data):
    a = data.draw(st.integers(1, n - 1).filter(lambda x: math.gcd(x, n) == 1))
    k = data.draw(st.integers(1, n - 1).filter(lambda x: math.gcd(x, n) == 1))
    f1, f2 = cyclic_form(a, n), cyclic_form(a * k * k % n, n)
    ans = isomorphic(f1, f2)
    assert ans.status is Status.YES and check_witness(f1, f2, ans.witness)


@given(st.integers(2, 200), st.data())
def test_square_root_unit(n, data):
    k = data.draw(st.integers(1, n - 1).filter(lambda x: math.gcd(x, n) == 1))
    r = square_root_unit(k * k, n)
    assert math.gcd(r, n) == 1 and (r * r - k * k) % n == 0


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        is_unit_square(2, 4)


def test_primary_decomposition_of_z6():
    f = cyclic_form(1, 6)
    parts = primary_parts(f)
    assert elementary_divisors(f) == {2: (2,), 3: (3,)}
    assert parts[2][0].values[0][0] == Fraction(3, 6) * 9 % 1
    g = orthogonal_sum(cyclic_form(1, 2), cyclic_form(2, 3))
    ans = isomorphic(f, g)
    assert ans.status is Status.YES and check_witness(f, g, ans.witness)


SMALL = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 1), (5, 2), (8, 1), (8, 3), (8, 5), (9, 1), (9, 2)]


def random_block_sum(rng, max_order=200):
    while True:
        parts = [SMALL[rng.randrange(len(SMALL))] for _ in range(rng.randint(1, 3))]
        if math.prod(n for n, _ in parts) <= max_order:
            return orthogonal_sum(*(cyclic_form(a, n) for n, a in parts))


def test_block_sums_against_exhaustive_search():
    rng = random.Random(7)
    for _ in range(60):
        f1 = random_block_sum(rng, 40)
        # a random form on the same group half the time
        f2 = random_block_sum(rng, 40)
        if rng.random() < 0.5 and f1.rank == 2:
            f2 = orthogonal_sum(*(cyclic_form(rng.choice([a for a in range(1, n) if math.gcd(a, n) == 1]), n)
                                  for n in f1.orders))
        ans = isomorphic(f1, f2)
        assert ans.status is not Status.UNKNOWN
        assert (ans.status is Status.YES) == brute_isometric(f1, f2)
        if ans.status is Status.YES:
            assert check_witness(f1, f2, ans.witness)


def test_hyperbolic_vs_diagonal_z2():
    hyp = LinkingForm((2, 2), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    diag = orthogonal_sum(cyclic_form(1, 2), cyclic_form(1, 2))
    assert isomorphic(hyp, diag).status is Status.NO
    assert isomorphic(hyp, hyp).status is Status.YES


def test_scaled_square_is_isometric():
    f = orthogonal_sum(cyclic_form(1, 3), cyclic_form(1, 9))
    g = scale(f, 4)
    ans = isomorphic(f, g)
    assert ans.status is Status.YES and check_witness(f, g, ans.witness)


def test_bound_gives_unknown():
    f = orthogonal_sum(cyclic_form(1, 5), cyclic_form(1, 5))
    assert isomorphic(f, f, bound=10).status is Status.UNKNOWN


def test_check_witness_rejects_bad_maps():
    f = orthogonal_sum(cyclic_form(1, 3), cyclic_form(1, 3))
    assert not check_witness(f, f, ((1, 0), (1, 0)))
    assert not check_witness(f, f, ((1, 1), (1, 2)))
    assert check_witness(f, f, ((0, 1), (1, 0)))
