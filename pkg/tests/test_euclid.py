import math

import numpy as np
import pytest

from longjump import _kernels
from longjump.cost import cost_table_abelian, phi_alpha
from longjump.euclid import (
    ExpansionError,
    diameter_formula,
    expand,
    hard_element,
    sandwich_lower_factor,
    step_length,
)
from longjump.groups import GroupSpec, make_walk


def test_expand_10_3():
    e = expand(10, 3)
    assert e.r_seq == (10, 3, 1, 0)
    assert e.q_seq == (3, 3)
    assert e.eps_seq == (-1, 1)
    assert e.m_seq == (0, 1, 3, 10)
    assert e.K == 1
    # 3*3 = 9 = -1 mod 10: the sign bookkeeping behind eps_bar
    assert (e.m(1) * 3) % 10 == (e.eps_bar(1) * e.r(1)) % 10


def test_expand_8436_1368():
    e = expand(8436, 1368)
    assert e.q(1) == 6 and e.eps(1) == -1 and e.r(1) == 228
    assert e.q(2) == 6 and e.r(2) == 0
    assert e.m(1) == 6 and e.m(2) == 37
    assert (6 * 1368) % 8436 == (8436 - 228)  # 6s = -228 mod N


@pytest.mark.parametrize("t", [2, 3, 4, 5, 6])
def test_expand_divisible_case(t):
    # s | N: terminates in one division with q1 = N/s, m1 = N/s
    n = t * (t**2 + 1) * (t**2 + 2)
    s = (t**2 + 1) * (t**2 + 2)
    e = expand(n, s)
    assert e.K == 0
    assert e.q(1) == t and e.m(1) == t
    assert e.gcd == s


def test_expand_normalization_and_errors():
    assert expand(10, 7).step == 3
    e = expand(10, 1)
    assert e.K == 0 and e.q(1) == 10 and e.m_seq == (0, 1, 10)
    assert expand(10, 9).step == 1
    with pytest.raises(ExpansionError):
        expand(10, 0)
    with pytest.raises(ExpansionError):
        expand(10, 10)
    with pytest.raises(ExpansionError):
        expand(1, 1)


def test_expansion_invariants_sweep():
    # validate() raises on any structural violation; exercised densely here
    for n in range(2, 301):
        for s in range(2, n // 2 + 1):
            expand(n, s)


def test_step_length_matches_brute_scan():
    for n in range(2, 201):
        for s in range(2, n // 2 + 1):
            e = expand(n, s)
            targets = np.array(
                [(e.eps_bar(i) * e.r(i)) % n for i in range(e.K + 1)], dtype=np.int64
            )
            brute = _kernels.min_step_lengths(n, s, targets)
            for i in range(e.K + 1):
                assert step_length(e, i) == int(brute[i]), (n, s, i)


def test_step_length_examples():
    e = expand(10, 3)
    assert step_length(e, 0) == 1
    assert step_length(e, 1) == 3
    e2 = expand(8436, 1368)
    assert step_length(e2, 1) == 6
    assert (6 * 1368 + 228) % 8436 == 0  # reaches -228
    with pytest.raises(IndexError):
        step_length(e, 2)


def test_diameter_formula_10_3():
    e = expand(10, 3)
    val, idx = diameter_formula(e, (1.0, 1.0))
    assert (val, idx) == (3.0, 0)
    # candidates by hand: i=-1: max(10,1); i=0: max(3,3); i=1: max(1,10)
    walk = make_walk(GroupSpec.cyclic(10), [(1,), (3,)], [1.0, 1.0])
    d = cost_table_abelian(walk).diameter
    assert sandwich_lower_factor((1.0, 1.0)) * val <= d <= val


def test_diameter_formula_divisible_closed_form():
    # s | N: M = min(N^a1, max(s^a1, (N/s)^a2))
    n, s = 60, 12
    e = expand(n, s)
    for a1, a2 in [(0.5, 1.0), (1.0, 1.0), (1.5, 0.5)]:
        val, _ = diameter_formula(e, (a1, a2))
        closed = min(phi_alpha(a1, n), max(phi_alpha(a1, s), phi_alpha(a2, n // s)))
        assert val == pytest.approx(closed, abs=1e-12)


def test_hard_element_small_quotient():
    e = expand(10, 3)
    assert hard_element(e, 1) == e.r(1) == 1  # q2 = 3 < 8
    with pytest.raises(IndexError):
        hard_element(e, 5)


def test_hard_element_large_quotient():
    e = expand(100, 12)  # 100 = 8*12 + 4 -> q1 = 8, r1 = 4
    assert e.q(1) == 8 and e.eps(1) == -1 and e.r(1) == 4
    assert hard_element(e, 0) == (8 // 2) * 12 % 100 == 48


def test_hard_element_lower_bound_small_grid():
    for n in range(8, 81):
        for s in range(2, n // 2 + 1):
            e = expand(n, s)
            walk = make_walk(GroupSpec.cyclic(n), [(1,), (s,)], [1.0, 1.0])
            table = cost_table_abelian(walk)
            factor = sandwich_lower_factor((1.0, 1.0))
            for i in range(e.K + 1):
                x = hard_element(e, i)
                bound = factor * min(phi_alpha(1.0, e.r(i - 1)), phi_alpha(1.0, e.m(i + 1)))
                assert table.cost((x,)) >= bound - 1e-12, (n, s, i)
