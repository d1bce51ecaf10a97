import math
import random

import numpy as np
import pytest

from longjump.cost import (
    cost_table,
    cost_table_abelian,
    cost_table_pareto,
    costs_equal,
    diameter,
    heisenberg_cost_estimate,
    heisenberg_split_cost_estimate,
    phi_alpha,
    quasi_triangle_factor,
    tables_equal,
    word_diameter,
)
from longjump.groups import GroupSpec, WalkSpec, heisenberg_standard_triple, make_walk


def test_phi_alpha_values():
    assert phi_alpha(1.0, 7) == 7.0
    assert phi_alpha(2.0, 8) == pytest.approx(64 / math.log(8), abs=1e-15)
    assert phi_alpha(3.0, 5) == 25.0
    assert phi_alpha(0.5, 0) == 0.0
    assert phi_alpha(2.0, 0) == 0.0
    assert phi_alpha(2.0, 1) == 1.0
    with pytest.raises(ValueError):
        phi_alpha(0.0, 3)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.7, 2.0, 2.5])
def test_phi_alpha_strictly_increasing(alpha):
    vals = [phi_alpha(alpha, x) for x in range(1, 50)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_abelian_table_z10():
    walk = make_walk(GroupSpec.cyclic(10), [(1,), (3,)], [1.0, 1.0])
    table = cost_table_abelian(walk)
    assert table.cost((0,)) == 0.0
    assert table.cost((9,)) == 1.0  # x = (-1, 0) ... via x2 = -3? no: x2=0, x1=-1
    assert table.cost((5,)) == 2.0  # x = (2, 1)
    assert table.diameter == 2.0


def test_single_generator_cost_is_cyclic_distance_power():
    for alpha in (0.5, 1.0, 1.7):
        walk = make_walk(GroupSpec.cyclic(11), [(1,)], [alpha])
        table = cost_table_abelian(walk)
        for g in range(11):
            assert table.cost((g,)) == pytest.approx(min(g, 11 - g) ** alpha, abs=1e-14)
        assert table.diameter == pytest.approx(5**alpha, abs=1e-14)


def test_witnesses_reproduce_costs(corpus):
    # every table entry is auditable: max_i Phi(witness_i) equals the cost
    for label, walk in corpus:
        if walk.group.order > 500:
            continue
        table = cost_table(walk)
        for i, g in enumerate(table.elements):
            w = table.witnesses[i]
            val = max(phi_alpha(a, int(d)) for a, d in zip(walk.alphas, w))
            assert costs_equal(val, float(table.costs[i])), (label, g)


def test_pareto_agrees_with_abelian(abelian_corpus):
    for label, walk in abelian_corpus:
        if walk.group.order > 500:
            continue
        ta = cost_table_abelian(walk)
        tb = cost_table_pareto(walk)
        assert tables_equal(ta, tb), label
        assert np.array_equal(ta.costs, tb.costs), label


def test_cost_symmetry(corpus):
    for label, walk in corpus:
        if walk.group.order > 500:
            continue
        table = cost_table(walk)
        group = walk.group
        for i, g in enumerate(table.elements):
            assert costs_equal(float(table.costs[i]), table.cost(group.inv(g))), label


def test_quasi_triangle_sampled(corpus):
    rng = random.Random(99)
    for label, walk in corpus:
        if walk.group.order > 500:
            continue
        table = cost_table(walk)
        group = walk.group
        factor = quasi_triangle_factor(walk.alphas)
        elements = table.elements
        for _ in range(2000):
            g, h = rng.choice(elements), rng.choice(elements)
            lhs = table.cost(group.mul(g, h))
            assert lhs <= factor * (table.cost(g) + table.cost(h)) + 1e-9, label


def test_scaling_law():
    # cost_{c alpha}(g) = cost_alpha(g)^c pointwise while both stay in (0,2)
    walk = make_walk(GroupSpec.cyclic(60), [(1,), (7,)], [0.8, 1.2])
    c = 1.5
    scaled = WalkSpec(
        group=walk.group,
        gens=walk.gens,
        alphas=tuple(c * a for a in walk.alphas),
        orders=walk.orders,
    )
    t1 = cost_table_abelian(walk)
    t2 = cost_table_abelian(scaled)
    assert np.allclose(t2.costs, t1.costs**c, rtol=1e-12, atol=1e-12)
    assert t2.diameter == pytest.approx(t1.diameter**c, rel=1e-12)


def test_heisenberg_pareto_costs():
    group, triple = heisenberg_standard_triple(3)
    walk = make_walk(group, triple, [1.0, 1.0, 1.0])
    table = cost_table_pareto(walk)
    assert table.cost((0, 0, 1)) == 1.0  # s3 is a generator here
    group5, triple5 = heisenberg_standard_triple(5)
    walk5 = make_walk(group5, triple5[:2], [1.0, 1.0])
    table5 = cost_table_pareto(walk5)
    # commutator word s1 s2 s1^-1 s2^-1 has degree vector (2, 2)
    assert table5.cost((0, 0, 1)) == 2.0
    assert table5.witness((0, 0, 1)) == (2, 2)


def test_pareto_budget_error():
    from longjump._kernels import LabelBudgetError

    group, triple = heisenberg_standard_triple(5)
    walk = make_walk(group, triple[:2], [1.0, 1.0])
    with pytest.raises(LabelBudgetError):
        cost_table_pareto(walk, budget=1)


def test_heisenberg_estimate_values():
    group, triple = heisenberg_standard_triple(5)
    walk = make_walk(group, triple, [1.0, 1.0, 1.0])
    assert heisenberg_cost_estimate(walk, (0, 0, 0)) == 0.0
    assert heisenberg_cost_estimate(walk, (0, 0, 2)) == pytest.approx(math.sqrt(2))
    assert heisenberg_cost_estimate(walk, (2, 0, 0)) == 2.0
    with pytest.raises(ValueError):
        heisenberg_cost_estimate(make_walk(group, triple[:2], [1, 1]), (0, 0, 1))


def test_heisenberg_split_estimate_values():
    t = 3
    n = t * t
    group = GroupSpec.heisenberg(n)
    gens = ((1, 0, 0), (t, 0, 0), (0, 1, 0), (0, 0, 1))
    walk = make_walk(group, gens, [1.0, 1.0, 1.0, 1.0])
    assert heisenberg_split_cost_estimate(walk, (0, 0, 0)) == 0.0
    # m1 = 6 = 2*3 + 0 -> max(|0|, |2|)^a1
    assert heisenberg_split_cost_estimate(walk, (6, 0, 0)) == 2.0
    # m1 = 4 = 1*3 + 1 -> max(1, 1)
    assert heisenberg_split_cost_estimate(walk, (4, 0, 0)) == 1.0
    bad = GroupSpec.heisenberg(8)  # not a perfect square
    with pytest.raises(ValueError):
        heisenberg_split_cost_estimate(
            make_walk(bad, heisenberg_standard_triple(8)[1], [1, 1, 1]), (1, 0, 0)
        )


def test_diameter_and_word_diameter():
    walk = make_walk(GroupSpec.cyclic(10), [(1,)], [1.0])
    d, argmax = diameter(walk)
    assert (d, argmax) == (5.0, (5,))
    assert word_diameter(walk) == 5
    walk13 = make_walk(GroupSpec.cyclic(10), [(1,), (3,)], [1.0, 1.0])
    assert word_diameter(walk13) == 2
    # constant tuples: D_(a,...,a) = D_S^a
    ws = make_walk(GroupSpec.cyclic(10), [(1,), (3,)], [0.5, 0.5])
    d_half, _ = diameter(ws)
    assert d_half == pytest.approx(math.sqrt(word_diameter(walk13)), rel=1e-12)


def test_heisenberg_diameter_growth():
    # standard triple: D comparable to N^(max alpha)
    ratios = []
    for n in (3, 5, 7):
        group, triple = heisenberg_standard_triple(n)
        walk = make_walk(group, triple, [1.0, 1.0, 1.0])
        d, _ = diameter(walk)
        ratios.append(d / n)
    assert max(ratios) / min(ratios) <= 2.0


def test_costs_equal_tolerance():
    assert costs_equal(2.0**0.5, 4.0**0.25)
    assert costs_equal(0.0, 0.0)
    assert not costs_equal(1.0, 1.001)
