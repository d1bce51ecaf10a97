import math

import numpy as np
import pytest

from longjump.groups import GroupSpec, make_walk
from longjump.measure import (
    alpha_star,
    build_measure,
    build_power_law,
    check_regularity_A,
    check_wrapped_comparability,
    regularity_threshold,
    tail_mass,
    tail_mass_bound,
)

GRID_N = (10, 100, 1000)
GRID_ALPHA = (0.25, 0.5, 1.0, 1.5, 1.9)


def test_power_law_n5_exact():
    d = build_power_law(5, 1.0)
    # direct summation over (1+|j|)^-2, |j| = 0,1,2,2,1
    assert d.norm_const == pytest.approx(18 / 31, abs=1e-15)
    expected = (18 / 31) * np.array([1, 1 / 4, 1 / 9, 1 / 9, 1 / 4])
    assert np.allclose(d.probs, expected, atol=1e-15)


def test_power_law_point_mass():
    d = build_power_law(1, 0.3)
    assert d.probs.tolist() == [1.0]
    assert d.norm_const == 1.0


def test_power_law_n4_tie_pattern():
    d = build_power_law(4, 1.0)
    # |j| pattern (0, 1, 2, 1)
    assert 1 / d.norm_const == pytest.approx(1 + 1 / 4 + 1 / 9 + 1 / 4, abs=1e-15)


def test_power_law_rejects_bad_args():
    with pytest.raises(ValueError):
        build_power_law(0, 1.0)
    with pytest.raises(ValueError):
        build_power_law(5, 0.0)


@pytest.mark.parametrize("n", GRID_N)
@pytest.mark.parametrize("alpha", GRID_ALPHA)
def test_power_law_invariants_grid(n, alpha):
    d = build_power_law(n, alpha)
    assert abs(d.probs.sum() - 1.0) <= 1e-12
    j = np.arange(1, n)
    assert np.max(np.abs(d.probs[j] - d.probs[n - j])) <= 1e-15
    assert alpha / (2 * (1 + alpha)) - 1e-12 <= d.norm_const <= 1.0


def test_measure_single_generator_matches_distribution():
    walk = make_walk(GroupSpec.cyclic(5), [(1,)], [1.0])
    mu = build_measure(walk)
    d = build_power_law(5, 1.0)
    for j in range(5):
        assert mu.support[(j,)] == pytest.approx(float(d.probs[j]), abs=1e-15)


def test_measure_duplicate_generators_average_to_same():
    walk2 = make_walk(GroupSpec.cyclic(6), [(1,), (1,)], [1.0, 1.0])
    walk1 = make_walk(GroupSpec.cyclic(6), [(1,)], [1.0])
    mu2, mu1 = build_measure(walk2), build_measure(walk1)
    for g, p in mu1.support.items():
        assert mu2.support[g] == pytest.approx(p, abs=1e-15)


def test_measure_low_order_generator_component():
    walk = make_walk(GroupSpec.cyclic(10), [(1,), (5,)], [1.0, 1.0])
    mu = build_measure(walk)
    comp = mu.generator_component(1)
    assert set(comp) == {(0,), (5,)}
    assert sum(comp.values()) == pytest.approx(1.0, abs=1e-15)


def test_measure_invariants(corpus):
    for label, walk in corpus:
        mu = build_measure(walk)
        group = walk.group
        assert abs(sum(mu.support.values()) - 1.0) <= 1e-12, label
        for g, p in mu.support.items():
            assert mu.support[group.inv(g)] == pytest.approx(p, abs=1e-15), label
        assert mu.support[group.identity()] >= alpha_star(walk.alphas) - 1e-12, label


def test_tail_mass_examples():
    d5 = build_power_law(5, 1.0)
    assert tail_mass(d5, 2.0) == 0.0
    assert tail_mass(d5, 2.5) == 0.0  # a >= N/2
    d101 = build_power_law(101, 1.0)
    expected = 1.0 - d101.probs[0] - d101.probs[1] - d101.probs[100]
    assert tail_mass(d101, 1.0) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("n", GRID_N)
@pytest.mark.parametrize("alpha", GRID_ALPHA)
def test_tail_mass_bound_grid(n, alpha):
    d = build_power_law(n, alpha)
    a = 1.0
    while a <= n / 2:
        assert tail_mass(d, a) <= tail_mass_bound(alpha, a) * (1 + 1e-9)
        a *= 2


def test_regularity_examples():
    d5 = build_power_law(5, 1.0)
    holds, best = check_regularity_A(d5)
    assert holds
    # worst window is k=2: I = [0, 2], min/max = p(2)/p(0) = 1/9 >= 18^-2
    assert best == pytest.approx(1 / 9, abs=1e-15)
    holds1, best1 = check_regularity_A(build_power_law(1, 1.0))
    assert holds1 and best1 == 1.0
    holds_big, best_big = check_regularity_A(build_power_law(1000, 0.5))
    assert holds_big and best_big >= regularity_threshold(0.5)


@pytest.mark.parametrize("alpha", GRID_ALPHA)
def test_regularity_grid(alpha):
    for n in GRID_N:
        _, best = check_regularity_A(build_power_law(n, alpha))
        assert best >= regularity_threshold(alpha) * (1 - 1e-9)


def test_wrapped_comparability_examples():
    rep = check_wrapped_comparability(20, 1.0, wrap_terms=10_000)
    assert rep.band_lo * (1 - 1e-9) <= rep.min_ratio
    assert rep.max_ratio <= rep.band_hi * (1 + 1e-9)
    assert rep.min_ratio <= 1.0 <= rep.max_ratio * (1 + 1e-9)
    rep1 = check_wrapped_comparability(1, 1.0)
    assert rep1.min_ratio == pytest.approx(1.0, abs=1e-9)
    assert rep1.max_ratio == pytest.approx(1.0, abs=1e-9)


def test_wrapped_comparability_rejects_hopeless_tolerance():
    with pytest.raises(ValueError):
        check_wrapped_comparability(10, 0.25, wrap_terms=2, rel_tol=1e-12)


def test_alpha_star():
    assert alpha_star((1.0,)) == 0.25
    assert alpha_star((1.0, 0.5)) == pytest.approx(0.5 / 3.0)
