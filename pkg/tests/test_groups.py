import random

import pytest

from longjump.groups import (
    GroupOrderError,
    GroupSpec,
    heisenberg_standard_triple,
    make_walk,
    parse_element,
    parse_group,
    verify_generates,
)


def test_cyclic_mul_and_identity():
    g = GroupSpec.cyclic(10)
    assert g.mul((7,), (5,)) == (2,)
    assert g.mul((7,), g.identity()) == (7,)


def test_heisenberg_mul_matches_matrix_product():
    h = GroupSpec.heisenberg(5)
    assert h.mul((1, 0, 0), (0, 1, 0)) == (1, 1, 1)


def test_mul_rejects_wrong_arity():
    g = GroupSpec.cyclic(10)
    with pytest.raises(ValueError):
        g.mul((1, 2), (0,))


def test_inverses():
    g = GroupSpec.cyclic(10)
    assert g.inv((3,)) == (7,)
    h = GroupSpec.heisenberg(5)
    assert h.inv((1, 1, 1)) == (4, 4, 0)
    assert h.mul((1, 1, 1), h.inv((1, 1, 1))) == h.identity()
    assert h.inv(h.identity()) == h.identity()


def test_element_orders():
    g = GroupSpec.cyclic(10)
    assert g.element_order((4,)) == 5
    assert g.element_order(g.identity()) == 1
    h = GroupSpec.heisenberg(5)
    assert h.element_order((1, 0, 0)) == 5
    # (0,0,1) has order N; mixed elements follow the closed power form
    assert h.element_order((0, 0, 1)) == 5
    assert h.element_order((1, 1, 0)) in (5, 10)
    for m in range(1, h.element_order((1, 1, 0))):
        assert h.pow((1, 1, 0), m) != h.identity()


def test_verify_generates():
    g = GroupSpec.cyclic(10)
    assert verify_generates(g, [(1,), (3,)])
    assert not verify_generates(g, [(2,), (4,)])
    group, triple = heisenberg_standard_triple(5)
    assert verify_generates(group, triple[:2])


def test_enumerate():
    assert list(GroupSpec.cyclic(3).enumerate()) == [(0,), (1,), (2,)]
    assert len(list(GroupSpec.heisenberg(2).enumerate())) == 8
    assert len(list(GroupSpec.product(2, 3).enumerate())) == 6
    with pytest.raises(GroupOrderError):
        list(GroupSpec.cyclic(100).enumerate(cap=10))


def test_group_laws_random_triples():
    rng = random.Random(20240817)
    for group in (GroupSpec.cyclic(12), GroupSpec.product(4, 6), GroupSpec.heisenberg(5)):
        elements = list(group.enumerate())
        for _ in range(1000):
            a, b, c = (rng.choice(elements) for _ in range(3))
            assert group.mul(group.mul(a, b), c) == group.mul(a, group.mul(b, c))
            assert group.mul(a, group.identity()) == a
            assert group.mul(a, group.inv(a)) == group.identity()


def test_heisenberg_nilpotency_class_two():
    group = GroupSpec.heisenberg(7)
    rng = random.Random(7)
    elements = list(group.enumerate())

    def comm(a, b):
        return group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)))

    for _ in range(200):
        g, h, f = (rng.choice(elements) for _ in range(3))
        assert comm(comm(g, h), f) == group.identity()


def test_element_order_divides_group_order(corpus):
    for _, walk in corpus:
        for s, order in zip(walk.gens, walk.orders):
            assert walk.group.order % order == 0
            assert walk.group.pow(s, order) == walk.group.identity()


def test_parse_group_and_element():
    assert parse_group("Z/100") == GroupSpec.cyclic(100)
    assert parse_group("Z/4xZ/25") == GroupSpec.product(4, 25)
    assert parse_group("H3/7") == GroupSpec.heisenberg(7)
    assert parse_element(GroupSpec.heisenberg(7), "1,0,0") == (1, 0, 0)
    assert parse_element(GroupSpec.cyclic(9), "(12)") == (3,)
    with pytest.raises(ValueError):
        parse_group("D/8")


def test_make_walk_validates():
    g = GroupSpec.cyclic(10)
    walk = make_walk(g, [(1,), (3,)], [1.0, 1.0])
    assert walk.orders == (10, 10)
    with pytest.raises(ValueError):
        make_walk(g, [(2,), (4,)], [1.0, 1.0])
    with pytest.raises(ValueError):
        make_walk(g, [(1,)], [-1.0])
    with pytest.raises(ValueError):
        make_walk(g, [], [])
    # alpha >= 2 is allowed: it routes through the generalized cost
    make_walk(g, [(1,)], [2.5])
