import pytest

from longjump.groups import GroupSpec, heisenberg_standard_triple, make_walk

# Shared corpus: every instance has |G| <= 512 so dense cross-checks stay cheap.
CORPUS_SPECS = [
    ("Z/10 (1,3)", GroupSpec.cyclic(10), [(1,), (3,)], (1.0, 1.0)),
    ("Z/12 (1,5)", GroupSpec.cyclic(12), [(1,), (5,)], (0.5, 1.5)),
    ("Z/24 (1,10)", GroupSpec.cyclic(24), [(1,), (10,)], (1.9, 0.3)),
    ("Z/30 (7)", GroupSpec.cyclic(30), [(7,)], (1.0,)),
    ("Z/16 (3,5)", GroupSpec.cyclic(16), [(3,), (5,)], (0.75, 1.25)),
    ("Z/100 (1,10)", GroupSpec.cyclic(100), [(1,), (10,)], (1.0, 1.0)),
    ("Z/4xZ/5", GroupSpec.product(4, 5), [(1, 0), (0, 1)], (0.7, 1.3)),
    ("Z/2xZ/3xZ/5", GroupSpec.product(2, 3, 5), [(1, 1, 1)], (1.2,)),
    ("Z/6xZ/4", GroupSpec.product(6, 4), [(1, 0), (1, 1)], (1.0, 1.0)),
    ("H3/3", GroupSpec.heisenberg(3), list(heisenberg_standard_triple(3)[1]), (1.0, 1.0, 1.0)),
    ("H3/4", GroupSpec.heisenberg(4), list(heisenberg_standard_triple(4)[1]), (0.5, 1.0, 1.5)),
    ("H3/5 (s1,s2)", GroupSpec.heisenberg(5), [(1, 0, 0), (0, 1, 0)], (1.0, 1.0)),
]


@pytest.fixture(scope="session")
def corpus():
    return [
        (label, make_walk(group, gens, alphas))
        for label, group, gens, alphas in CORPUS_SPECS
    ]


@pytest.fixture(scope="session")
def abelian_corpus(corpus):
    return [(label, walk) for label, walk in corpus if walk.group.is_abelian]
