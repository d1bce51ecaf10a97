"""Exact arithmetic and enumeration for the finite nilpotent groups used everywhere else.

Three families are supported: cyclic groups Z/N, direct products of cyclic
groups, and the 3x3 unitriangular (Heisenberg) group over Z/N.  Elements are
canonical tuples of reduced residues, so they hash and compare exactly and can
key sparse probability maps.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

Element = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10**6

CYCLIC = "cyclic"
PRODUCT = "product"
HEISENBERG = "heisenberg"


class GroupOrderError(ValueError):
    """Raised when an operation needs to enumerate a group above its cap."""


@dataclass(frozen=True)
class GroupSpec:
    """One of Z/N, Z/N1 x ... x Z/Nd, or H3(Z/N) (upper unitriangular 3x3).

    Heisenberg elements are coordinate triples (x, y, z) for the matrix
    [[1, x, z], [0, 1, y], [0, 0, 1]] with entries mod N.
    """

    kind: str
    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in (CYCLIC, PRODUCT, HEISENBERG):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if not self.moduli or any(n < 1 for n in self.moduli):
            raise ValueError("all moduli must be positive integers")
        if self.kind in (CYCLIC, HEISENBERG) and len(self.moduli) != 1:
            raise ValueError(f"{self.kind} takes a single modulus")

    @staticmethod
    def cyclic(n: int) -> "GroupSpec":
        return GroupSpec(CYCLIC, (n,))

    @staticmethod
    def product(*moduli: int) -> "GroupSpec":
        return GroupSpec(PRODUCT, tuple(moduli))

    @staticmethod
    def heisenberg(n: int) -> "GroupSpec":
        return GroupSpec(HEISENBERG, (n,))

    @property
    def order(self) -> int:
        if self.kind == HEISENBERG:
            return self.moduli[0] ** 3
        return math.prod(self.moduli)

    @property
    def coord_moduli(self) -> tuple[int, ...]:
        """Modulus of each coordinate slot of an element tuple."""
        if self.kind == HEISENBERG:
            n = self.moduli[0]
            return (n, n, n)
        return self.moduli

    @property
    def is_abelian(self) -> bool:
        return self.kind != HEISENBERG or self.moduli[0] == 1

    def identity(self) -> Element:
        return (0,) * len(self.coord_moduli)

    def element(self, coords: Sequence[int]) -> Element:
        """Canonicalize arbitrary integer coordinates."""
        mods = self.coord_moduli
        if len(coords) != len(mods):
            raise ValueError(f"expected {len(mods)} coordinates, got {len(coords)}")
        return tuple(c % n for c, n in zip(coords, mods))

    def mul(self, g: Element, h: Element) -> Element:
        mods = self.coord_moduli
        if len(g) != len(mods) or len(h) != len(mods):
            raise ValueError("element arity does not match group")
        if self.kind == HEISENBERG:
            n = self.moduli[0]
            # (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+x*y'), all mod N.
            return ((g[0] + h[0]) % n, (g[1] + h[1]) % n, (g[2] + h[2] + g[0] * h[1]) % n)
        return tuple((a + b) % n for a, b, n in zip(g, h, mods))

    def inv(self, g: Element) -> Element:
        if self.kind == HEISENBERG:
            n = self.moduli[0]
            return ((-g[0]) % n, (-g[1]) % n, (g[0] * g[1] - g[2]) % n)
        return tuple((-a) % n for a, n in zip(g, self.coord_moduli))

    def pow(self, g: Element, m: int) -> Element:
        if m < 0:
            return self.pow(self.inv(g), -m)
        if self.kind == HEISENBERG:
            n = self.moduli[0]
            x, y, z = g
            # Closed form: g^m = (mx, my, mz + C(m,2) xy).
            return ((m * x) % n, (m * y) % n, (m * z + (m * (m - 1) // 2) * x * y) % n)
        return tuple((m * a) % n for a, n in zip(g, self.coord_moduli))

    def element_order(self, g: Element) -> int:
        """Smallest m >= 1 with g^m = e."""
        if self.kind in (CYCLIC, PRODUCT):
            return math.lcm(*(n // math.gcd(a, n) for a, n in zip(g, self.coord_moduli)))
        n = self.moduli[0]
        base = math.lcm(
            n // math.gcd(g[0], n),
            n // math.gcd(g[1], n),
        )
        # Order is a multiple of base; search multiples using the closed form.
        m = base
        while self.pow(g, m) != self.identity():
            m += base
        return m

    def enumerate(self, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Element]:
        """All elements exactly once, lexicographic on coordinates."""
        if self.order > cap:
            raise GroupOrderError(f"group order {self.order} exceeds cap {cap}")
        mods = self.coord_moduli

        def rec(prefix: tuple[int, ...], rest: tuple[int, ...]) -> Iterator[Element]:
            if not rest:
                yield prefix
                return
            for c in range(rest[0]):
                yield from rec(prefix + (c,), rest[1:])

        return rec((), mods)

    def describe(self) -> str:
        if self.kind == CYCLIC:
            return f"Z/{self.moduli[0]}"
        if self.kind == PRODUCT:
            return "x".join(f"Z/{n}" for n in self.moduli)
        return f"H3/{self.moduli[0]}"


def parse_group(text: str) -> GroupSpec:
    """Parse compact group strings: ``Z/100``, ``Z/4xZ/25``, ``H3/7``."""
    text = text.strip()
    if text.startswith("H3/"):
        return GroupSpec.heisenberg(int(text[3:]))
    parts = [p.strip() for p in text.split("x")]
    moduli = []
    for p in parts:
        if not p.startswith("Z/"):
            raise ValueError(f"cannot parse group {text!r}")
        moduli.append(int(p[2:]))
    if len(moduli) == 1:
        return GroupSpec.cyclic(moduli[0])
    return GroupSpec.product(*moduli)


def parse_element(group: GroupSpec, text: str) -> Element:
    """Parse an element as comma-separated coordinates, e.g. ``1,0,0``."""
    coords = [int(c) for c in text.replace("(", "").replace(")", "").split(",") if c.strip() != ""]
    return group.element(coords)


def verify_generates(
    group: GroupSpec, gens: Sequence[Element], cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    """True iff the closure of S and S^-1 under multiplication is the whole group.

    Breadth-first closure from the identity; stops as soon as every element is
    reached.
    """
    order = group.order
    if order > cap:
        raise GroupOrderError(f"group order {order} exceeds cap {cap}")
    steps = [group.element(g) for g in gens]
    steps += [group.inv(g) for g in steps]
    seen = {group.identity()}
    queue = deque(seen)
    while queue:
        cur = queue.popleft()
        for s in steps:
            nxt = group.mul(cur, s)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) == order:
                    return True
                queue.append(nxt)
    return len(seen) == order


@dataclass(frozen=True)
class WalkSpec:
    """A generating tuple with one jump exponent per generator.

    ``orders[i]`` is the true order of ``gens[i]`` in the group.  Use
    :func:`make_walk` to construct; it canonicalizes generators, derives the
    orders, and (by default) verifies that the tuple generates.
    """

    group: GroupSpec
    gens: tuple[Element, ...]
    alphas: tuple[float, ...]
    orders: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.gens)

    def describe(self) -> str:
        gens = ";".join(",".join(str(c) for c in g) for g in self.gens)
        alphas = ",".join(f"{a:g}" for a in self.alphas)
        return f"{self.group.describe()} S=({gens}) alpha=({alphas})"


def make_walk(
    group: GroupSpec,
    gens: Sequence[Sequence[int]],
    alphas: Sequence[float],
    require_generating: bool = True,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> WalkSpec:
    if len(gens) < 1:
        raise ValueError("need at least one generator")
    if len(alphas) != len(gens):
        raise ValueError("need one exponent per generator")
    if any(a <= 0 for a in alphas):
        raise ValueError("all exponents must be positive")
    canon = tuple(group.element(g) for g in gens)
    if require_generating and not verify_generates(group, canon, cap=cap):
        raise ValueError(f"generators {canon} do not generate {group.describe()}")
    orders = tuple(group.element_order(g) for g in canon)
    return WalkSpec(group=group, gens=canon, alphas=tuple(float(a) for a in alphas), orders=orders)


def heisenberg_standard_triple(n: int) -> tuple[GroupSpec, tuple[Element, ...]]:
    """H3(Z/N) with its three one-parameter generators (x-, y-, z-direction)."""
    group = GroupSpec.heisenberg(n)
    return group, ((1, 0, 0), (0, 1, 0), (0, 0, 1))
