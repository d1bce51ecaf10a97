"""Signed-remainder Euclidean expansion for two-generator cyclic walks.

For Z/N with generating pair (1, s), the division chain

    r_{i-1} = q_{i+1} r_i - eps_{i+1} r_{i+1},   0 <= r_{i+1} <= r_i / 2,

(with eps = -1 forced on the tie r_{i+1} = r_i/2) produces remainders r_i and
step counts m_i: m_i is the least number of s-steps that reaches +-r_i on the
cycle.  The min over i of max(Phi_a1(r_i), Phi_a2(m_{i+1})) pins the quasi-norm
diameter within the explicit factor 2^(-5(a1+a2)).

All sequence arithmetic is plain Python integers, so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cost import phi_alpha


class ExpansionError(ValueError):
    """Invalid (N, s) input for the expansion."""


@dataclass(frozen=True)
class EuclidExpansion:
    """Expansion of (N, s): sequences indexed i = -1 .. K+1 (r, m) / 1 .. K+1 (q, eps).

    ``r_seq[i + 1]`` holds r_i, ``m_seq[i + 1]`` holds m_i, ``q_seq[i - 1]``
    holds q_i, ``eps_seq[i - 1]`` holds eps_i.  K indexes the last nonzero
    remainder, so r_K = gcd(N, s).
    """

    modulus: int
    step: int
    r_seq: tuple[int, ...]
    q_seq: tuple[int, ...]
    eps_seq: tuple[int, ...]
    m_seq: tuple[int, ...]
    K: int

    def r(self, i: int) -> int:
        if not -1 <= i <= self.K + 1:
            raise IndexError(f"r index {i} outside [-1, {self.K + 1}]")
        return self.r_seq[i + 1]

    def q(self, i: int) -> int:
        if not 1 <= i <= self.K + 1:
            raise IndexError(f"q index {i} outside [1, {self.K + 1}]")
        return self.q_seq[i - 1]

    def eps(self, i: int) -> int:
        if not 1 <= i <= self.K + 1:
            raise IndexError(f"eps index {i} outside [1, {self.K + 1}]")
        return self.eps_seq[i - 1]

    def m(self, i: int) -> int:
        if not -1 <= i <= self.K + 1:
            raise IndexError(f"m index {i} outside [-1, {self.K + 1}]")
        return self.m_seq[i + 1]

    def eps_bar(self, i: int) -> int:
        """Product eps_1 ... eps_i (empty product for i = 0)."""
        out = 1
        for t in range(1, i + 1):
            out *= self.eps(t)
        return out

    @property
    def gcd(self) -> int:
        return self.r(self.K)

    def validate(self) -> None:
        """Assert every structural invariant in exact integer arithmetic."""
        K = self.K
        if len(self.r_seq) != K + 3 or len(self.m_seq) != K + 3:
            raise AssertionError("sequence lengths inconsistent with K")
        if len(self.q_seq) != K + 1 or len(self.eps_seq) != K + 1:
            raise AssertionError("q/eps lengths inconsistent with K")
        for i in range(0, K + 1):
            if self.r(i - 1) != self.q(i + 1) * self.r(i) - self.eps(i + 1) * self.r(i + 1):
                raise AssertionError(f"division recursion fails at i={i - 1}")
            if not 0 <= 2 * self.r(i + 1) <= self.r(i):
                raise AssertionError(f"remainder halving fails at i={i}")
            if 2 * self.r(i + 1) == self.r(i) and self.r(i + 1) != 0 and self.eps(i + 1) != -1:
                raise AssertionError(f"tie sign rule fails at i={i}")
        if self.m(-1) != 0 or self.m(0) != 1:
            raise AssertionError("m base cases wrong")
        for i in range(1, K + 2):
            lag = self.eps(i - 1) if i >= 2 else 0
            if self.m(i) != self.q(i) * self.m(i - 1) - lag * self.m(i - 2):
                raise AssertionError(f"m recurrence fails at i={i}")
        for i in range(1, K + 2):
            if self.q(i) < 2:
                raise AssertionError(f"q_{i} = {self.q(i)} < 2")
        for i in range(-1, K):
            if not self.m(i) < self.m(i + 1):
                raise AssertionError(f"m not strictly increasing at i={i}")
        for i in range(2, K + 1):
            if 4 * self.q(i + 1) * self.m(i) < self.m(i + 1):
                raise AssertionError(f"q m >= m/4 fails at i={i}")
        for i in range(1, K + 1):
            if 4 * self.q(i + 1) * self.r(i) < 3 * self.r(i - 1):
                raise AssertionError(f"q r >= 3r/4 fails at i={i}")
        if self.r(K) != math.gcd(self.modulus, self.step):
            raise AssertionError("r_K is not gcd(N, s)")


def normalize_step(n: int, s: int) -> int:
    """Reduce s mod N and mirror into [0, N/2]."""
    s = s % n
    return n - s if 2 * s > n else s


def expand(n: int, s: int) -> EuclidExpansion:
    """Run the signed-remainder chain for Z/N, S = (1, s).

    Inputs with N/2 < s < N are first replaced by N - s; s = 1 (or N - 1)
    yields the trivial one-division expansion.  Raises for s = 0 mod N or
    N < 2.
    """
    if n < 2:
        raise ExpansionError(f"modulus must be >= 2, got {n}")
    s0 = normalize_step(n, s)
    if s0 == 0:
        raise ExpansionError(f"step {s} is 0 mod {n}")
    rs = [n, s0]
    qs: list[int] = []
    eps: list[int] = []
    while rs[-1] != 0:
        b, a = rs[-2], rs[-1]
        q0, rem = divmod(b, a)
        if rem == 0:
            step = (q0, 1, 0)
        elif 2 * rem <= a:
            step = (q0, -1, rem)
        else:
            step = (q0 + 1, 1, a - rem)
        qs.append(step[0])
        eps.append(step[1])
        rs.append(step[2])
    ms = [0, 1]
    for t, q in enumerate(qs):
        lag = eps[t - 1] if t >= 1 else 0
        ms.append(q * ms[-1] - lag * ms[-2])
    exp = EuclidExpansion(
        modulus=n,
        step=s0,
        r_seq=tuple(rs),
        q_seq=tuple(qs),
        eps_seq=tuple(eps),
        m_seq=tuple(ms),
        K=len(rs) - 3,
    )
    exp.validate()
    return exp


def step_length(exp: EuclidExpansion, i: int) -> int:
    """m_i: the least |l| != 0 with l*s = eps_bar_i * r_i mod N (0 <= i <= K)."""
    if not 0 <= i <= exp.K:
        raise IndexError(f"step_length index {i} outside [0, {exp.K}]")
    return exp.m(i)


def diameter_formula(exp: EuclidExpansion, alphas: tuple[float, float]) -> tuple[float, int]:
    """M = min over -1 <= i <= K of max(Phi_a1(r_i), Phi_a2(m_{i+1})), with argmin.

    a1 is attached to the unit generator (small steps, counted by r_i), a2 to
    the s generator (counted by m_{i+1}).  The true diameter D obeys
    2^(-5(a1+a2)) M <= D <= M.
    """
    a1, a2 = alphas
    best = math.inf
    best_i = -1
    for i in range(-1, exp.K + 1):
        val = max(phi_alpha(a1, exp.r(i)), phi_alpha(a2, exp.m(i + 1)))
        if val < best:
            best = val
            best_i = i
    return best, best_i


def sandwich_lower_factor(alphas: tuple[float, float]) -> float:
    a1, a2 = alphas
    return 2.0 ** (-5.0 * (a1 + a2))


def hard_element(exp: EuclidExpansion, i: int) -> int:
    """A witness element with cost >= 2^(-5(a1+a2)) min(Phi_a1(r_{i-1}), Phi_a2(m_{i+1})).

    x_i = floor(q_{i+1}/2) * r_i when q_{i+1} >= 8, else r_i (0 <= i <= K).
    """
    if not 0 <= i <= exp.K:
        raise IndexError(f"hard_element index {i} outside [0, {exp.K}]")
    q = exp.q(i + 1)
    if q >= 8:
        return ((q // 2) * exp.r(i)) % exp.modulus
    return exp.r(i) % exp.modulus
