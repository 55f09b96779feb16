"""Brute-force reference computations in the Euclidean realization of a root system.

Nothing here uses the Cartan-matrix machinery of :mod:`flagquant.rootsys`
beyond the simple-root vectors: weights become Euclidean vectors, Weyl orbits
are enumerated by breadth-first search, and dimensions come from the Weyl
product over roots found by orbit enumeration. These serve as independent
oracles for :mod:`flagquant.bbw` and :mod:`flagquant.rootsys`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

from .rootsys import Weight, _simple_root_vectors

Vec = tuple[int, ...]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _solve(M: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(b)
    A = [row[:] + [b[i]] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


def _lcm_den(xs) -> int:
    out = 1
    for x in xs:
        out = lcm(out, Fraction(x).denominator)
    return out


class EuclideanSystem:
    """Integer model: roots scaled by ``root_scale``, weights by ``weight_scale``.

    Reflections are scale invariant, so orbits can be enumerated with exact
    integer arithmetic.
    """

    def __init__(self, family: str, rank: int):
        self.family, self.rank = family, rank
        raw = _simple_root_vectors(family, rank)
        self.ambient = len(raw[0])
        self.root_scale = _lcm_den(x for a in raw for x in a)
        self.simple: list[Vec] = [tuple(int(x * self.root_scale) for x in a) for a in raw]
        self.norms = [_dot(a, a) for a in self.simple]
        G = [[Fraction(_dot(a, b)) for b in self.simple] for a in self.simple]
        fund = []
        for i in range(rank):
            rhs = [Fraction(self.norms[j], 2) if j == i else Fraction(0) for j in range(rank)]
            c = _solve(G, rhs)
            fund.append([sum((c[j] * self.simple[j][k] for j in range(rank)), Fraction(0))
                         for k in range(self.ambient)])
        self.weight_scale = lcm(_lcm_den(x for w in fund for x in w), self.root_scale)
        self._fund = [[x * self.weight_scale for x in w] for w in fund]

    def reflect(self, i: int, v: Vec) -> Vec:
        a = self.simple[i]
        num = 2 * _dot(v, a)
        if not num:
            return v
        c, rem = divmod(num, self.norms[i])
        assert rem == 0
        return tuple(x - c * y for x, y in zip(v, a))

    def to_vector(self, lam: Weight) -> Vec:
        out = [Fraction(0)] * self.ambient
        for i in range(self.rank):
            if lam[i]:
                out = [o + lam[i] * f for o, f in zip(out, self._fund[i])]
        if any(x.denominator != 1 for x in out):
            raise ValueError("only integral weights have an integer model")
        return tuple(int(x) for x in out)

    def to_weight(self, v: Vec) -> Weight:
        return Weight(tuple(Fraction(2 * _dot(v, a), n * self.weight_scale)
                            for a, n in zip(self.simple, self.norms)))

    def orbit(self, v: Vec) -> dict[Vec, int]:
        """Weyl orbit of v with the breadth-first distance of each element from v."""
        dist = {v: 0}
        q = deque([v])
        while q:
            u = q.popleft()
            for i in range(self.rank):
                w = self.reflect(i, u)
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def is_dominant(self, v: Vec) -> bool:
        return all(_dot(v, a) >= 0 for a in self.simple)

    @cached_property
    def rho(self) -> Vec:
        return self.to_vector(Weight(tuple(Fraction(1) for _ in range(self.rank))))

    @cached_property
    def weyl_order(self) -> int:
        return len(self.orbit(self.rho))

    @cached_property
    def positive_roots(self) -> list[Vec]:
        roots = set()
        for a in self.simple:
            roots.update(self.orbit(a))
        return sorted(r for r in roots if _dot(r, self.rho) > 0)

    def dim(self, zeta: Weight) -> int:
        v = self.to_vector(zeta)
        shifted = tuple(x + y for x, y in zip(v, self.rho))
        num, den = 1, 1
        for a in self.positive_roots:
            num *= _dot(shifted, a)
            den *= _dot(self.rho, a)
        q, rem = divmod(num, den)
        assert rem == 0
        return q

    def dominant_in_orbit(self, lam: Weight) -> Weight:
        """Walk to the dominant chamber by reflecting in any wall with negative pairing."""
        v = self.to_vector(lam)
        while True:
            i = next((i for i, a in enumerate(self.simple) if _dot(v, a) < 0), None)
            if i is None:
                return self.to_weight(v)
            v = self.reflect(i, v)


@lru_cache(maxsize=None)
def euclidean_system(family: str, rank: int) -> EuclideanSystem:
    return EuclideanSystem(family.upper(), rank)


@dataclass(frozen=True)
class OracleBBW:
    vanishes: bool
    degree: int | None = None
    highest_weight: Weight | None = None
    dim: int | None = None


def oracle_bbw(family: str, rank: int, lam: Weight) -> OracleBBW:
    """Cohomology of L_lam from the orbit of lam + rho.

    The orbit is smaller than W exactly when lam + rho is singular. Otherwise
    the degree is the breadth-first distance to the dominant chamber, which is
    the length of the Weyl element carrying lam + rho there.
    """
    es = euclidean_system(family, rank)
    mu = tuple(x + y for x, y in zip(es.to_vector(lam), es.rho))
    orb = es.orbit(mu)
    if len(orb) < es.weyl_order:
        return OracleBBW(True)
    dom = next(u for u in orb if es.is_dominant(u))
    zeta = es.to_weight(tuple(x - y for x, y in zip(dom, es.rho)))
    return OracleBBW(False, orb[dom], zeta, es.dim(zeta))


def oracle_negate_w0(family: str, rank: int, lam: Weight) -> Weight:
    """-w0(lam) for dominant lam: the dominant element in the orbit of -lam."""
    return euclidean_system(family, rank).dominant_in_orbit(-lam)
