"""Independent reference implementations used only by the tests."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from scipy import integrate

from flagquant.bruteforce import euclidean_system
from flagquant.rootsys import Weight, _simple_root_vectors


def lattice_positive_roots(family: str, rank: int, bound: int) -> set[tuple[int, ...]]:
    """Nonnegative root-lattice vectors whose squared length is a simple-root length.

    Valid for root systems where every lattice vector of root length is a root
    (simply laced types, B_n, C_2, C_3, G_2).
    """
    vecs = _simple_root_vectors(family, rank)
    gram = [[sum(a * b for a, b in zip(u, v)) for v in vecs] for u in vecs]
    lengths = {gram[i][i] for i in range(rank)}
    out = set()
    for c in itertools.product(range(bound + 1), repeat=rank):
        if not any(c):
            continue
        n = sum(c[i] * c[j] * gram[i][j] for i in range(rank) for j in range(rank) if c[i] and c[j])
        if n in lengths:
            out.add(c)
    return out


def freudenthal_dim(family: str, rank: int, lam: Weight) -> int:
    """Dimension by summing weight multiplicities from Freudenthal's recursion."""
    es = euclidean_system(family, rank)
    pos = es.positive_roots
    simple = es.simple
    lv = es.to_vector(lam)
    rho = es.rho

    def ip(u, v):
        return sum(a * b for a, b in zip(u, v))

    def add(u, v, k=1):
        return tuple(a + k * b for a, b in zip(u, v))

    top = ip(add(lv, rho), add(lv, rho))
    # roots are scaled by root_scale, weights by weight_scale; bring roots to weight scale
    s = Fraction(es.weight_scale, es.root_scale)
    assert s.denominator == 1
    s = int(s)
    pos_w = [tuple(s * x for x in a) for a in pos]
    simple_w = [tuple(s * x for x in a) for a in simple]
    mult = {lv: 1}
    level = [lv]
    total = 1
    depth = 0
    while level:
        depth += 1
        cands = sorted({add(mu, a, -1) for mu in level for a in simple_w})
        level = []
        for mu in cands:
            acc = 0
            for a in pos_w:
                for k in range(1, depth + 1):
                    m = mult.get(add(mu, a, k), 0)
                    if m:
                        acc += 2 * ip(add(mu, a, k), a) * m
            d = top - ip(add(mu, rho), add(mu, rho))
            if acc == 0:
                continue
            m = Fraction(acc, d)
            assert m.denominator == 1 and m > 0
            mult[mu] = int(m)
            level.append(mu)
            total += int(m)
    return total


def quad_integral(f) -> float:
    """Numeric integral of f(z) over C against dx dy / (pi (1+|z|^2)^2), in polar coordinates."""
    def inner(r):
        val, _ = integrate.quad(lambda t: f(r * complex(math.cos(t), math.sin(t))).real, 0, 2 * math.pi,
                                epsabs=1e-13, epsrel=1e-13, limit=200)
        return val * r / (math.pi * (1 + r * r) ** 2)

    a, _ = integrate.quad(inner, 0, 1, epsabs=1e-13, epsrel=1e-13, limit=200)
    # r -> 1/r on the outer part
    b, _ = integrate.quad(lambda u: inner(1 / u) / (u * u), 0, 1, epsabs=1e-13, epsrel=1e-13, limit=200)
    return a + b
