"""Parabolic data for a subset Theta of the simple roots."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .rootsys import Root, RootSystem, RootSystemError, Weight, root_system


@dataclass(frozen=True)
class ParabolicData:
    """Flag manifold data: the Levi roots, the complement and the half-sums.

    ``theta`` holds 0-based simple-root indices. ``span_theta`` is the set of
    positive roots supported on ``theta``; ``complement`` the remaining
    positive roots, whose count ``m`` is the complex dimension of the flag
    manifold.
    """

    rs: RootSystem
    theta: frozenset[int]
    span_theta: tuple[Root, ...]
    complement: tuple[Root, ...]
    delta_theta: Weight
    delta_theta_prime: Weight

    @property
    def m(self) -> int:
        return len(self.complement)

    @property
    def rank(self) -> int:
        return self.rs.rank

    def describe(self) -> str:
        th = ",".join(str(i + 1) for i in sorted(self.theta)) or "-"
        return f"{self.rs.name}[theta={th}]"


def _half_sum(rs: RootSystem, roots: Iterable[Root]) -> Weight:
    total = Weight.zero(rs.rank)
    for a in roots:
        for j, c in enumerate(a.coords):
            if c:
                total = total + rs.simple_root_weight(j) * c
    return total * Fraction(1, 2)


def build_parabolic(rs: RootSystem | tuple[str, int], theta: Iterable[int] = ()) -> ParabolicData:
    if isinstance(rs, tuple):
        rs = root_system(*rs)
    theta = frozenset(theta)
    bad = [i for i in theta if not 0 <= i < rs.rank]
    if bad:
        raise RootSystemError(f"theta indices {sorted(bad)} out of range for rank {rs.rank}")
    span, comp = [], []
    for a in rs.positive_roots:
        support = {j for j, c in enumerate(a.coords) if c}
        (span if support <= theta else comp).append(a)
    d_theta = _half_sum(rs, span)
    return ParabolicData(
        rs=rs,
        theta=theta,
        span_theta=tuple(span),
        complement=tuple(comp),
        delta_theta=d_theta,
        delta_theta_prime=rs.rho - d_theta,
    )


def is_W_theta_invariant(pd: ParabolicData, lam: Weight) -> bool:
    """True iff lam is integral and vanishes on the coroots of Theta."""
    if len(lam) != pd.rank:
        return False
    return lam.is_integral() and all(lam[i] == 0 for i in pd.theta)


def canonical_weight(pd: ParabolicData) -> Weight:
    """Weight of the canonical line bundle, -2 delta'_Theta."""
    return pd.delta_theta_prime * -2
