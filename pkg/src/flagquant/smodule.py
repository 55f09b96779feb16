"""s-modules on a flag manifold, parametrized by a weight-like point.

The point ``lam`` encodes the element E of the Cartan subalgebra through
``(E, J H_alpha) = lam(H_alpha)``. Integral W^Theta-invariant points are the
line-bundle modules; any rational point with zero Theta-coordinates is allowed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .parabolic import ParabolicData
from .rootsys import Weight

DEGENERATE = "degenerate"


class SModuleError(ValueError):
    pass


@dataclass(frozen=True)
class SModulePoint:
    pd: ParabolicData
    lam: Weight

    def __post_init__(self):
        if len(self.lam) != self.pd.rank:
            raise SModuleError("weight length does not match rank")
        bad = [i + 1 for i in sorted(self.pd.theta) if self.lam[i] != 0]
        if bad:
            raise SModuleError(
                f"lam must vanish on the coroots of Theta; nonzero at simple roots {bad}"
            )

    def complement_pairings(self) -> list:
        rs = self.pd.rs
        return [rs.pairing(self.lam, a) for a in self.pd.complement]

    def scaled(self, t) -> "SModulePoint":
        return SModulePoint(self.pd, self.lam * t)


def is_nondegenerate(s: SModulePoint) -> bool:
    return all(p != 0 for p in s.complement_pairings())


def inertia_index(s: SModulePoint) -> int | str:
    """Number of negative directions of the pseudo-Kahler metric, or ``"degenerate"``."""
    pairs = s.complement_pairings()
    if any(p == 0 for p in pairs):
        return DEGENERATE
    return sum(1 for p in pairs if p < 0)


def dual_smodule(s: SModulePoint) -> SModulePoint:
    """The dual module: lam' = -lam - 2 delta'_Theta (i.e. -s + s_can)."""
    return SModulePoint(s.pd, -s.lam - s.pd.delta_theta_prime * 2)
