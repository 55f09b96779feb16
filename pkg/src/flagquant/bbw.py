"""Bott-Borel-Weil bookkeeping and the Kodaira-Serre duality check."""
from __future__ import annotations

from dataclasses import dataclass, field

from .parabolic import ParabolicData, is_W_theta_invariant
from .rootsys import Weight, WeylWord


class BBWError(ValueError):
    pass


@dataclass(frozen=True)
class BBWResult:
    """Cohomology of L_lam: either zero in every degree, or one irreducible in degree k."""

    vanishes: bool
    degree: int | None = None
    highest_weight: Weight | None = None
    dim: int | None = None
    word: WeylWord = field(default_factory=WeylWord)

    def to_json(self) -> dict:
        if self.vanishes:
            return {"vanishes": True}
        return {
            "vanishes": False,
            "degree": self.degree,
            "highest_weight": self.highest_weight.to_json(),
            "dim": self.dim,
            "weyl_word": [i + 1 for i in self.word.letters],
        }


def bbw(pd: ParabolicData, lam: Weight) -> BBWResult:
    if not is_W_theta_invariant(pd, lam):
        raise BBWError(f"{lam} is not an integral W^Theta-invariant weight for {pd.describe()}")
    rs = pd.rs
    shifted = lam + rs.rho
    pairs = rs.pairings(shifted)
    if any(p == 0 for p in pairs):
        return BBWResult(vanishes=True)
    k = sum(1 for p in pairs if p < 0)
    dom, word, _ = rs.to_dominant(shifted)
    zeta = dom - rs.rho
    return BBWResult(False, k, zeta, rs.weyl_dim(zeta), word)


@dataclass(frozen=True)
class DualityReport:
    lam: Weight
    lam_dual: Weight
    result: BBWResult
    dual_result: BBWResult
    m: int
    passed: bool
    failures: tuple[str, ...] = ()

    @property
    def status(self) -> str:
        """``both_vanish`` for singular lam + rho, ``dual`` when the check passes, else ``mismatch``."""
        if not self.passed:
            return "mismatch"
        return "both_vanish" if self.result.vanishes else "dual"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "lambda": self.lam.to_json(),
            "lambda_dual": self.lam_dual.to_json(),
            "m": self.m,
            "result": self.result.to_json(),
            "dual_result": self.dual_result.to_json(),
            "passed": self.passed,
            "failures": list(self.failures),
        }


def duality_check(pd: ParabolicData, lam: Weight) -> DualityReport:
    """Compare H^k(L_lam) with H^{m-k}(L_lam') for lam' = -lam - 2 delta'_Theta.

    When lam + rho is singular both sides must vanish; the report says so.
    """
    lam_dual = -lam - pd.delta_theta_prime * 2
    res = bbw(pd, lam)
    dres = bbw(pd, lam_dual)
    fails = []
    if res.vanishes or dres.vanishes:
        if res.vanishes != dres.vanishes:
            fails.append("exactly one side vanishes")
    else:
        if dres.degree != pd.m - res.degree:
            fails.append(f"degree {dres.degree} != m - k = {pd.m - res.degree}")
        expected = pd.rs.negate_by_w0(res.highest_weight)
        if dres.highest_weight != expected:
            fails.append(f"highest weight {dres.highest_weight} != -w0 zeta = {expected}")
        if dres.dim != res.dim:
            fails.append(f"dimension {dres.dim} != {res.dim}")
    return DualityReport(lam, lam_dual, res, dres, pd.m, not fails, tuple(fails))
