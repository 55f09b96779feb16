"""Star product with separation of variables on the CP^1 chart.

The left multiplication operator ``L_f = sum_r nu^r A_r`` is the unique formal
series of holomorphic differential operators that commutes with ``zbar`` and with
``Phi_zbar + nu d/dzbar`` and satisfies ``L_f 1 = f``. Writing the potential
derivative as a nu-series ``Phi_zbar = sum_j nu^j phi_j``, degree r of the
commutation identity reads

    [A_r, phi_0] = -[A_(r-1), d/dzbar] - sum_(j>=1) [A_(r-j), phi_j],

which is solved for the coefficients of ``A_r`` from the highest power of d/dz
down, with ``A_r 1 = 0`` for r >= 1. Then ``f * g = L_f g`` and
``C_r(f, g) = A_r g``.

With this normalization ``C_1(f, g) = g^-1 df/dzbar dg/dz`` where
``g = d phi_0/dz`` is the metric coefficient, and the Poisson bracket for which
``C_1(f, g) - C_1(g, f) = i {f, g}`` is ``{f, g} = i g^-1 (f_z g_zbar - f_zbar g_z)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

from . import berezin as bz
from .symbolic import I, FormalOperator, RationalExpr, Z, ZBAR, parse_expr, series_equal

DEFAULT_ORDER_ENV = "FLAGQUANT_ORDER"

_ZERO = RationalExpr.const(0)


def default_order() -> int:
    raw = os.environ.get(DEFAULT_ORDER_ENV, "3")
    try:
        r = int(raw)
    except ValueError:
        raise StarError(f"{DEFAULT_ORDER_ENV} must be an integer, got {raw!r}") from None
    if r < 0:
        raise StarError(f"{DEFAULT_ORDER_ENV} must be non-negative")
    return r


class StarError(ValueError):
    pass


def _expr(f) -> RationalExpr:
    if isinstance(f, str):
        return parse_expr(f)
    return RationalExpr._lift(f)


@dataclass(frozen=True, eq=False)
class StarContext:
    """Potential data: ``phi[j]`` is the nu^j coefficient of dPhi/dzbar."""

    phi: tuple[RationalExpr, ...]
    order: int = 3
    _derivs: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.phi:
            raise StarError("empty potential")
        if self.metric.is_zero():
            raise StarError("degenerate potential: d^2 Phi/dz dzbar vanishes identically")

    @classmethod
    def fubini_study(cls, scale=1, order: int | None = None) -> "StarContext":
        """Potential ``scale * log(1 + z zbar)``."""
        phi = parse_expr("z/(1+z*zbar)") * Fraction(scale)
        return cls((phi,), default_order() if order is None else order)

    @classmethod
    def from_series(cls, phis: Sequence, order: int | None = None) -> "StarContext":
        return cls(tuple(_expr(p) for p in phis), default_order() if order is None else order)

    @cached_property
    def metric(self) -> RationalExpr:
        return self.phi[0].diff(Z)

    @cached_property
    def metric_inv(self) -> RationalExpr:
        return self.metric.reciprocal()

    def phi_deriv(self, m: int) -> RationalExpr:
        """m-th z-derivative of phi_0."""
        d = self._derivs.setdefault("phi0", [self.phi[0]])
        while len(d) <= m:
            d.append(d[-1].diff(Z))
        return d[m]

    def with_order(self, order: int) -> "StarContext":
        return StarContext(self.phi, order)

    def constraint_operator_terms(self) -> FormalOperator:
        return FormalOperator({j: (p,) for j, p in enumerate(self.phi)}, self.order)


def _solve_degree(ctx: StarContext, rhs: tuple[RationalExpr, ...]) -> list[RationalExpr]:
    """Solve ``[A, phi_0] = B`` for A with ``A 1 = 0``; rhs lists the coefficients of B."""
    J = len(rhs) - 1
    a = [_ZERO] * (J + 2)
    ginv = ctx.metric_inv
    for j in range(J, -1, -1):
        acc = rhs[j]
        for k in range(j + 2, J + 2):
            if not a[k].is_zero():
                acc = acc - a[k] * ctx.phi_deriv(k - j) * comb(k, k - j)
        a[j + 1] = acc * ginv * Fraction(1, j + 1)
    return a


def build_left_operator(ctx: StarContext, f) -> FormalOperator:
    """The left star-multiplication operator L_f through order ``ctx.order``."""
    f = _expr(f)
    R = ctx.order
    A: dict[int, tuple[RationalExpr, ...]] = {0: (f,)}
    for r in range(1, R + 1):
        prev = FormalOperator({0: A[r - 1]}, R)
        rhs = -prev.zbar_commutator()
        for j in range(1, min(r, len(ctx.phi) - 1) + 1):
            Aj = FormalOperator({0: A[r - j]}, R)
            rhs = rhs - Aj.commutator(FormalOperator.mult(ctx.phi[j], R))
        coeffs = rhs.terms.get(0, ())
        A[r] = tuple(_solve_degree(ctx, coeffs)) if coeffs else ()
    L = FormalOperator(A, R)
    one = L.apply(RationalExpr.const(1))
    if not series_equal(one, {0: f}, R):
        raise StarError("recursion inconsistency: L_f 1 != f")
    return L


def constraint_residual(ctx: StarContext, L: FormalOperator) -> FormalOperator:
    """``[L, Phi_zbar] + nu [L, d/dzbar]``; zero through order R for a left operator."""
    return L.commutator(ctx.constraint_operator_terms()) + L.zbar_commutator().shift(1)


@dataclass(frozen=True)
class StarSeries:
    coefficients: tuple[RationalExpr, ...]

    def __getitem__(self, r: int) -> RationalExpr:
        return self.coefficients[r]

    def __len__(self) -> int:
        return len(self.coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, z, zbar=None) -> list:
        return [c.evaluate(z, zbar) for c in self.coefficients]

    def to_json(self, point=None) -> dict:
        """Coefficients keyed ``C0``, ``C1``, ... (and their values at ``point``)."""
        out = {"order": self.order, "coefficients": {f"C{r}": str(c) for r, c in enumerate(self.coefficients)}}
        if point is not None:
            out["values"] = {f"C{r}": str(v) for r, v in enumerate(self.evaluate(*point))}
        return out


def _as_star_series(s: dict, R: int) -> StarSeries:
    return StarSeries(tuple(s.get(r, _ZERO) for r in range(R + 1)))


def star(ctx: StarContext, f, g) -> StarSeries:
    L = build_left_operator(ctx, f)
    return _as_star_series(L.apply(_expr(g)), ctx.order)


def opposite_star(ctx: StarContext, f, g) -> StarSeries:
    """``f *~ g = g * f``, the product attached to the opposite form."""
    return star(ctx, g, f)


def poisson(ctx: StarContext, f, g) -> RationalExpr:
    f, g = _expr(f), _expr(g)
    return (f.diff(Z) * g.diff(ZBAR) - f.diff(ZBAR) * g.diff(Z)) * ctx.metric_inv * I


def c1_direct(ctx: StarContext, f, g) -> RationalExpr:
    """Closed form of the first cochain, ``g^-1 f_zbar g_z``."""
    f, g = _expr(f), _expr(g)
    return f.diff(ZBAR) * g.diff(Z) * ctx.metric_inv


def associativity_defect(ctx: StarContext, f, g, h, upto: int) -> list[RationalExpr]:
    """``sum_{i+j=r} C_i(C_j(f,g),h) - C_i(f,C_j(g,h))`` for r <= upto."""
    c = ctx.with_order(upto)
    fg = star(c, f, g)
    gh = star(c, g, h)
    Lf = build_left_operator(c, f)
    left = [build_left_operator(c, fg[j]) for j in range(upto + 1)]
    out = []
    for r in range(upto + 1):
        acc = _ZERO
        for j in range(r + 1):
            i = r - j
            acc = acc + left[j].apply(_expr(h)).get(i, _ZERO)
            acc = acc - Lf.apply(gh[j]).get(i, _ZERO)
        out.append(acc)
    return out


# -- moment operators ----------------------------------------------------------------------

def moment_operator(X: str, order: int) -> FormalOperator:
    """``l^(nu)_X = xi_X + nu^-1 sigma^(1)_X`` for the unit Fubini-Study potential."""
    return bz.l_operator_hbar(X, order)


def _combo(coeffs: dict, order: int) -> FormalOperator:
    out = FormalOperator.zero(order)
    for X, c in coeffs.items():
        out = out + moment_operator(X, order).scale(c)
    return out


@dataclass(frozen=True)
class OperatorCheck:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def moment_operator_checks(order: int = 3, test_functions: Sequence | None = None) -> list[OperatorCheck]:
    """Commutation with the left-operator constraints, bracket relations and Casimir scalarity."""
    ctx = StarContext.fubini_study(1, order)
    zbar_op = FormalOperator.mult(RationalExpr.zbar(), order)
    out = []
    for X in bz.GENERATORS:
        l = moment_operator(X, order)
        ok1 = l.commutator(zbar_op).is_zero()
        ok2 = constraint_residual(ctx, l).is_zero()
        out.append(OperatorCheck(f"[l_{X}, zbar] = 0", ok1))
        out.append(OperatorCheck(f"[l_{X}, Phi_zbar + nu d/dzbar] = 0", ok2))
    for X, Y in (("E", "F"), ("H", "E"), ("H", "F")):
        lhs = moment_operator(X, order).commutator(moment_operator(Y, order))
        rhs = _combo(bz.bracket(X, Y), order)
        out.append(OperatorCheck(f"[l_{X}, l_{Y}] = l_[{X},{Y}]", lhs == rhs))
    cas = casimir_operator(order)
    out.append(OperatorCheck("Casimir operator is scalar", cas.is_scalar(), repr(cas)))
    for f in test_functions or TEST_FUNCTIONS:
        f = _expr(f)
        applied = cas.apply(f)
        scalar = cas.scalar_series() if cas.is_scalar() else {}
        expected = {d: c * f for d, c in scalar.items()}
        out.append(OperatorCheck(f"Casimir acts as a constant on {f}",
                                 bool(scalar) and series_equal(applied, expected, order)))
    return out


def casimir_operator(order: int) -> FormalOperator:
    out = FormalOperator.zero(order)
    for c, w in bz.CASIMIR:
        term = moment_operator(w[0], order) @ moment_operator(w[1], order)
        out = out + term.scale(c)
    return out


# -- Berezin asymptotics ---------------------------------------------------------------------

TEST_FUNCTIONS = (
    "z*zbar/(1+z*zbar)",
    "z + zbar",
    "(1-z*zbar)/(1+z*zbar)",
    "zbar^2/(1+z*zbar)^2",
    "z*zbar^2 + i*z",
)

ASYMPTOTIC_PAIRS = {
    "fH": ("(1-z*zbar)/(1+z*zbar)", "(1-z*zbar)/(1+z*zbar)"),
    "fH2": ("(1-z*zbar)^2/(1+z*zbar)^2", "(1-z*zbar)^2/(1+z*zbar)^2"),
    "fEfF": ("zbar/(1+z*zbar)", "z/(1+z*zbar)"),
}

SAMPLE_POINTS = (Fraction(1, 2), Fraction(1), Fraction(2))


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    errors: tuple  # exact squared moduli per sample point
    max_error: float

    def to_json(self) -> dict:
        return {"n": self.n, "errors_sq": [str(e) for e in self.errors], "max_error": self.max_error}


@dataclass(frozen=True)
class AsymptoticReport:
    pair: str
    f: str
    g: str
    rows: tuple[AsymptoticRow, ...]
    min_ratio: float = 3.5

    @property
    def ratios(self) -> list[float | None]:
        out = []
        for a, b in zip(self.rows, self.rows[1:]):
            out.append(a.max_error / b.max_error if b.max_error else None)
        return out

    @property
    def passed(self) -> bool:
        # an error sequence that is identically zero is trivially of every order
        return all(b.max_error * self.min_ratio <= a.max_error for a, b in zip(self.rows, self.rows[1:]))

    def to_json(self) -> dict:
        return {
            "pair": self.pair,
            "f": self.f,
            "g": self.g,
            "rows": [r.to_json() for r in self.rows],
            "ratios": self.ratios,
            "passed": self.passed,
        }

    def to_csv(self) -> str:
        lines = ["pair,n,max_error"]
        lines += [f"{self.pair},{r.n},{r.max_error!r}" for r in self.rows]
        return "\n".join(lines) + "\n"


def asymptotic_row(f, g, n: int, points=SAMPLE_POINTS) -> AsymptoticRow:
    """Error of the two-term expansion of the Berezin product at hbar = 1/n."""
    f, g = _expr(f), _expr(g)
    model = bz.Cp1Model(n)
    A = bz.operator_from_symbol(model, f)
    B = bz.operator_from_symbol(model, g)
    AB = bz.mat_mul(A, B)
    ctx = StarContext.fubini_study(1, 1)
    two_term = f * g + c1_direct(ctx, f, g) * Fraction(1, n)
    errs = []
    for x in points:
        exact = bz.covariant_symbol_at(model, AB, x)
        diff = exact - two_term.evaluate(x)
        errs.append(diff.abs2())
    return AsymptoticRow(n, tuple(errs), max(float(e) for e in errs) ** 0.5)


def berezin_asymptotics(pair: str = "fH", ns: Sequence[int] = (8, 16, 32, 64), jobs: int = 1) -> AsymptoticReport:
    f, g = ASYMPTOTIC_PAIRS[pair]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(asymptotic_row, [f] * len(ns), [g] * len(ns), ns))
    else:
        rows = [asymptotic_row(f, g, n) for n in ns]
    rows.sort(key=lambda r: r.n)
    return AsymptoticReport(pair, f, g, tuple(rows))
