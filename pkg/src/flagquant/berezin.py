"""Exact Berezin quantization of CP^1 with the line bundle O(n).

Conventions, fixed once for the whole package:

* Chart ``z`` on CP^1 minus a point; sections of O(n) are polynomials of degree
  at most n, with basis ``z^k``. The hermitian metric is
  ``h(s1, s2) = s1 * conj(s2) * (1 + z zbar)^(-n)`` and ``dmu`` is the
  rotation-invariant measure of total volume 1,
  ``dmu = dx dy / (pi (1 + z zbar)^2)``.
* Operators are matrices acting on coefficient columns: ``A z^k = sum_j A[j][k] z^j``.
* Complexified su(2) is spanned by E, F, H with ``[E, F] = H``,
  ``[H, E] = 2E``, ``[H, F] = -2F``. On sections

      tau(E) z^k = k z^(k-1),  tau(F) z^k = (n-k) z^(k+1),  tau(H) z^k = (n-2k) z^k,

  whose holomorphic parts are the Mobius fields ``xi_E = d/dz``,
  ``xi_F = -z^2 d/dz``, ``xi_H = -2z d/dz``.
* On symbols the generators act by ``l_X = xi_X + sigma_X`` with
  ``sigma_E = n zbar/(1+z zbar)``, ``sigma_F = n z/(1+z zbar)``,
  ``sigma_H = n(1-z zbar)/(1+z zbar)``, and ``sigma_X = i f_X``.
  The real moment functions belong to the compact generators
  ``iH``, ``E-F`` and ``i(E+F)``; the one for ``iH`` is
  ``n(1 - z zbar)/(1 + z zbar)``, equal to n at z = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Iterable, Sequence

from .symbolic import I, FormalOperator, GaussRational, RationalExpr, Z, ZBAR, parse_expr
from .symbolic.expr import RING, one_plus_zzbar_power

GENERATORS = ("E", "F", "H")

Matrix = list[list[GaussRational]]


class BerezinError(ValueError):
    pass


# -- integration -------------------------------------------------------------------

def _monomial_integral(a: int, b: int, c: int) -> Fraction:
    """Integral of z^a zbar^b (1+z zbar)^(-c) against dmu."""
    if a + b >= 2 * c + 2:
        raise BerezinError(f"z^{a} zbar^{b} (1+z zbar)^-{c} is not integrable on CP^1")
    if a != b:
        return Fraction(0)
    return Fraction(factorial(a) * factorial(c - a), factorial(c + 1))


def exact_integral(e: RationalExpr | str) -> GaussRational:
    """Exact integral over CP^1 of a function ``P(z, zbar) / (1 + z zbar)^c``."""
    if isinstance(e, str):
        e = parse_expr(e)
    if e.is_zero():
        return GaussRational(0)
    den = e.den
    c = den.degree(0) if not den.is_ground else 0
    if den != one_plus_zzbar_power(c):
        raise BerezinError(f"unsupported denominator in {e}; expected a power of (1 + z*zbar)")
    total = GaussRational(0)
    for (a, b), coeff in e.terms().items():
        v = _monomial_integral(a, b, c)
        if v:
            total = total + coeff * v
    return total


# -- the model ------------------------------------------------------------------------

def _one_plus_t(c: int) -> RationalExpr:
    return RationalExpr(one_plus_zzbar_power(c), None, None, _canonical=True)


@dataclass(frozen=True)
class Cp1Model:
    """Holomorphic sections of O(n) over CP^1 with their L^2 structure."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise BerezinError(f"n must be a non-negative integer, got {self.n!r}")

    @property
    def N(self) -> int:
        return self.n + 1

    @cached_property
    def norm_sq(self) -> tuple[Fraction, ...]:
        return tuple(monomial_norms(self))

    @cached_property
    def potential_dzbar(self) -> RationalExpr:
        """Derivative in zbar of the potential n log(1 + z zbar)."""
        return parse_expr(f"{self.n}*z/(1+z*zbar)")

    @cached_property
    def metric(self) -> RationalExpr:
        """Kahler metric coefficient d^2 Phi / dz dzbar."""
        return self.potential_dzbar.diff(Z)

    def h(self, s1: RationalExpr, s2: RationalExpr) -> RationalExpr:
        return s1 * s2.conjugate() / _one_plus_t(self.n)

    def inner(self, s1: RationalExpr, s2: RationalExpr) -> GaussRational:
        return exact_integral(self.h(s1, s2))

    def section(self, k: int) -> RationalExpr:
        return RationalExpr.monomial(k, 0)

    def identity(self) -> Matrix:
        return identity_matrix(self.N)


def monomial_norms(model: Cp1Model) -> list[Fraction]:
    """``||z^k||^2`` computed from the integral of ``h(z^k, z^k)``."""
    out = []
    for k in range(model.N):
        s = model.section(k)
        out.append(model.inner(s, s).real_fraction())
    return out


# -- matrices ------------------------------------------------------------------------

def zero_matrix(N: int) -> Matrix:
    return [[GaussRational(0) for _ in range(N)] for _ in range(N)]


def identity_matrix(N: int) -> Matrix:
    m = zero_matrix(N)
    for i in range(N):
        m[i][i] = GaussRational(1)
    return m


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    N = len(A)
    out = zero_matrix(N)
    for i in range(N):
        row = A[i]
        for k in range(N):
            a = row[k]
            if not a:
                continue
            bk = B[k]
            oi = out[i]
            for j in range(N):
                if bk[j]:
                    oi[j] = oi[j] + a * bk[j]
    return out


def mat_add(A: Matrix, B: Matrix, scale=1) -> Matrix:
    return [[a + b * scale for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    c = GaussRational.coerce(c)
    return [[a * c for a in row] for row in A]


def trace(A: Matrix) -> GaussRational:
    t = GaussRational(0)
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return mat_add(mat_mul(A, B), mat_mul(B, A), -1)


def _check_size(model: Cp1Model, A: Matrix) -> None:
    if len(A) != model.N or any(len(r) != model.N for r in A):
        raise BerezinError(f"operator must be {model.N}x{model.N} for n={model.n}")


# -- coherent states and symbols ---------------------------------------------------------

def coherent_eval(model: Cp1Model, w) -> list[GaussRational]:
    """Coefficients of the coherent state e_w in the monomial basis: ``conj(w)^k / ||z^k||^2``."""
    wb = GaussRational.coerce(w).conjugate()
    out, p = [], GaussRational(1)
    for k in range(model.N):
        out.append(p / model.norm_sq[k])
        p = p * wb
    return out


def inner_coeffs(model: Cp1Model, u: Sequence, v: Sequence) -> GaussRational:
    """Inner product of two sections given by coefficient sequences."""
    t = GaussRational(0)
    for k in range(model.N):
        t = t + GaussRational.coerce(u[k]) * GaussRational.coerce(v[k]).conjugate() * model.norm_sq[k]
    return t


def overlap(model: Cp1Model) -> RationalExpr:
    """``S(x) = <e_x, e_x> = sum_k |x|^(2k) / ||z^k||^2``."""
    s = RationalExpr.const(0)
    for k in range(model.N):
        s = s + RationalExpr.monomial(k, k, 1 / model.norm_sq[k])
    return s


def covariant_symbol(model: Cp1Model, A: Matrix) -> RationalExpr:
    """``<A e_x, e_x> / <e_x, e_x>`` as a rational function of z = x."""
    _check_size(model, A)
    re, im = {}, {}
    for j in range(model.N):
        for k in range(model.N):
            a = A[j][k]
            if not a:
                continue
            w = a / model.norm_sq[k]
            if w.re:
                re[(j, k)] = w.re
            if w.im:
                im[(j, k)] = w.im
    num = RationalExpr(RING.from_dict(re) if re else None, RING.from_dict(im) if im else None)
    return num / overlap(model)


def covariant_symbol_at(model: Cp1Model, A: Matrix, x) -> GaussRational:
    """Value of the covariant symbol at the chart point x, without building the rational function."""
    x = GaussRational.coerce(x)
    xb = x.conjugate()
    xp, xbp = [GaussRational(1)], [GaussRational(1)]
    for _ in range(model.n):
        xp.append(xp[-1] * x)
        xbp.append(xbp[-1] * xb)
    num = GaussRational(0)
    for j in range(model.N):
        row = A[j]
        for k in range(model.N):
            if row[k]:
                num = num + row[k] * xp[j] * xbp[k] / model.norm_sq[k]
    s = GaussRational(model.N) * (1 + x * xb) ** model.n
    return num / s


def contravariant_hat(model: Cp1Model, g: RationalExpr | str) -> Matrix:
    """Toeplitz operator of g: entries ``<g z^k, z^j> / ||z^j||^2``."""
    if isinstance(g, str):
        g = parse_expr(g)
    out = zero_matrix(model.N)
    w = g / _one_plus_t(model.n)
    for j in range(model.N):
        for k in range(model.N):
            v = exact_integral(w * RationalExpr.monomial(k, j))
            if v:
                out[j][k] = v / model.norm_sq[j]
    return out


def operator_from_symbol(model: Cp1Model, f: RationalExpr | str) -> Matrix:
    """The operator whose covariant symbol is f (inverse of :func:`covariant_symbol`).

    f is a covariant symbol iff ``f * S`` is a polynomial of bidegree at most (n, n).
    """
    if isinstance(f, str):
        f = parse_expr(f)
    p = f * overlap(model)
    if not p.den.is_ground or p.den != RING.one:
        raise BerezinError(f"{f} is not a covariant symbol for n={model.n}")
    out = zero_matrix(model.N)
    for (j, k), c in p.terms().items():
        if j > model.n or k > model.n:
            raise BerezinError(f"{f} is not a covariant symbol for n={model.n}")
        out[j][k] = c * model.norm_sq[k]
    return out


# -- su(2) -----------------------------------------------------------------------------

# holomorphic vector fields a(z) d/dz as coefficient lists of a
XI = {"E": (1,), "F": (0, 0, -1), "H": (0, -2)}
# structure constants [X, Y] as (coefficient, generator) lists
BRACKET = {
    ("E", "F"): ((1, "H"),),
    ("H", "E"): ((2, "E"),),
    ("H", "F"): ((-2, "F"),),
}


def bracket(X: str, Y: str) -> dict[str, int]:
    if X == Y:
        return {}
    if (X, Y) in BRACKET:
        return {g: c for c, g in BRACKET[(X, Y)]}
    return {g: -c for c, g in BRACKET[(Y, X)]}


def xi_coeff(X: str) -> RationalExpr:
    return sum((RationalExpr.monomial(k, 0, c) for k, c in enumerate(XI[X]) if c), RationalExpr.const(0))


def sigma1(X: str, n: int | Fraction = 1) -> RationalExpr:
    """``sigma_X = l_X 1`` for the bundle O(n)."""
    s = {"E": "zbar/(1+z*zbar)", "F": "z/(1+z*zbar)", "H": "(1-z*zbar)/(1+z*zbar)"}[X]
    return parse_expr(s) * Fraction(n)


def tau(model: Cp1Model, X: str) -> Matrix:
    n, out = model.n, zero_matrix(model.N)
    for k in range(model.N):
        if X == "E" and k > 0:
            out[k - 1][k] = GaussRational(k)
        elif X == "F" and k < n:
            out[k + 1][k] = GaussRational(n - k)
        elif X == "H":
            out[k][k] = GaussRational(n - 2 * k)
    return out


def tau_word(model: Cp1Model, word: Iterable[str]) -> Matrix:
    out = identity_matrix(model.N)
    for X in word:
        out = mat_mul(out, tau(model, X))
    return out


@dataclass(frozen=True)
class MomentFamily:
    """Moment functions and holomorphic fields of su(2) acting on CP^1 through O(n).

    ``complex_f`` holds ``f_X = -i sigma_X`` for the complexified generators;
    ``real_f`` holds the real moment functions of the compact generators.
    """

    n: int
    xi: dict
    complex_f: dict
    real_f: dict

    def f(self, X: str) -> RationalExpr:
        return self.complex_f[X]


COMPACT = {"iH": {"H": I}, "E-F": {"E": 1, "F": -1}, "i(E+F)": {"E": I, "F": I}}


def _combine(coeffs: dict, table: dict) -> RationalExpr:
    out = RationalExpr.const(0)
    for g, c in coeffs.items():
        out = out + table[g] * GaussRational.coerce(c)
    return out


def su2_model(model: Cp1Model) -> tuple[MomentFamily, dict[str, Matrix]]:
    xi = {X: xi_coeff(X) for X in GENERATORS}
    cf = {X: sigma1(X, model.n) * (-I) for X in GENERATORS}
    xi.update({k: _combine(v, xi) for k, v in COMPACT.items()})
    rf = {k: _combine(v, cf) for k, v in COMPACT.items()}
    taus = {X: tau(model, X) for X in GENERATORS}
    return MomentFamily(model.n, xi, cf, rf), taus


def moment_identity_holds(fam: MomentFamily, X: str) -> bool:
    """``d f_X / dzbar = -i a_X g`` for the field ``a_X d/dz`` and metric ``g = n/(1+z zbar)^2``."""
    f = fam.real_f.get(X, fam.complex_f.get(X))
    g = parse_expr(f"{fam.n}/(1+z*zbar)^2")
    return f.diff(ZBAR) == fam.xi[X] * g * (-I)


def equivariance_holds(fam: MomentFamily, X: str, Y: str) -> bool:
    """``xi_X f_Y - xi_Y f_X = f_[X,Y]`` for complexified generators."""
    lhs = fam.xi[X] * fam.f(Y).diff(Z) - fam.xi[Y] * fam.f(X).diff(Z)
    rhs = _combine(bracket(X, Y), fam.complex_f)
    return lhs == rhs


# -- sigma map -----------------------------------------------------------------------------

def l_operator(X: str, n: int | Fraction = 1, order: int = 0) -> FormalOperator:
    """``l_X = xi_X + sigma_X`` as a differential operator on functions."""
    return FormalOperator({0: (sigma1(X, n), xi_coeff(X))}, order)


def l_operator_hbar(X: str, order: int) -> FormalOperator:
    """``xi_X + nu^-1 sigma^(1)_X``; at nu = 1/n this is the operator of O(n)."""
    return FormalOperator({-1: (sigma1(X, 1),), 0: (RationalExpr.const(0), xi_coeff(X))}, order)


def sigma_map(model: Cp1Model, word: Sequence[str]) -> RationalExpr:
    """``sigma_u = l_X1 ... l_Xk 1`` computed by differentiation."""
    f = RationalExpr.const(1)
    for X in reversed(word):
        f = l_operator(X, model.n).apply(f).get(0, RationalExpr.const(0))
    return f


def sigma_hbar(word: Sequence[str]) -> dict[int, RationalExpr]:
    """``sigma^(hbar)_u`` as a polynomial in t = 1/hbar: {power of t: coefficient}."""
    series: dict[int, RationalExpr] = {0: RationalExpr.const(1)}
    for X in reversed(word):
        series = l_operator_hbar(X, 0).apply(series)
    return {-d: c for d, c in series.items()}


def sigma_hbar_at(word: Sequence[str], n: int) -> RationalExpr:
    out = RationalExpr.const(0)
    for p, c in sigma_hbar(word).items():
        out = out + c * (Fraction(n) ** p)
    return out


def top_coefficient_holds(word: Sequence[str]) -> bool:
    """Top coefficient of ``sigma^(hbar)_u`` in 1/hbar is the product of the ``sigma^(1)_X``."""
    poly = sigma_hbar(word)
    d = len(word)
    prod = RationalExpr.const(1)
    for X in word:
        prod = prod * sigma1(X, 1)
    return poly.get(d, RationalExpr.const(0)) == prod and all(p <= d for p in poly)


CASIMIR = ((1, ("H", "H")), (2, ("E", "F")), (2, ("F", "E")))


def casimir_matrix(model: Cp1Model) -> Matrix:
    out = zero_matrix(model.N)
    for c, w in CASIMIR:
        out = mat_add(out, tau_word(model, w), c)
    return out


def casimir_symbol(model: Cp1Model) -> RationalExpr:
    out = RationalExpr.const(0)
    for c, w in CASIMIR:
        out = out + sigma_map(model, w) * c
    return out


# -- identities -----------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceCheck:
    word: tuple[str, ...]
    n: int
    integral_side: GaussRational
    trace_side: GaussRational

    @property
    def passed(self) -> bool:
        return self.integral_side == self.trace_side

    def to_json(self) -> dict:
        return {
            "word": "".join(self.word) or "1",
            "n": self.n,
            "N_integral": str(self.integral_side),
            "trace": str(self.trace_side),
            "passed": self.passed,
        }


def trace_identity_check(model: Cp1Model, word: Sequence[str]) -> TraceCheck:
    """Compare ``N * integral(sigma_u)`` with ``tr tau(u)``."""
    word = tuple(word)
    lhs = exact_integral(sigma_map(model, word)) * model.N
    rhs = trace(tau_word(model, word))
    return TraceCheck(word, model.n, lhs, rhs)


def toeplitz_pairing(model: Cp1Model, A: Matrix, g: RationalExpr) -> tuple[GaussRational, GaussRational]:
    """Both sides of ``tr(A ghat) = N * integral(f_A g)``."""
    lhs = trace(mat_mul(A, contravariant_hat(model, g)))
    rhs = exact_integral(covariant_symbol(model, A) * g) * model.N
    return lhs, rhs


def parse_word(text: str) -> tuple[str, ...]:
    text = text.strip().upper()
    if text in ("", "1"):
        return ()
    bad = set(text) - set(GENERATORS)
    if bad:
        raise BerezinError(f"word letters must be among E, F, H; got {''.join(sorted(bad))}")
    return tuple(text)


def all_words(max_len: int) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_len):
        frontier = [w + (X,) for w in frontier for X in GENERATORS]
        out.extend(frontier)
    return out


def binomial_norm(n: int, k: int) -> Fraction:
    """Closed form ``k!(n-k)!/(n+1)!`` of ``||z^k||^2``."""
    return Fraction(1, (n + 1) * comb(n, k))
