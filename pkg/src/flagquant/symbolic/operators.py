"""Formal differential operators in the holomorphic derivative d/dz.

A :class:`FormalOperator` is a finite Laurent series ``sum_r nu^r A_r`` where
each ``A_r = sum_k a_{r,k} (d/dz)^k`` has :class:`RationalExpr` coefficients.
Terms of nu-degree above ``order`` are dropped by every operation.

A nu-series of functions is a plain ``dict[int, RationalExpr]``.
"""
from __future__ import annotations

from math import comb
from typing import Iterable, Mapping

from .expr import ZBAR, RationalExpr, Z

Series = dict[int, RationalExpr]

_ZERO = RationalExpr.const(0)


def _trim(coeffs: Iterable[RationalExpr]) -> tuple[RationalExpr, ...]:
    c = list(coeffs)
    while c and c[-1].is_zero():
        c.pop()
    return tuple(c)


def _derivs(f: RationalExpr, upto: int, cache: dict) -> list[RationalExpr]:
    out = cache.get(f)
    if out is None:
        out = [f]
        cache[f] = out
    while len(out) <= upto:
        out.append(out[-1].diff(Z))
    return out


class FormalOperator:
    """Immutable truncated formal series of holomorphic differential operators."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping[int, Iterable[RationalExpr]], order: int):
        clean = {}
        for deg, coeffs in terms.items():
            if deg > order:
                continue
            t = _trim(coeffs)
            if t:
                clean[deg] = t
        self.terms: dict[int, tuple[RationalExpr, ...]] = dict(sorted(clean.items()))
        self.order = order

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "FormalOperator":
        return cls({}, order)

    @classmethod
    def mult(cls, f, order: int, degree: int = 0) -> "FormalOperator":
        """Multiplication by ``nu^degree * f``."""
        f = RationalExpr._lift(f)
        return cls({degree: (f,)}, order)

    @classmethod
    def dz(cls, order: int, power: int = 1, degree: int = 0) -> "FormalOperator":
        """``nu^degree (d/dz)^power``."""
        coeffs = [_ZERO] * power + [RationalExpr.const(1)]
        return cls({degree: coeffs}, order)

    @classmethod
    def vector_field(cls, a, order: int, degree: int = 0) -> "FormalOperator":
        """``a(z) d/dz``."""
        return cls({degree: (_ZERO, RationalExpr._lift(a))}, order)

    # -- structure ------------------------------------------------------------

    def coeff(self, degree: int, k: int) -> RationalExpr:
        t = self.terms.get(degree, ())
        return t[k] if k < len(t) else _ZERO

    def min_degree(self) -> int | None:
        return min(self.terms) if self.terms else None

    def derivative_order(self) -> int:
        return max((len(t) - 1 for t in self.terms.values()), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        """True iff the operator is multiplication by a series with constant coefficients."""
        return all(len(t) == 1 and t[0].is_constant() for t in self.terms.values())

    def scalar_series(self) -> Series:
        if not self.is_scalar():
            raise ValueError("operator is not scalar")
        return {d: t[0] for d, t in self.terms.items()}

    def truncate(self, order: int) -> "FormalOperator":
        return FormalOperator(self.terms, min(order, self.order))

    def with_order(self, order: int) -> "FormalOperator":
        return FormalOperator(self.terms, order)

    # -- linear structure -------------------------------------------------------

    def __add__(self, other: "FormalOperator") -> "FormalOperator":
        order = min(self.order, other.order)
        out: dict[int, list[RationalExpr]] = {}
        for src in (self.terms, other.terms):
            for d, t in src.items():
                cur = out.setdefault(d, [])
                for k, c in enumerate(t):
                    if k < len(cur):
                        cur[k] = cur[k] + c
                    else:
                        cur.append(c)
        return FormalOperator(out, order)

    def __neg__(self) -> "FormalOperator":
        return FormalOperator({d: [-c for c in t] for d, t in self.terms.items()}, self.order)

    def __sub__(self, other: "FormalOperator") -> "FormalOperator":
        return self + (-other)

    def scale(self, c) -> "FormalOperator":
        c = RationalExpr._lift(c)
        return FormalOperator({d: [c * x for x in t] for d, t in self.terms.items()}, self.order)

    def shift(self, k: int) -> "FormalOperator":
        """Multiply by ``nu^k``."""
        return FormalOperator({d + k: t for d, t in self.terms.items()}, self.order)

    # -- composition -------------------------------------------------------------

    def __matmul__(self, other: "FormalOperator") -> "FormalOperator":
        """Composition ``self o other`` (apply ``other`` first)."""
        order = min(self.order, other.order)
        cache: dict = {}
        out: dict[int, list[RationalExpr]] = {}
        for d1, t1 in self.terms.items():
            for d2, t2 in other.terms.items():
                d = d1 + d2
                if d > order:
                    continue
                cur = out.setdefault(d, [])
                for j, a in enumerate(t1):
                    if a.is_zero():
                        continue
                    for k, b in enumerate(t2):
                        if b.is_zero():
                            continue
                        bd = _derivs(b, j, cache)
                        for m in range(j + 1):
                            if bd[m].is_zero():
                                continue
                            idx = j - m + k
                            term = a * bd[m] * comb(j, m)
                            while len(cur) <= idx:
                                cur.append(_ZERO)
                            cur[idx] = cur[idx] + term
        return FormalOperator(out, order)

    def commutator(self, other: "FormalOperator") -> "FormalOperator":
        return (self @ other) - (other @ self)

    def zbar_commutator(self) -> "FormalOperator":
        """``[self, d/dzbar] = -sum (d a_k/dzbar) (d/dz)^k``."""
        return FormalOperator(
            {d: [-c.diff(ZBAR) for c in t] for d, t in self.terms.items()}, self.order
        )

    # -- action on functions ----------------------------------------------------------

    def apply(self, f) -> Series:
        """Apply to a function or to a nu-series of functions."""
        series = _as_series(f)
        cache: dict = {}
        out: Series = {}
        for d1, t in self.terms.items():
            for d2, g in series.items():
                d = d1 + d2
                if d > self.order:
                    continue
                gd = _derivs(g, len(t) - 1, cache)
                acc = out.get(d, _ZERO)
                for k, a in enumerate(t):
                    if not a.is_zero() and not gd[k].is_zero():
                        acc = acc + a * gd[k]
                out[d] = acc
        return {d: v for d, v in sorted(out.items()) if not v.is_zero()}

    # -- identity ---------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FormalOperator):
            return NotImplemented
        order = min(self.order, other.order)
        a = {d: t for d, t in self.terms.items() if d <= order}
        b = {d: t for d, t in other.terms.items() if d <= order}
        return a == b

    def __repr__(self):
        parts = []
        for d, t in self.terms.items():
            for k, c in enumerate(t):
                if c.is_zero():
                    continue
                nu = "" if d == 0 else ("nu*" if d == 1 else f"nu^{d}*")
                dz = "" if k == 0 else ("*d" if k == 1 else f"*d^{k}")
                parts.append(f"{nu}({c}){dz}")
        return f"FormalOperator[{' + '.join(parts) or '0'}; order {self.order}]"


def _as_series(f) -> Series:
    if isinstance(f, dict):
        return {d: RationalExpr._lift(v) for d, v in f.items()}
    return {0: RationalExpr._lift(f)}


def op_apply(A: FormalOperator, f) -> Series:
    return A.apply(f)


def op_commutator(A: FormalOperator, B: FormalOperator) -> FormalOperator:
    return A.commutator(B)


def series_equal(a: Mapping[int, RationalExpr], b: Mapping[int, RationalExpr], order: int) -> bool:
    keys = {k for k in (*a, *b) if k <= order}
    return all(a.get(k, _ZERO) == b.get(k, _ZERO) for k in keys)
