"""Exact rational functions of the chart variables z, zbar over Q(i).

An expression is stored as ``(re + i*im) / den`` with ``re``, ``im``, ``den``
polynomials over Q. Any complex denominator is made real by multiplying with
its conjugate, so reduction only ever needs polynomial gcds over Q. The
canonical form is: the real denominator of least degree, made monic in grlex
order (z > zbar internally). Two expressions are equal iff their canonical
triples coincide.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

RING, _Z, _ZB = ring("z,zb", QQ, grlex)
_ZERO = RING.zero
_ONE = RING.one

Z, ZBAR = "z", "zbar"
_VAR_INDEX = {Z: 0, ZBAR: 1, "zb": 1}


def _q(x):
    """Coerce int / Fraction / str / mpq to the ground rational type."""
    if isinstance(x, str):
        return QQ(Fraction(x.strip()))
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


class GaussRational:
    """Exact element a + b i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def coerce(cls, x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        return cls(x, 0)

    def __add__(self, o):
        o = GaussRational.coerce(o)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussRational.coerce(o)
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussRational.coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, RationalExpr):
            return NotImplemented
        o = GaussRational.coerce(o)
        return GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussRational.coerce(o)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussRational(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        return GaussRational.coerce(o) / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return GaussRational(1) / self ** (-k)
        out = GaussRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)) or type(o) is type(QQ(0)):
            return self.im == 0 and self.re == _q(o)
        if not isinstance(o, GaussRational):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def real_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return Fraction(int(self.re.numerator), int(self.re.denominator))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return format_gauss(self)

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"


I = GaussRational(0, 1)


def format_gauss(c: GaussRational) -> str:
    """Print in the expression grammar, e.g. ``3/2``, ``-i``, ``(1/2+3*i)``."""
    re, im = c.re, c.im
    if not im:
        return str(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{im}*i"
    if not re:
        return ims
    sign = "" if ims.startswith("-") else "+"
    return f"({re}{sign}{ims})"


# -- polynomial helpers --------------------------------------------------

def _swap(p):
    return RING.from_dict({(b, a): c for (a, b), c in p.items()}) if p else _ZERO


def _gcd(a, b):
    if not a:
        return b
    if not b:
        return a
    return a.gcd(b)


def _eval_poly(p, zv: GaussRational, zbv: GaussRational) -> GaussRational:
    if not p:
        return GaussRational(0)
    da, db = p.degree(0), p.degree(1)
    zp = [GaussRational(1)]
    for _ in range(max(da, 0)):
        zp.append(zp[-1] * zv)
    zbp = [GaussRational(1)]
    for _ in range(max(db, 0)):
        zbp.append(zbp[-1] * zbv)
    re = QQ(0)
    im = QQ(0)
    for (a, b), c in p.items():
        m = zp[a] * zbp[b]
        re += c * m.re
        im += c * m.im
    return GaussRational(re, im)


@lru_cache(maxsize=None)
def one_plus_zzbar_power(c: int):
    """(1 + z zbar)^c as a polynomial."""
    return (_ONE + _Z * _ZB) ** c


class RationalExpr:
    """Immutable canonical rational function in z, zbar with Q(i) coefficients."""

    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, re, im=None, den=None, *, _canonical=False):
        re = re if re is not None else _ZERO
        im = im if im is not None else _ZERO
        den = den if den is not None else _ONE
        if not _canonical:
            re, im, den = _normalize(re, im, den)
        self.re, self.im, self.den = re, im, den
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "RationalExpr":
        c = GaussRational.coerce(c)
        return cls(RING(c.re), RING(c.im), _ONE, _canonical=True)

    @classmethod
    def z(cls) -> "RationalExpr":
        return cls(_Z, _ZERO, _ONE, _canonical=True)

    @classmethod
    def zbar(cls) -> "RationalExpr":
        return cls(_ZB, _ZERO, _ONE, _canonical=True)

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "RationalExpr":
        """coeff * z^a zbar^b."""
        c = GaussRational.coerce(coeff)
        m = RING.from_dict({(a, b): QQ(1)})
        return cls(m.mul_ground(c.re), m.mul_ground(c.im), _ONE, _canonical=True)

    @classmethod
    def parse(cls, text: str) -> "RationalExpr":
        from .grammar import parse_expr

        return parse_expr(text)

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def is_constant(self) -> bool:
        return self.den == _ONE and (not self.re or self.re.is_ground) and (
            not self.im or self.im.is_ground
        )

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return GaussRational(self.re.LC if self.re else 0, self.im.LC if self.im else 0)

    def depends_on(self, var: str) -> bool:
        k = _VAR_INDEX[var]
        return any(p and p.degree(k) > 0 for p in (self.re, self.im, self.den))

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _lift(o) -> "RationalExpr":
        if isinstance(o, RationalExpr):
            return o
        if isinstance(o, (int, Fraction, GaussRational)) or type(o) is type(QQ(0)):
            return RationalExpr.const(o)
        raise TypeError(f"cannot use {type(o).__name__} in a rational expression")

    def __add__(self, o):
        try:
            o = self._lift(o)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RationalExpr(self.re + o.re, self.im + o.im, self.den)
        return RationalExpr(
            self.re * o.den + o.re * self.den, self.im * o.den + o.im * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.re, -self.im, self.den, _canonical=True)

    def __sub__(self, o):
        try:
            o = self._lift(o)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, GaussRational)) or type(o) is type(QQ(0)):
            c = GaussRational.coerce(o)
            if not c:
                return RationalExpr.const(0)
            re = self.re.mul_ground(c.re) - self.im.mul_ground(c.im)
            im = self.re.mul_ground(c.im) + self.im.mul_ground(c.re)
            return RationalExpr(re, im, self.den, _canonical=True)
        if not isinstance(o, RationalExpr):
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalExpr.const(0)
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        return RationalExpr(re, im, self.den * o.den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalExpr":
        if self.is_zero():
            raise ZeroDivisionError("division by the zero expression")
        n = self.re * self.re + self.im * self.im
        return RationalExpr(self.den * self.re, -(self.den * self.im), n)

    def __truediv__(self, o):
        try:
            o = self._lift(o)
        except TypeError:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, o):
        return self._lift(o) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return self.reciprocal() ** (-k)
        out = RationalExpr.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus and conjugation ---------------------------------------------

    def diff(self, var: str = Z) -> "RationalExpr":
        """Exact partial derivative with respect to ``z`` or ``zbar``."""
        x = RING.gens[_VAR_INDEX[var]]
        if self.den == _ONE:
            return RationalExpr(self.re.diff(x), self.im.diff(x), _ONE, _canonical=True)
        dd = self.den.diff(x)
        re = self.re.diff(x) * self.den - self.re * dd
        im = self.im.diff(x) * self.den - self.im * dd
        return RationalExpr(re, im, self.den * self.den)

    def conjugate(self) -> "RationalExpr":
        """Swap z and zbar and conjugate the coefficients."""
        return RationalExpr(_swap(self.re), -_swap(self.im), _swap(self.den))

    def real_part(self) -> "RationalExpr":
        return (self + self.conjugate()) * QQ(1, 2)

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, z, zbar=None) -> GaussRational:
        """Exact value at z = ``z``, zbar = ``zbar`` (default: conjugate of z)."""
        zv = GaussRational.coerce(z)
        zbv = zv.conjugate() if zbar is None else GaussRational.coerce(zbar)
        d = _eval_poly(self.den, zv, zbv)
        if not d:
            raise ZeroDivisionError(f"denominator of {self} vanishes at the given point")
        num = _eval_poly(self.re, zv, zbv) + I * _eval_poly(self.im, zv, zbv)
        return num / d

    def terms(self) -> dict[tuple[int, int], GaussRational]:
        """Numerator coefficients keyed by (z-degree, zbar-degree)."""
        out: dict[tuple[int, int], GaussRational] = {}
        for k, c in self.re.items():
            out[k] = GaussRational(c, 0)
        for k, c in self.im.items():
            prev = out.get(k, GaussRational(0))
            out[k] = GaussRational(prev.re, c)
        return out

    # -- identity --------------------------------------------------------------

    def _key(self):
        return (tuple(sorted(self.re.items())), tuple(sorted(self.im.items())),
                tuple(sorted(self.den.items())))

    def __eq__(self, o):
        if not isinstance(o, RationalExpr):
            try:
                o = self._lift(o)
            except TypeError:
                return NotImplemented
        return self.den == o.den and self.re == o.re and self.im == o.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __str__(self):
        from .grammar import format_expr

        return format_expr(self)

    def __repr__(self):
        return f"RationalExpr({str(self)!r})"


def _normalize(re, im, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not re and not im:
        return _ZERO, _ZERO, _ONE
    if not den.is_ground:
        g = _gcd(den, re)
        if im and not g.is_ground:
            g = _gcd(g, im)
        if not g.is_ground:
            den = den.exquo(g)
            re = re.exquo(g) if re else re
            im = im.exquo(g) if im else im
    lc = den.LC
    if lc != 1:
        den = den.quo_ground(lc)
        re = re.quo_ground(lc) if re else re
        im = im.quo_ground(lc) if im else im
    return re, im, den


Scalar = Union[int, Fraction, GaussRational]


def as_expr(x) -> RationalExpr:
    if isinstance(x, str):
        return RationalExpr.parse(x)
    return RationalExpr._lift(x)


def diff(e: RationalExpr, var: str = Z) -> RationalExpr:
    return e.diff(var)


def conjugate(e: RationalExpr) -> RationalExpr:
    return e.conjugate()
