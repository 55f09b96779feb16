"""Exact root systems: Cartan data, positive roots, coroot pairings, Weyl group moves.

Weights live in the fundamental-weight basis, so ``lam.coords[i]`` is the
pairing of ``lam`` with the i-th simple coroot. Roots live in the simple-root
basis with integer coordinates. Simple roots follow Bourbaki numbering
(e.g. the short root of G2 is the first one).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

FAMILIES = "ABCDEFG"


class RootSystemError(ValueError):
    """Invalid root system data or arguments."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class Weight:
    """Rational weight in the fundamental-weight basis."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in self.coords))

    @classmethod
    def of(cls, *values) -> "Weight":
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse a comma-separated list of rationals, e.g. ``"0,-3/2"``."""
        parts = [p for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError(f"empty weight: {text!r}")
        return cls(tuple(Fraction(p.strip()) for p in parts))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def _check(self, other: "Weight") -> None:
        if len(other.coords) != len(self.coords):
            raise RootSystemError("weight length mismatch")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, t) -> "Weight":
        t = _frac(t)
        return Weight(tuple(t * a for a in self.coords))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


@dataclass(frozen=True, order=True)
class Root:
    """Root in the simple-root basis."""

    coords: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class WeylWord:
    """Sequence of simple reflection indices, applied left to right."""

    letters: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return "".join(f"s{i + 1}" for i in self.letters) or "1"


def _e(n: int, *entries: tuple[int, Fraction]) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * n
    for i, x in entries:
        v[i] = Fraction(x)
    return tuple(v)


def _simple_root_vectors(family: str, rank: int) -> list[tuple[Fraction, ...]]:
    """Euclidean realizations of the simple roots (Bourbaki conventions)."""
    n = rank
    if family == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if family == "B":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
    if family == "C":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))]
    if family == "D":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [
            _e(n, (n - 2, 1), (n - 1, 1))
        ]
    if family == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    if family == "F":
        h = Fraction(1, 2)
        return [
            _e(4, (1, 1), (2, -1)),
            _e(4, (2, 1), (3, -1)),
            _e(4, (3, 1)),
            _e(4, (0, h), (1, -h), (2, -h), (3, -h)),
        ]
    if family == "E":
        h = Fraction(1, 2)
        e8 = [
            _e(8, (0, h), (7, h), *((k, -h) for k in range(1, 7))),
            _e(8, (0, 1), (1, 1)),
        ] + [_e(8, (k - 1, -1), (k, 1)) for k in range(1, 7)]
        return e8[:rank]
    raise RootSystemError(f"unknown family {family!r}")


def _check_admissible(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}")
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError(f"rank must be a positive integer, got {rank!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not ok:
        raise RootSystemError(f"rank {rank} is not admissible for family {family}")


class RootSystem:
    """A reduced irreducible root system of type ``family``/``rank``.

    Use :func:`root_system` to get a cached instance.
    """

    def __init__(self, family: str, rank: int):
        family = family.upper()
        _check_admissible(family, rank)
        self.family = family
        self.rank = rank
        vecs = _simple_root_vectors(family, rank)
        gram = [[sum(a * b for a, b in zip(u, v)) for v in vecs] for u in vecs]
        # cartan[i][j] = alpha_j(H_{alpha_i})
        self.cartan: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(rank)) for i in range(rank)
        )
        sq = [gram[i][i] for i in range(rank)]
        m = min(sq)
        # minimal positive integer symmetrizer: d_i = |alpha_i|^2 / |short|^2
        self.symmetrizer: tuple[int, ...] = tuple(int(s / m) for s in sq)
        self.gram: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(self.symmetrizer[i] * self.cartan[i][j], 2) for j in range(rank))
            for i in range(rank)
        )

    def __repr__(self) -> str:
        return f"RootSystem({self.family!r}, {self.rank})"

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    # -- roots ------------------------------------------------------------

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return Root(tuple(int(j == i) for j in range(self.rank)))

    def simple_root_weight(self, i: int) -> Weight:
        """The simple root alpha_i in fundamental coordinates."""
        self._check_index(i)
        return Weight(tuple(self.cartan[j][i] for j in range(self.rank)))

    def root_norm(self, coords: Sequence[int]) -> Fraction:
        g = self.gram
        return sum(
            (coords[i] * coords[j] * g[i][j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        """All positive roots, ordered by height and then with alpha_1 first."""
        r = self.rank
        found = {self.simple_root(i).coords for i in range(r)}
        layer = sorted(found)
        while layer:
            nxt = set()
            for beta in layer:
                for i in range(r):
                    # alpha_i-string through beta: beta - p alpha_i .. beta + q alpha_i
                    p = 0
                    while True:
                        down = list(beta)
                        down[i] -= p + 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    pair = sum(beta[j] * self.cartan[i][j] for j in range(r))
                    q = p - pair
                    if q > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            nxt.add(up)
            found |= nxt
            layer = sorted(nxt)
        return tuple(
            Root(c) for c in sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))
        )

    @cached_property
    def _coroot_coeffs(self) -> dict[tuple[int, ...], tuple[Fraction, ...]]:
        # H_alpha = sum_j c_j |alpha_j|^2/|alpha|^2 H_{alpha_j}
        out = {}
        for a in self.positive_roots:
            norm = sum(
                a.coords[i] * a.coords[j] * self.symmetrizer[i] * self.cartan[i][j]
                for i in range(self.rank)
                for j in range(self.rank)
            )
            out[a.coords] = tuple(
                Fraction(2 * a.coords[j] * self.symmetrizer[j], norm) for j in range(self.rank)
            )
        return out

    def coroot(self, alpha: Root) -> tuple[Fraction, ...]:
        """Coefficients of H_alpha in the simple coroot basis."""
        key = tuple(alpha.coords)
        if key in self._coroot_coeffs:
            return self._coroot_coeffs[key]
        neg = tuple(-c for c in key)
        if neg in self._coroot_coeffs:
            return tuple(-c for c in self._coroot_coeffs[neg])
        raise RootSystemError(f"{alpha} is not a root of {self.name}")

    def pairing(self, lam: Weight, alpha: Root) -> Fraction:
        """lam(H_alpha)."""
        if len(lam.coords) != self.rank or len(alpha.coords) != self.rank:
            raise RootSystemError("length mismatch between weight, root and rank")
        return sum((c * x for c, x in zip(self.coroot(alpha), lam.coords)), Fraction(0))

    def pairings(self, lam: Weight) -> list[Fraction]:
        """lam(H_alpha) for every positive root, in positive_roots order."""
        return [self.pairing(lam, a) for a in self.positive_roots]

    def inner(self, lam: Weight, alpha: Root) -> Fraction:
        """(lam, alpha) with the symmetrized Cartan normalization."""
        return sum(
            (lam.coords[j] * alpha.coords[j] * Fraction(self.symmetrizer[j], 2)
             for j in range(self.rank)),
            Fraction(0),
        )

    # -- Weyl group -------------------------------------------------------

    @property
    def rho(self) -> Weight:
        """Half-sum of positive roots, (1, ..., 1) in fundamental coordinates."""
        return Weight((1,) * self.rank)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.rank:
            raise RootSystemError(f"simple reflection index {i} out of range for rank {self.rank}")

    def simple_reflection(self, i: int, lam: Weight) -> Weight:
        self._check_index(i)
        if len(lam.coords) != self.rank:
            raise RootSystemError("weight length mismatch")
        li = lam.coords[i]
        if li == 0:
            return lam
        return Weight(tuple(lam.coords[j] - li * self.cartan[j][i] for j in range(self.rank)))

    def apply_word(self, word: WeylWord | Iterable[int], lam: Weight) -> Weight:
        for i in word:
            lam = self.simple_reflection(i, lam)
        return lam

    def inversions(self, lam: Weight) -> int:
        return sum(1 for p in self.pairings(lam) if p < 0)

    def to_dominant(self, lam: Weight) -> tuple[Weight, WeylWord, int]:
        """Reflect the leftmost negative coordinate until none is left."""
        if len(lam.coords) != self.rank:
            raise RootSystemError("weight length mismatch")
        inv = self.inversions(lam)
        letters = []
        cur = lam
        while True:
            i = next((k for k, c in enumerate(cur.coords) if c < 0), None)
            if i is None:
                break
            cur = self.simple_reflection(i, cur)
            letters.append(i)
        return cur, WeylWord(tuple(letters)), inv

    @cached_property
    def longest_element(self) -> WeylWord:
        """A reduced word for w0, obtained by making -rho dominant."""
        return self.to_dominant(-self.rho)[1]

    def negate_by_w0(self, lam: Weight) -> Weight:
        """-w0(lam)."""
        return -self.apply_word(self.longest_element, lam)

    def weyl_dim(self, zeta: Weight) -> int:
        """Dimension of the irreducible module with highest weight zeta."""
        if len(zeta.coords) != self.rank:
            raise RootSystemError("weight length mismatch")
        if not zeta.is_integral() or not zeta.is_dominant():
            raise RootSystemError(f"{zeta} is not dominant integral")
        shifted = zeta + self.rho
        num, den = Fraction(1), Fraction(1)
        for a in self.positive_roots:
            num *= self.inner(shifted, a)
            den *= self.inner(self.rho, a)
        d = num / den
        assert d.denominator == 1
        return int(d)


@lru_cache(maxsize=None)
def root_system(family: str, rank: int) -> RootSystem:
    return RootSystem(family.upper(), int(rank))


# Module-level conveniences mirroring the method names.

def positive_roots(family: str, rank: int) -> tuple[Root, ...]:
    return root_system(family, rank).positive_roots


def weyl_dim(rs: RootSystem, zeta: Weight) -> int:
    return rs.weyl_dim(zeta)
