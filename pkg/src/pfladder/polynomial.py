"""Sparse multivariate polynomials over the rationals.

Variables are the strictly-upper entries ``x_ij`` (``i < j``) of an ``n x n``
skew-symmetric matrix, numbered in lexicographic order of ``(i, j)``; the
term order is degree-reverse-lexicographic with ``x_12 > x_13 > ...``.

The public :class:`Polynomial` keeps its terms sorted and monic-friendly.
The Gröbner kernels work on a packed representation instead: a monomial is
one Python integer whose natural order *is* degrevlex (see :class:`Packer`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations


def variables(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def var_index(n: int) -> dict[tuple[int, int], int]:
    return {v: i for i, v in enumerate(variables(n))}


@dataclass(frozen=True)
class Monomial:
    """Sparse exponent map ``((var, exponent), ...)`` sorted by variable."""

    exps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if any(e <= 0 for _, e in self.exps):
            raise ValueError("zero or negative exponent stored in a monomial")

    @classmethod
    def from_dense(cls, dense) -> "Monomial":
        return cls(tuple((i, e) for i, e in enumerate(dense) if e))

    def dense(self, nvars: int) -> tuple[int, ...]:
        out = [0] * nvars
        for i, e in self.exps:
            out[i] = e
        return tuple(out)

    @cached_property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        acc = dict(self.exps)
        for i, e in other.exps:
            acc[i] = acc.get(i, 0) + e
        return Monomial(tuple(sorted(acc.items())))

    def divides(self, other: "Monomial") -> bool:
        theirs = dict(other.exps)
        return all(theirs.get(i, 0) >= e for i, e in self.exps)

    def text(self, names=None) -> str:
        if not self.exps:
            return "1"
        parts = []
        for i, e in self.exps:
            name = names[i] if names else f"v{i}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


class TermOrder:
    """Degree-reverse-lexicographic order on ``nvars`` variables."""

    kind = "degrevlex"

    def __init__(self, nvars: int):
        self.nvars = nvars

    def key(self, m: Monomial):
        dense = m.dense(self.nvars)
        return (m.degree, tuple(-e for e in reversed(dense)))

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other.nvars == self.nvars

    def __hash__(self):
        return hash((self.kind, self.nvars))


class Polynomial:
    """Immutable polynomial with terms ``(coeff, Monomial)`` sorted descending."""

    __slots__ = ("order", "terms")

    def __init__(self, terms, order: TermOrder):
        acc: dict[Monomial, Fraction] = {}
        for c, m in terms:
            acc[m] = acc.get(m, 0) + Fraction(c)
        items = [(c, m) for m, c in acc.items() if c != 0]
        items.sort(key=lambda cm: order.key(cm[1]), reverse=True)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", tuple(items))

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def from_dense(cls, mapping, order: TermOrder) -> "Polynomial":
        return cls(((c, Monomial.from_dense(e)) for e, c in mapping.items()), order)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __len__(self):
        return len(self.terms)

    def __neg__(self):
        return Polynomial(((-c, m) for c, m in self.terms), self.order)

    def __add__(self, other):
        return Polynomial(self.terms + other.terms, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(((c * other, m) for c, m in self.terms), self.order)
        return Polynomial(
            ((c * d, m * n) for c, m in self.terms for d, n in other.terms), self.order
        )

    __rmul__ = __mul__

    @property
    def leading_term(self):
        return self.terms[0]

    @property
    def leading_monomial(self) -> Monomial:
        return self.terms[0][1]

    @property
    def degree(self) -> int:
        return max((m.degree for _, m in self.terms), default=-1)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[0][0]
        return Polynomial(((c / lc, m) for c, m in self.terms), self.order)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for c, m in self.terms:
            v = c
            for i, e in m.exps:
                v *= Fraction(point[i]) ** e
            total += v
        return total

    def text(self, names=None) -> str:
        """Plain text ``coeff monomial [+ coeff monomial ...]``."""
        if not self.terms:
            return "0"
        return " + ".join(f"{c} {m.text(names)}" for c, m in self.terms)

    def __repr__(self):
        return f"Polynomial({self.text()})"


class Packer:
    """Monomials packed into one integer whose order is degrevlex.

    With ``W``-bit fields, a monomial with exponents ``e_i`` packs to

        deg << (W * nvars)  +  sum_i (M - e_i) << (W * i),   M = 2**(W-1) - 1

    so larger integers are larger monomials.  Products and quotients are
    additions and subtractions of a constant; divisibility and lcm use a
    guard bit in every field.  Exponents must stay at most ``M``.
    """

    W = 8

    def __init__(self, nvars: int):
        W = self.W
        self.nvars = nvars
        self.M = (1 << (W - 1)) - 1
        self.shift = W * nvars
        self.low = (1 << self.shift) - 1
        self.C = sum(self.M << (W * i) for i in range(nvars))
        self.G = sum(1 << (W * i + W - 1) for i in range(nvars))
        self.FF = sum(0xFF << (W * i) for i in range(nvars))
        self.nbytes = max(1, nvars)

    def pack(self, dense) -> int:
        W, M = self.W, self.M
        if any(e > M for e in dense):
            raise OverflowError(f"exponent above {M} cannot be packed")
        k = sum(dense) << self.shift
        for i, e in enumerate(dense):
            k |= (M - e) << (W * i)
        return k

    def unpack(self, k: int) -> tuple[int, ...]:
        M = self.M
        raw = (k & self.low).to_bytes(self.nbytes, "little")
        return tuple(M - b for b in raw[: self.nvars])

    def degree(self, k: int) -> int:
        return k >> self.shift

    def mul(self, k1: int, k2: int) -> int:
        return k1 + k2 - self.C

    def div(self, k2: int, k1: int) -> int:
        return k2 - k1 + self.C

    def divides(self, k1: int, k2: int) -> bool:
        G = self.G
        return ((k1 & self.low) + G - (k2 & self.low)) & G == G

    def lcm(self, k1: int, k2: int) -> int:
        low, G = self.low, self.G
        f1, f2 = k1 & low, k2 & low
        ge = (((f1 + G - f2) & G) >> (self.W - 1)) * 0xFF  # fields where f1 >= f2
        f = (f2 & ge) | (f1 & (self.FF ^ ge))
        deg = self.nvars * self.M - sum(f.to_bytes(self.nbytes, "little"))
        return (deg << self.shift) | f

    def coprime(self, k1: int, k2: int) -> bool:
        return self.lcm(k1, k2) == self.mul(k1, k2)
