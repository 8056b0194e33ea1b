"""Independent ground truth from Gröbner bases.

``verify`` builds the pfaffian generators of a spec, computes a reduced
Gröbner basis, reads the Hilbert series of the initial ideal, and compares
height, multiplicity, h-vector and regularity with the biliaison engine.
Nothing here calls the engine's recursion except for the comparison itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Optional

from . import _groebner_py, series
from .errors import IndexOutOfRange, NegativeHEntry, OddSubset, TooManyGenerators
from .ladder import LadderIdealSpec, make_family, spec_to_json
from .ladder import height as ladder_height
from .polynomial import Monomial, Packer, Polynomial, TermOrder, var_index, variables

DEFAULT_MAX_GENERATORS = 5000
DEFAULT_BUDGET = 2_000_000


def _pfaffian_dense(subset, index, nvars):
    """``{dense exponent tuple: +-1}`` by expansion along the first index."""
    memo = {}

    def pf(S):
        if not S:
            return {(0,) * nvars: 1}
        hit = memo.get(S)
        if hit is not None:
            return hit
        i1 = S[0]
        out = {}
        for pos in range(1, len(S)):
            sign = 1 if pos % 2 == 1 else -1  # (-1)^j with j = pos + 1
            v = index[(i1, S[pos])]
            rest = S[1:pos] + S[pos + 1:]
            for mono, c in pf(rest).items():
                m = list(mono)
                m[v] += 1
                m = tuple(m)
                out[m] = out.get(m, 0) + sign * c
        out = {m: c for m, c in out.items() if c}
        memo[S] = out
        return out

    return pf(tuple(subset))


def pfaffian(n: int, subset) -> Polynomial:
    """Pfaffian of the skew-symmetric submatrix of ``X`` on ``subset``."""
    subset = tuple(subset)
    if len(subset) % 2:
        raise OddSubset(f"pfaffians need an even index set, got {len(subset)} indices")
    if not subset:
        raise OddSubset("empty index set")
    if len(set(subset)) != len(subset) or any(not (1 <= i <= n) for i in subset):
        raise IndexOutOfRange(f"indices {subset} must be distinct and within 1..{n}")
    subset = tuple(sorted(subset))
    nvars = n * (n - 1) // 2
    dense = _pfaffian_dense(subset, var_index(n), nvars)
    return Polynomial.from_dense(dense, TermOrder(nvars))


def generator_subsets(spec: LadderIdealSpec) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for a, b, t in spec.triples():
        if 2 * t > b - a + 1:
            continue
        for S in combinations(range(a, b + 1), 2 * t):
            if S not in seen:
                seen.add(S)
                out.append(S)
    return out


def _check_cap(spec, cap):
    count = sum(comb(b - a + 1, 2 * t) for a, b, t in spec.triples() if 2 * t <= b - a + 1)
    if count > cap:
        raise TooManyGenerators(f"{count} pfaffians exceed the cap of {cap}")


def generators(spec: LadderIdealSpec, cap: int = DEFAULT_MAX_GENERATORS) -> list[Polynomial]:
    """All ``2 t_k``-pfaffians of every block, without repeats."""
    _check_cap(spec, cap)
    return [pfaffian(spec.n, S) for S in generator_subsets(spec)]


def _dense_generators(spec, cap):
    _check_cap(spec, cap)
    nvars = spec.n * (spec.n - 1) // 2
    index = var_index(spec.n)
    return [_pfaffian_dense(S, index, nvars) for S in generator_subsets(spec)], nvars


# ---------------------------------------------------------------------------
# Gröbner bases

def _to_packed(P: Packer, dense_poly):
    return {P.pack(m): int(c) for m, c in dense_poly.items()}


def _from_packed(P: Packer, packed, order: TermOrder) -> Polynomial:
    lc = packed[max(packed)]
    return Polynomial(
        ((Fraction(c, lc), Monomial.from_dense(P.unpack(k))) for k, c in packed.items()), order
    )


def buchberger(gens, order: Optional[TermOrder] = None, budget: int = DEFAULT_BUDGET):
    """Reduced Gröbner basis of ``gens`` (monic, sorted by leading monomial)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    order = order or gens[0].order
    P = Packer(order.nvars)
    packed = []
    for g in gens:
        den = 1
        for c, _ in g.terms:
            den = den * c.denominator // gcd(den, c.denominator)
        packed.append({P.pack(m.dense(order.nvars)): int(c * den) for c, m in g.terms})
    basis, _ = _groebner_py.buchberger(packed, P, budget)
    return [_from_packed(P, b, order) for b in basis]


def initial_ideal(basis_packed, P: Packer) -> list[tuple[int, ...]]:
    return [P.unpack(max(b)) for b in basis_packed]


def hilbert_numerator(mi, nvars: int) -> tuple[int, ...]:
    """``N(z)`` with ``HS(R / mi) = N(z) / (1 - z)^nvars``; ``mi`` is a list of dense exponents."""
    return _groebner_py.hilbert_numerator([tuple(m) for m in mi], nvars)


@dataclass(frozen=True)
class QuotientInvariants:
    height: int
    dim: int
    multiplicity: int
    hvector: tuple[int, ...]
    reg_cm: int


def quotient_invariants(num, nvars: int) -> QuotientInvariants:
    """Split ``N(z) = (1 - z)^h Q(z)`` with ``Q(1) != 0``."""
    q = series.trim(num)
    if not q:
        raise ValueError("zero Hilbert numerator")
    h = 0
    while True:
        quo, rem = series.divide_one_minus_z(q)
        if rem != 0:
            break
        q = quo
        h += 1
    if any(c < 0 for c in q):
        raise NegativeHEntry(f"h-vector {q} has a negative entry")
    return QuotientInvariants(h, nvars - h, sum(q), q, len(q))


# ---------------------------------------------------------------------------
# verification

@dataclass
class Report:
    spec: LadderIdealSpec
    fields: dict = field(default_factory=dict)
    basis: list = field(default_factory=list)
    names: list = field(default_factory=list)
    numerator: tuple = ()
    reductions: int = 0

    @property
    def passed(self) -> bool:
        return all(f["pass"] for f in self.fields.values())

    def add(self, name, expected, actual):
        self.fields[name] = {"expected": expected, "actual": actual, "pass": expected == actual}

    def to_dict(self) -> dict:
        def plain(v):
            if isinstance(v, tuple):
                return list(v)
            if isinstance(v, int) and not isinstance(v, bool) and abs(v) >= 2 ** 53:
                return str(v)
            return v

        return {
            "spec": spec_to_json(self.spec),
            "fields": {
                k: {"expected": plain(f["expected"]), "actual": plain(f["actual"]), "pass": f["pass"]}
                for k, f in self.fields.items()
            },
            "numerator": list(self.numerator),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def basis_text(self) -> str:
        return "\n".join(g.text(self.names) for g in self.basis)


def oracle_invariants(spec: LadderIdealSpec, cap=DEFAULT_MAX_GENERATORS, budget=DEFAULT_BUDGET,
                      keep_basis=False):
    """Run generators, Gröbner basis and Hilbert series; return invariants and basis."""
    dense, nvars = _dense_generators(spec, cap)
    if not dense:
        num = (1,)
        return quotient_invariants(num, nvars), num, [], 0
    P = Packer(nvars)
    basis, work = _groebner_py.buchberger([_to_packed(P, g) for g in dense], P, budget)
    num = hilbert_numerator(initial_ideal(basis, P), nvars)
    order = TermOrder(nvars)
    polys = [_from_packed(P, b, order) for b in basis] if keep_basis else []
    return quotient_invariants(num, nvars), num, polys, work


def verify(spec: LadderIdealSpec, family: Optional[str] = None, params: Optional[dict] = None,
           cap=DEFAULT_MAX_GENERATORS, budget=DEFAULT_BUDGET, keep_basis=False) -> Report:
    """Compare oracle invariants with the engine (and closed formulas when named)."""
    from .invariants import _family_reg, hvec_generic, mult_formula, reg_from_hvector

    qi, num, polys, work = oracle_invariants(spec, cap, budget, keep_basis)
    rep = Report(spec, basis=polys, names=[f"x{i}_{j}" for i, j in variables(spec.n)],
                 numerator=num, reductions=work)
    h = hvec_generic(spec)
    rep.add("height", ladder_height(spec), qi.height)
    rep.add("multiplicity", sum(h), qi.multiplicity)
    if family is not None:
        rep.add("multiplicity_formula", mult_formula(family, **params), qi.multiplicity)
    rep.add("hvector", tuple(h), qi.hvector)
    reg = _family_reg(family, params or {}) if family is not None else None
    rep.add("regularity", reg if reg is not None else reg_from_hvector(h), qi.reg_cm)
    return rep


def verify_family(family: str, **params) -> Report:
    return verify(make_family(family, **params), family, params)
