"""Multiplicity, h-vector, regularity and Betti numbers of pfaffian ladder ideals.

Two routes are provided.  The closed and recursive formulas cover the named
families (``M_t``, ``SM_t``, ``N_t``, ``SN_t``, ``L_t^n``, ``L_t(k)``,
``L_t(j,k)``, ``H_t(j,k)``).  The generic engine handles any spec by walking
the biliaison recursion down to ideals generated by indeterminates, using

    e(I) = e(I') + e(J)        h_I(z) = z h_{I'}(z) + h_J(z)

at every height-1 step, where ``I'`` is the reduced spec and ``J`` the
divisor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Optional

from . import kernel, series
from .errors import (
    BadParams,
    HypothesisFails,
    NonTermination,
    StepNotApplicable,
    UnknownFamily,
)
from .ladder import (
    LadderIdealSpec,
    biliaison_step,
    canonical_key,
    make_family,
    make_spec,
    normalize,
    spec_to_json,
    tilde,
)
from .ladder import height as ladder_height

HVector = tuple  # tuple[int, ...], h(0) first, trailing entry nonzero


# ---------------------------------------------------------------------------
# closed and recursive multiplicity formulas

def krattenthaler_parts(t: int, n: int) -> tuple[int, int]:
    """Numerator and denominator of the product formula for ``e(I_t^n)``."""
    if not (isinstance(t, int) and isinstance(n, int) and 1 <= t and 2 * t <= n):
        raise BadParams(f"need 1 <= 2t <= n, got t={t}, n={n}")
    m = n - 2 * t + 1
    num = den = 1
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            num *= 2 * (t - 1) + i + j
            den *= i + j
    return num, den


def mult_krattenthaler(t: int, n: int) -> int:
    """Multiplicity of the ideal of ``2t``-pfaffians of an ``n x n`` matrix."""
    num, den = krattenthaler_parts(t, n)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"product for t={t}, n={n} is not an integer")
    return q


def _sum_squares(t: int) -> int:
    return t * (t + 1) * (2 * t + 1) // 6


def _bracket(s: int) -> int:
    # 2s(1 + 2^2 + ... + s^2) - s^3 = s (e(M_{s-1}) + e(M_s))
    return 2 * s * _sum_squares(s) - s ** 3


def mult_Mt(t: int) -> int:
    if t < 1:
        raise BadParams("M_t needs t >= 1")
    return _sum_squares(t)


def mult_Lt2(t: int) -> int:
    if t < 1:
        raise BadParams("L_t(2) needs t >= 1")
    return 1 + sum(_bracket(s) for s in range(2, t + 1))


def mult_Nt(t: int) -> int:
    if t < 1:
        raise BadParams("N_t needs t >= 1")
    if t == 1:
        return 1
    return 1 + sum(_bracket(s) for s in range(2, t)) + t * _sum_squares(t - 1)


def mult_SMt(t: int) -> int:
    if t < 1:
        raise BadParams("SM_t needs t >= 1")
    return t + sum(_bracket(s) for r in range(2, t + 1) for s in range(2, r + 1))


def mult_Ltn(t: int, n: int) -> int:
    """``e(L_t^n) = e(I_t^n) - e(I_{t-1}^{n-2})``.

    Obtained from the biliaison of the full square at corner ``(1, n)``,
    whose divisor is ``L_t^n`` and whose reduced ideal is ``I_{t-1}^{n-2}``.
    """
    if not (isinstance(t, int) and isinstance(n, int) and t >= 1 and 2 * t <= n - 1):
        raise BadParams(f"L_t^n needs 2t <= n-1, got t={t}, n={n}")
    if t == 1:
        return 1
    return mult_krattenthaler(t, n) - mult_krattenthaler(t - 1, n - 2)


def closed_form_Ltn(t: int, n: int, bound: Optional[int] = None) -> Fraction:
    """Factorial closed form for the difference ``e(I_t^{n+1}) - e(I_{t-1}^{n-1})``.

    ``bound`` is the upper limit of the trailing product; the default
    ``n - 2t + 1`` is the one for which the expression equals
    ``mult_Ltn(t, n + 1)``.  Returned as a Fraction so that other bounds can
    be evaluated and compared.
    """
    if not (t >= 2 and 2 * t <= n):
        raise BadParams(f"closed form needs t >= 2 and 2t <= n, got t={t}, n={n}")
    m = n - 2 * t + 2
    if bound is None:
        bound = n - 2 * t + 1
    pre = Fraction(factorial(m), factorial(2 * m))
    bracket = Fraction(factorial(2 * n - 2 * t + 2), factorial(n)) - Fraction(
        factorial(n - 1), factorial(2 * t - 3)
    )
    prod = Fraction(1)
    for i in range(1, bound + 1):
        for j in range(i, bound + 1):
            prod *= Fraction(2 * (t - 1) + i + j, i + j)
    return pre * bracket * prod


@lru_cache(maxsize=None)
def mult_Ltk(t: int, k: int) -> int:
    """``e(L_t(k))`` by recursion in ``t`` and ``k``; ``e(L_t(0)) = 1``."""
    if t < 1 or k < 0:
        raise BadParams(f"L_t(k) needs t >= 1 and k >= 1, got t={t}, k={k}")
    if k == 0 or t == 1:
        return 1
    if k == 1:
        return mult_Mt(t)
    if k == 2:
        return mult_Lt2(t)
    total = mult_Ltk(t - 1, k) + t * (mult_Ltk(t, k - 1) + mult_Ltk(t - 1, k - 1))
    total += sum(mult_Ltk(t - 1, k - 1 - l) * mult_Ltk(t, l) for l in range(1, k - 1))
    return total


def mult_Ltjk(t: int, j: int, k: int) -> int:
    if j < 1 or k < 1 or t < 2:
        raise BadParams(f"formula for L_t(j,k) needs j, k >= 1 and t >= 2, got {t, j, k}")
    total = mult_Ltk(t - 1, j + k) + t * mult_Ltk(t - 1, j + k - 1)
    total += sum(mult_Ltk(t - 1, j + k - 1 - l) * mult_Ltk(t, l) for l in range(1, k))
    return total


def mult_Htjk(t: int, j: int, k: int) -> int:
    if j < 0 or k < 0 or j + k < 1 or t < 1 or (j >= 1 and t < 2):
        raise BadParams(f"H_t(j,k) parameters out of range: {t, j, k}")
    left = mult_Ltk(t - 1, j) if j else 1
    right = mult_Ltk(t, k) if k else 1
    return left * right


def mult_SNt(t: int) -> int:
    if t < 1:
        raise BadParams("SN_t needs t >= 1")
    return (
        sum(mult_Ltjk(s, 1, 2) for s in range(2, t + 1))
        + sum(s * mult_SMt(s) for s in range(2, t))
        + 1
    )


def mult_formula(family: str, **params) -> int:
    """Dispatch to the formula of a named family."""
    fam = {"Ln": "L^n"}.get(family, family)
    if fam == "I":
        return mult_krattenthaler(params["t"], params["n"])
    if fam == "L^n":
        return mult_Ltn(params["t"], params["n"])
    if fam == "M":
        return mult_Mt(params["t"])
    if fam == "SM":
        return mult_SMt(params["t"])
    if fam == "N":
        return mult_Nt(params["t"])
    if fam == "SN":
        return mult_SNt(params["t"])
    if fam == "Lt2":
        return mult_Lt2(params["t"])
    if fam == "Lk":
        return mult_Ltk(params["t"], params["k"])
    if fam == "Ljk":
        t, j, k = params["t"], params["j"], params["k"]
        if j == 0:
            return mult_Ltk(t, k)
        if k == 0:
            return mult_Ltk(t - 1, j)
        return mult_Ltjk(t, j, k)
    if fam == "Hjk":
        return mult_Htjk(params["t"], params["j"], params["k"])
    raise UnknownFamily(f"no multiplicity formula for family {family!r}")


# ---------------------------------------------------------------------------
# product theorem

def _tilde_cells(spec: LadderIdealSpec) -> set:
    spec = normalize(spec)
    return tilde(spec).cells() if spec.t else set()


def union_spec(spec1: LadderIdealSpec, spec2: LadderIdealSpec) -> LadderIdealSpec:
    n = max(spec1.n, spec2.n)
    triples = spec1.triples() + spec2.triples()
    return make_spec(n, [(a, b) for a, b, _ in triples], [t for _, _, t in triples])


def mult_product(spec1: LadderIdealSpec, spec2: LadderIdealSpec) -> int:
    """``e(I_1 + I_2) = e(I_1) e(I_2)`` when the tilde ladders share no variable."""
    shared = _tilde_cells(spec1) & _tilde_cells(spec2)
    if shared:
        raise HypothesisFails(f"tilde ladders share variables {sorted(shared)}")
    value = mult_generic(spec1) * mult_generic(spec2)
    try:
        union = union_spec(spec1, spec2)
    except ValueError:
        return value
    direct = mult_generic(union)
    if direct != value:
        raise ArithmeticError(f"product rule fails: {direct} != {value}")
    return value


# ---------------------------------------------------------------------------
# generic biliaison engine

def _choose_max_t(spec):
    return sorted(range(1, len(spec.t) + 1), key=lambda k: (spec.t[k - 1], k), reverse=True)


def _choose_min_k(spec):
    return list(range(1, len(spec.t) + 1))


def _choose_largest_square(spec):
    return sorted(
        range(1, len(spec.t) + 1), key=lambda k: (spec.corners[k - 1].size, k), reverse=True
    )


POLICIES: dict[str, Callable] = {
    "max_t": _choose_max_t,
    "min_k": _choose_min_k,
    "largest_square": _choose_largest_square,
}


@dataclass
class EngineTrace:
    """Bookkeeping of one engine invocation."""

    steps: int = 0
    flagged: list = field(default_factory=list)


def _pick_step(spec, policy):
    for k in POLICIES[policy](spec):
        if spec.t[k - 1] < 2:
            continue
        try:
            return biliaison_step(spec, k)
        except StepNotApplicable:
            continue
    raise NonTermination(f"no admissible biliaison step for {spec}")


def _cells(spec):
    return len(spec.ladder.cells())


def _walk(spec, policy, leaf, combine, trace=None):
    if policy not in POLICIES:
        raise BadParams(f"unknown policy {policy!r}; expected one of {sorted(POLICIES)}")
    spec = normalize(spec)
    limit = 10 * max(1, _cells(spec))
    memo = {}

    def go(s, depth):
        if depth > limit:
            raise NonTermination(f"recursion deeper than {limit} at {s}")
        key = canonical_key(s)
        if key in memo:
            return memo[key]
        if not s.t or all(t == 1 for t in s.t):
            value = leaf
        else:
            step = _pick_step(s, policy)
            if trace is not None:
                trace.steps += 1
                if any(p[0] == "divisor" for p in step.pruned):
                    trace.flagged.append(step)
            value = combine(go(step.reduced, depth + 1), go(step.divisor, depth + 1))
        memo[key] = value
        return value

    return go(spec, 0)


_POLICY_CODES = {"max_t": 0, "min_k": 1, "largest_square": 2}


def _fast(spec, policy, fn_name):
    if policy not in _POLICY_CODES:
        raise BadParams(f"unknown policy {policy!r}; expected one of {sorted(POLICIES)}")
    spec = normalize(spec)
    limit = 10 * max(1, _cells(spec))
    fn = getattr(kernel.get(), fn_name)
    try:
        return fn(canonical_key(spec), _POLICY_CODES[policy], limit)
    except (RecursionError, LookupError) as exc:
        raise NonTermination(str(exc)) from None


def mult_generic(spec: LadderIdealSpec, policy: str = "max_t", trace=None) -> int:
    """Multiplicity of any pfaffian ladder ideal via the biliaison recursion.

    Passing an :class:`EngineTrace` routes through the spec-level walker,
    which records every step; otherwise the kernel backend is used.
    """
    if trace is not None:
        return _walk(spec, policy, 1, lambda r, d: r + d, trace)
    return _fast(spec, policy, "mult_walk")


def hvec_generic(spec: LadderIdealSpec, policy: str = "max_t", trace=None) -> HVector:
    """h-vector via ``h_I(z) = z h_reduced(z) + h_divisor(z)``."""
    if trace is not None:
        return _walk(spec, policy, (1,), lambda r, d: series.add(series.shift(r), d), trace)
    return _fast(spec, policy, "hvec_walk")


# ---------------------------------------------------------------------------
# h-vectors

def hvec_ci2(t: int) -> HVector:
    """h-vector of a complete intersection of two forms of degree ``t``."""
    if t < 1:
        raise BadParams("degree must be >= 1")
    ones = (1,) * t
    return series.mul(ones, ones)


def hvec_Mt(t: int) -> HVector:
    """h-vector of ``M_t`` as a sum of shifted complete-intersection h-vectors.

    ``h_{M_t}(m) = h_{M_1}(m - t + 1) + sum_{j=2..t} h_{(j,j)}(m - t + j)``.
    """
    if t < 1:
        raise BadParams("M_t needs t >= 1")
    h = series.shift((1,), t - 1)
    for j in range(2, t + 1):
        h = series.add(h, series.shift(hvec_ci2(j), t - j))
    return h


def delta(hf) -> list[int]:
    """First difference ``H(m) - H(m-1)`` with ``H(-1) = 0``."""
    hf = list(hf)
    return [x - y for x, y in zip(hf, [0] + hf[:-1])]


def is_decreasing_type(h) -> bool:
    """Once a strict descent occurs, every later step is a strict descent."""
    h = list(h)
    if not h:
        raise BadParams("empty h-vector")
    descending = False
    for x, y in zip(h, h[1:]):
        if descending and not x > y:
            return False
        if x > y:
            descending = True
    return True


def is_unimodal(h) -> bool:
    h = list(h)
    if not h:
        raise BadParams("empty h-vector")
    i = 0
    while i + 1 < len(h) and h[i] <= h[i + 1]:
        i += 1
    while i + 1 < len(h) and h[i] >= h[i + 1]:
        i += 1
    return i == len(h) - 1


# ---------------------------------------------------------------------------
# regularity

_REG = {
    "M": (1, lambda t: 2 * t - 1),
    "Lt2": (1, lambda t: 3 * t - 2),
    "N": (2, lambda t: 3 * t - 4),
    "SM": (1, lambda t: 3 * t - 2),
}


def reg_closed(family: str, t: int) -> int:
    if family not in _REG:
        raise UnknownFamily(f"no regularity formula for family {family!r}")
    lo, f = _REG[family]
    if not isinstance(t, int) or t < lo:
        raise BadParams(f"reg of {family} needs t >= {lo}")
    return f(t)


def reg_biliaison(reg_J: int, reg_H: int, ell: int = 1) -> int:
    """Regularity of ``I`` obtained from ``J`` by a height-``ell`` biliaison on ``H``."""
    if not reg_J < reg_H:
        raise HypothesisFails(f"need reg(J) < reg(H), got {reg_J} >= {reg_H}")
    return reg_H + ell - 1


def reg_hypersurface(reg_H: int, d: int) -> int:
    """Regularity of ``H + (f)`` with ``f`` of degree ``d`` regular modulo ``H``."""
    if d < 1:
        raise BadParams("degree of f must be >= 1")
    return reg_H + d - 1


def reg_from_hvector(h) -> int:
    """Regularity of a Cohen-Macaulay ideal from its h-vector: ``deg h + 1``."""
    h = series.trim(h)
    if not h:
        raise BadParams("empty h-vector")
    return len(h)


# ---------------------------------------------------------------------------
# Betti numbers of M_t

@dataclass(frozen=True)
class BettiTable:
    entries: tuple[tuple[int, int, int], ...]  # (homological index, degree, rank)

    def numerator(self) -> tuple[int, ...]:
        """``1 + sum_i (-1)^i rank z^degree``: Hilbert numerator of ``R/I``."""
        top = max(j for _, j, _ in self.entries)
        out = [0] * (top + 1)
        out[0] = 1
        for i, j, r in self.entries:
            out[j] += (-1) ** i * r
        return series.trim(out)

    def regularity(self) -> int:
        h = max(i for i, _, _ in self.entries)  # projective dimension of R/I
        return max(j for i, j, _ in self.entries if i == h) - h + 1


def betti_Mt(t: int) -> BettiTable:
    if not isinstance(t, int) or t < 1:
        raise BadParams("M_t needs t >= 1")
    table = BettiTable(((1, t, 2 * t + 1), (2, t + 1, 2 * t + 1), (3, 2 * t + 1, 1)))
    expected = series.mul(hvec_Mt(t), series.one_minus_z_power(3))
    if table.numerator() != expected:
        raise ArithmeticError(f"Betti numerator of M_{t} does not match its h-vector")
    return table


# ---------------------------------------------------------------------------
# reports

@dataclass
class InvariantReport:
    spec: LadderIdealSpec
    height: int
    multiplicity: int
    hvector: Optional[tuple[int, ...]] = None
    regularity: Optional[int] = None
    source: str = "engine"

    def __post_init__(self):
        if self.hvector is not None and sum(self.hvector) != self.multiplicity:
            raise ArithmeticError("h-vector does not sum to the multiplicity")
        if (
            self.hvector is not None
            and self.regularity is not None
            and self.regularity != len(series.trim(self.hvector))
        ):
            raise ArithmeticError("regularity disagrees with the h-vector degree")

    def to_dict(self) -> dict:
        return {
            "spec": spec_to_json(self.spec),
            "height": self.height,
            "multiplicity": str(self.multiplicity),
            "hvector": None if self.hvector is None else list(self.hvector),
            "regularity": self.regularity,
            "source": self.source,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def _family_reg(family, params):
    fam = family
    if family == "Lk" and params.get("k") == 2:
        fam = "Lt2"
    if family == "Lk" and params.get("k") == 1:
        fam = "M"
    if family == "L^n" and params.get("n") == 2 * params.get("t", 0) + 2:
        fam = "Lt2"
    if fam in _REG:
        try:
            return reg_closed(fam, params["t"])
        except BadParams:
            return None
    return None


def report(spec: LadderIdealSpec = None, family: str = None, policy: str = "max_t", **params):
    """Invariants of a spec or of a named family.

    For families the multiplicity comes from the closed formulas and is
    cross-checked against the engine; the h-vector always comes from the
    engine, and the regularity from a closed form when one exists, otherwise
    from the h-vector.
    """
    if family is not None:
        spec = make_family(family, **params)
    if spec is None:
        raise BadParams("give a spec or a family")
    h = hvec_generic(spec, policy)
    mult = sum(h)
    source = "engine"
    reg = None
    if family is not None:
        formula = mult_formula(family, **params)
        if formula != mult:
            raise ArithmeticError(f"formula {formula} and engine {mult} disagree")
        source = "formula"
        reg = _family_reg({"Ln": "L^n"}.get(family, family), params)
    if reg is None:
        reg = reg_from_hvector(h)
    return InvariantReport(spec, ladder_height(spec), mult, h, reg, source)


def binomial_hilbert_function(h, dim: int, upto: int) -> list[int]:
    """Hilbert function values ``HF(0..upto)`` from an h-vector and Krull dimension."""
    out = []
    for m in range(upto + 1):
        out.append(sum(c * comb(m - i + dim - 1, dim - 1) for i, c in enumerate(h) if m >= i)
                   if dim > 0 else (h[m] if m < len(h) else 0))
    return out
