import json
import random
from itertools import combinations, combinations_with_replacement
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import all_normalized_specs, det, raw_specs
from pfladder import _groebner_py, oracle
from pfladder.errors import BudgetExceeded, IndexOutOfRange, NegativeHEntry, OddSubset, TooManyGenerators
from pfladder.invariants import hvec_Mt, mult_generic
from pfladder.ladder import height, make_family, make_spec, normalize
from pfladder.oracle import (
    buchberger,
    generators,
    hilbert_numerator,
    pfaffian,
    quotient_invariants,
    verify,
)
from pfladder.polynomial import Monomial, Packer, Polynomial, TermOrder, var_index


def mono(n, *pairs):
    idx = var_index(n)
    dense = [0] * (n * (n - 1) // 2)
    for p in pairs:
        dense[idx[p]] += 1
    return Monomial.from_dense(dense)


# -- pfaffians --------------------------------------------------------------

def test_two_by_two_pfaffian_is_a_variable():
    p = pfaffian(5, (2, 4))
    assert p.terms == ((1, mono(5, (2, 4))),)


def test_four_by_four_pfaffian():
    p = pfaffian(4, (1, 2, 3, 4))
    got = {m: c for c, m in p.terms}
    assert got == {
        mono(4, (1, 2), (3, 4)): 1,
        mono(4, (1, 3), (2, 4)): -1,
        mono(4, (1, 4), (2, 3)): 1,
    }


def test_six_by_six_pfaffian_term_count():
    p = pfaffian(6, range(1, 7))
    assert len(p) == 15
    assert all(abs(c) == 1 for c, _ in p.terms)


def test_pfaffian_errors():
    with pytest.raises(OddSubset):
        pfaffian(5, (1, 2, 3))
    with pytest.raises(IndexOutOfRange):
        pfaffian(4, (1, 5))
    with pytest.raises(IndexOutOfRange):
        pfaffian(4, (1, 1))


def _skew(values, n):
    a = [[0] * n for _ in range(n)]
    for (i, j), v in values.items():
        a[i - 1][j - 1] = v
        a[j - 1][i - 1] = -v
    return a


@pytest.mark.parametrize("size", [2, 4, 6])
def test_pfaffian_squares_to_determinant(size):
    rng = random.Random(size)
    n = 7
    idx = var_index(n)
    for subset in list(combinations(range(1, n + 1), size))[:6]:
        p = pfaffian(n, subset)
        for _ in range(20):
            vals = {v: rng.randint(-9, 9) for v in idx}
            point = [vals[v] for v in idx]
            sub = _skew({(i, j): vals[(i, j)] for i, j in combinations(subset, 2)}, n)
            rows = [[sub[i - 1][j - 1] for j in subset] for i in subset]
            assert p.evaluate(point) ** 2 == det(rows)


# -- generators -------------------------------------------------------------

def test_generators_examples():
    assert len(generators(make_family("M", t=1))) == 3
    assert all(len(g) == 1 for g in generators(make_family("M", t=1)))
    assert len(generators(make_family("M", t=2))) == 5
    two = generators(make_family("L^n", t=2, n=5))
    assert two == [pfaffian(5, (1, 2, 3, 4)), pfaffian(5, (2, 3, 4, 5))]


def test_generators_cap():
    with pytest.raises(TooManyGenerators):
        generators(make_family("M", t=2), cap=4)


def test_divisor_generators_avoid_the_corner_cell():
    # the split corners generate the pfaffians of the square that avoid x_{1,5}
    spec = make_spec(5, [(1, 4), (2, 5)], [2, 2])
    subsets = {S for S in combinations(range(1, 6), 4) if not {1, 5} <= set(S)}
    assert set(oracle.generator_subsets(spec)) == subsets


# -- Gröbner bases ----------------------------------------------------------

def test_monomial_generators_are_their_own_basis():
    gens = generators(make_family("M", t=1))
    gb = buchberger(gens)
    assert sorted(g.leading_monomial.exps for g in gb) == sorted(
        g.leading_monomial.exps for g in gens
    )


def test_coprime_leading_terms_keep_the_input():
    order = TermOrder(6)
    f = Polynomial.from_dense({(1, 0, 0, 0, 0, 0): 2, (0, 0, 0, 0, 0, 1): 4}, order)
    g = Polynomial.from_dense({(0, 1, 0, 0, 0, 0): 3, (0, 0, 0, 0, 0, 1): 1}, order)
    gb = buchberger([f, g])
    assert set(gb) == {f.monic(), g.monic()}


def test_reduced_basis_is_monic_and_reduced():
    gb = buchberger(generators(make_family("SM", t=2)))
    leads = [g.leading_monomial for g in gb]
    for g in gb:
        assert g.leading_term[0] == 1
        for _, m in g.terms:
            assert not any(l.divides(m) for l in leads if l != g.leading_monomial)


def test_square_basis_numerator():
    spec = make_family("M", t=2)
    qi, num, _, _ = oracle.oracle_invariants(spec)
    assert num == (1, 0, -5, 5, 0, -1)


def test_budget():
    with pytest.raises(BudgetExceeded):
        buchberger(generators(make_family("SM", t=2)), budget=3)


@pytest.mark.parametrize("family, params", [
    ("SM", {"t": 2}), ("L^n", {"t": 2, "n": 7}), ("Hjk", {"t": 2, "j": 1, "k": 2}),
])
def test_basis_independent_of_input_order(family, params):
    gens = generators(make_family(family, **params))
    ref = buchberger(gens)
    rng = random.Random(7)
    for _ in range(3):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        scaled = [g * rng.choice([-3, -1, 2, 5]) for g in shuffled]
        assert buchberger(scaled) == ref


def _s_poly_reduces_to_zero(gb):
    P = Packer(gb[0].order.nvars)
    packed = []
    for g in gb:
        den = 1
        for c, _ in g.terms:
            den = den * c.denominator
        packed.append({P.pack(m.dense(P.nvars)): int(c * den) for c, m in g.terms})
    basis = [(max(p), p[max(p)], p) for p in packed]
    for f, g in combinations(packed, 2):
        s = _groebner_py.spoly(f, g, P)
        if s and _groebner_py.reduce_full(s, basis, P):
            return False
    return True


def test_every_s_polynomial_reduces_to_zero():
    for fam, params in [("SM", {"t": 2}), ("N", {"t": 2}), ("L^n", {"t": 2, "n": 6})]:
        assert _s_poly_reduces_to_zero(buchberger(generators(make_family(fam, **params))))


# -- Hilbert numerators -----------------------------------------------------

def test_numerator_examples():
    assert hilbert_numerator([(1,)], 1) == (1, -1)
    assert hilbert_numerator([(2, 0), (1, 1)], 2) == (1, 0, -2, 1)
    assert hilbert_numerator([], 3) == (1,)


def _hf_by_enumeration(mi, nvars, m):
    count = 0
    for combo in combinations_with_replacement(range(nvars), m):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        if not any(all(x <= y for x, y in zip(g, e)) for g in mi):
            count += 1
    return count


def _hf_from_numerator(num, nvars, m):
    from math import comb

    return sum(c * comb(m - i + nvars - 1, nvars - 1) for i, c in enumerate(num) if i <= m)


monomial_ideals = st.integers(1, 10).flatmap(
    lambda nv: st.tuples(
        st.just(nv),
        st.lists(st.tuples(*[st.integers(0, 2)] * nv).filter(any), min_size=1, max_size=6),
    )
)


@settings(max_examples=80, deadline=None)
@given(monomial_ideals)
def test_numerator_matches_monomial_count(case):
    nv, gens = case
    mi = _groebner_py.minimalize(gens)
    num = hilbert_numerator(mi, nv)
    for m in range(4):
        assert _hf_from_numerator(num, nv, m) == _hf_by_enumeration(mi, nv, m)


def test_numerator_of_square_initial_ideal_by_enumeration():
    spec = make_family("M", t=2)
    dense, nv = oracle._dense_generators(spec, 5000)
    P = Packer(nv)
    basis, _ = _groebner_py.buchberger([oracle._to_packed(P, g) for g in dense], P)
    mi = oracle.initial_ideal(basis, P)
    num = hilbert_numerator(mi, nv)
    for m in range(4):
        assert _hf_from_numerator(num, nv, m) == _hf_by_enumeration(mi, nv, m)


# -- quotient invariants ----------------------------------------------------

def test_quotient_invariants_examples():
    qi = quotient_invariants((1, -1), 1)
    assert (qi.height, qi.multiplicity, qi.hvector, qi.reg_cm) == (1, 1, (1,), 1)
    qi = quotient_invariants((1, 0, -5, 5, 0, -1), 10)
    assert (qi.height, qi.dim, qi.multiplicity, qi.hvector, qi.reg_cm) == (3, 7, 5, (1, 3, 1), 3)
    assert qi.hvector == hvec_Mt(2)


def test_quotient_invariants_of_segre_block():
    qi, _, _, _ = oracle.oracle_invariants(make_family("N", t=2))
    assert (qi.height, qi.multiplicity, qi.hvector, qi.reg_cm) == (5, 3, (1, 2), 2)


def test_negative_h_entry():
    with pytest.raises(NegativeHEntry):
        quotient_invariants((1, -2, 2), 3)  # (1-z)(1-z+z^2)


# -- verification -----------------------------------------------------------

@pytest.mark.parametrize("family, params", [
    ("M", {"t": 1}), ("M", {"t": 2}), ("SM", {"t": 2}), ("N", {"t": 2}),
    ("L^n", {"t": 2, "n": 5}), ("L^n", {"t": 2, "n": 6}), ("Ljk", {"t": 2, "j": 1, "k": 1}),
    ("Hjk", {"t": 2, "j": 1, "k": 1}), ("SN", {"t": 2}),
])
def test_verify_named_instances(family, params):
    rep = oracle.verify_family(family, **params)
    assert rep.passed, rep.fields


def test_verify_report_fields():
    rep = oracle.verify_family("SM", t=2)
    actual = {k: v["actual"] for k, v in rep.fields.items()}
    assert actual["height"] == 6 and actual["multiplicity"] == 14 and actual["regularity"] == 4
    rep = oracle.verify_family("L^n", t=2, n=6)
    assert rep.fields["regularity"] == {"expected": 4, "actual": 4, "pass": True}
    data = json.loads(rep.to_json())
    assert data["pass"] is True
    assert set(data["fields"]["hvector"]) == {"expected", "actual", "pass"}


def test_basis_dump_format():
    rep = verify(make_family("M", t=1), keep_basis=True)
    assert rep.basis_text().splitlines() == ["1 x1_2", "1 x1_3", "1 x2_3"]
    rep = verify(make_family("L^n", t=2, n=5), keep_basis=True)
    first = rep.basis_text().splitlines()[0]
    assert first.startswith("1 ") and " + " in first


def test_height_matches_oracle_exhaustive():
    for spec in all_normalized_specs(7):
        qi, _, _, _ = oracle.oracle_invariants(spec)
        assert qi.height == height(spec)


def test_engine_matches_oracle_exhaustive():
    for spec in all_normalized_specs(7):
        assert verify(spec).passed, str(spec)


@settings(max_examples=40, deadline=None)
@given(raw_specs(nmax=7))
def test_normalization_keeps_the_ideal(spec):
    norm = normalize(spec)
    raw = [g for g in generators(spec)]
    kept = [g for g in generators(norm)] if norm.t else []
    if not raw:
        assert not kept
        return
    assert buchberger(raw) == buchberger(kept)
