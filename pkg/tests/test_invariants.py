import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import all_normalized_specs, raw_specs
from pfladder import invariants as inv
from pfladder import series
from pfladder.errors import BadParams, HypothesisFails, UnknownFamily
from pfladder.invariants import (
    EngineTrace,
    betti_Mt,
    binomial_hilbert_function,
    closed_form_Ltn,
    delta,
    hvec_ci2,
    hvec_generic,
    hvec_Mt,
    is_decreasing_type,
    is_unimodal,
    mult_formula,
    mult_generic,
    mult_krattenthaler,
    mult_Lt2,
    mult_Ltjk,
    mult_Ltk,
    mult_Ltn,
    mult_Htjk,
    mult_Mt,
    mult_Nt,
    mult_product,
    mult_SMt,
    mult_SNt,
    reg_biliaison,
    reg_closed,
    reg_from_hvector,
    reg_hypersurface,
    report,
)
from pfladder.ladder import make_family, make_spec


# -- product formula for the full square ------------------------------------

@pytest.mark.parametrize("n", range(2, 12))
def test_krattenthaler_t1_is_one(n):
    assert mult_krattenthaler(1, n) == 1


def test_krattenthaler_values():
    assert mult_krattenthaler(2, 6) == 14
    assert mult_krattenthaler(2, 7) == 42
    # t = 2 is the degree of the Grassmannian of planes: Catalan number C_{n-2}
    for n in range(4, 16):
        m = n - 2
        assert mult_krattenthaler(2, n) == comb(2 * m, m) // (m + 1)


def test_krattenthaler_bad_params():
    with pytest.raises(BadParams):
        mult_krattenthaler(3, 5)
    with pytest.raises(BadParams):
        mult_krattenthaler(0, 5)


# -- named-family formulas --------------------------------------------------

def test_square_values():
    assert [mult_Mt(t) for t in (1, 2, 4)] == [1, 5, 30]
    assert mult_Mt(4) == mult_krattenthaler(4, 9)


def test_two_corner_values():
    assert mult_Ltn(2, 5) == 4
    assert mult_Ltn(2, 6) == 13 == mult_Lt2(2)
    assert mult_Ltn(2, 7) == 41
    with pytest.raises(BadParams):
        mult_Ltn(3, 6)


def test_lt2_and_nt_values():
    assert mult_Lt2(1) == 1
    assert mult_Nt(2) == 3
    assert mult_Nt(1) == 1
    assert mult_Lt2(2) == 13 == mult_Nt(2) + 2 * mult_Mt(2)


@pytest.mark.parametrize("t", range(2, 9))
def test_lt2_splits_into_nt_and_mt(t):
    assert mult_Lt2(t) == mult_Nt(t) + t * mult_Mt(t)


def test_six_square_values():
    assert mult_SMt(1) == 1
    assert mult_SMt(2) == 14 == mult_krattenthaler(2, 6)
    assert mult_SMt(3) == mult_krattenthaler(3, 8)


def test_staircase_values():
    assert [mult_Ltk(1, k) for k in range(1, 6)] == [1] * 5
    assert mult_Ltk(2, 3) == 34
    assert mult_Ltk(2, 1) == 5
    assert mult_Ltjk(2, 1, 1) == 3 == mult_Nt(2)
    assert mult_Ltjk(2, 2, 1) == 3
    assert mult_Ltjk(2, 1, 2) == 8
    assert mult_Htjk(2, 1, 1) == 5
    assert mult_Htjk(3, 2, 1) == 182
    assert mult_Htjk(3, 0, 2) == mult_Ltk(3, 2)
    with pytest.raises(BadParams):
        mult_Ltjk(2, 1, 0)


def test_six_square_with_inner_block_values():
    assert mult_SNt(1) == 1
    assert mult_SNt(2) == 9


def test_formula_dispatch():
    assert mult_formula("Ln", t=2, n=6) == 13
    assert mult_formula("Lt2", t=2) == 13
    assert mult_formula("Ljk", t=3, j=0, k=2) == mult_Ltk(3, 2)
    assert mult_formula("Ljk", t=3, j=2, k=0) == mult_Ltk(2, 2)
    assert mult_formula("I", t=2, n=7) == 42
    with pytest.raises(UnknownFamily):
        mult_formula("Z", t=1)


@pytest.mark.parametrize("t", range(1, 5))
@pytest.mark.parametrize("k", range(1, 5))
def test_family_identities_transfer(t, k):
    assert mult_formula("Ljk", t=t + 1, j=k, k=0) == mult_formula("Ljk", t=t, j=0, k=k)
    assert mult_Htjk(t, 0, k) == mult_Ltk(t, k)


# -- the two-corner closed form ---------------------------------------------

@pytest.mark.parametrize("t", range(2, 6))
@pytest.mark.parametrize("n", range(4, 13))
def test_closed_form_matches_shifted_difference(t, n):
    if 2 * t > n:
        return
    assert closed_form_Ltn(t, n) == mult_Ltn(t, n + 1)


def test_closed_form_with_longer_product_disagrees():
    bad = [
        (t, n)
        for t in range(2, 5)
        for n in range(2 * t, 11)
        if closed_form_Ltn(t, n, bound=n - 2 * t + 2) != mult_Ltn(t, n + 1)
    ]
    assert bad  # the longer product is not the right one
    assert isinstance(closed_form_Ltn(2, 5, bound=3), Fraction)


# -- engine -----------------------------------------------------------------

ENGINE_CASES = (
    [("M", {"t": t}) for t in range(1, 5)]
    + [("SM", {"t": t}) for t in range(1, 5)]
    + [("N", {"t": t}) for t in range(2, 5)]
    + [("SN", {"t": t}) for t in range(1, 5)]
    + [("Lt2", {"t": t}) for t in range(1, 5)]
    + [("Lk", {"t": t, "k": k}) for t in range(1, 5) for k in range(1, 5)]
    + [("Ljk", {"t": t, "j": j, "k": k}) for t in range(2, 5) for j in range(0, 5)
       for k in range(0, 5) if j + k >= 1]
    + [("Hjk", {"t": t, "j": j, "k": k}) for t in range(2, 5) for j in range(0, 5)
       for k in range(0, 5) if j + k >= 1]
    + [("L^n", {"t": t, "n": n}) for t in range(1, 5) for n in range(2 * t + 1, 13)]
)


@pytest.mark.parametrize("family, params", ENGINE_CASES)
def test_engine_matches_formula(family, params):
    spec = make_family(family, **params)
    h = hvec_generic(spec)
    assert mult_generic(spec) == mult_formula(family, **params) == sum(h)
    assert h[0] == 1


def test_engine_examples():
    assert mult_generic(make_family("M", t=2)) == 5
    assert mult_generic(make_family("N", t=2)) == 3
    assert hvec_generic(make_family("M", t=2)) == (1, 3, 1)
    assert hvec_generic(make_family("L^n", t=2, n=5)) == (1, 2, 1)
    assert hvec_generic(make_family("N", t=2)) == (1, 2)


def test_two_blocks_of_smaller_pfaffians():
    # 2-pfaffians of rows 1..3 and of rows 2..5: the difference of the two formulas
    spec = make_spec(5, [(1, 3), (2, 5)], [1, 1])
    assert mult_generic(spec) == mult_SNt(2) - mult_Ltjk(2, 1, 2) == 1


def test_undersized_corner_vanishes():
    # rows 1..3 carry no 4-pfaffian; one 4-pfaffian (a quadric) remains
    assert mult_generic(make_spec(5, [(1, 3), (2, 5)], [2, 2])) == 2


def test_hvec_of_squares():
    for t in range(1, 8):
        assert hvec_generic(make_family("M", t=t)) == hvec_Mt(t)


@pytest.mark.parametrize("policy", ["min_k", "largest_square"])
def test_policy_independence_exhaustive(policy):
    for spec in all_normalized_specs(8):
        assert hvec_generic(spec, policy) == hvec_generic(spec)


@settings(max_examples=60, deadline=None)
@given(raw_specs(nmax=10))
def test_trace_walker_matches_kernel(spec):
    trace = EngineTrace()
    assert mult_generic(spec, trace=trace) == mult_generic(spec)
    assert hvec_generic(spec, trace=EngineTrace()) == hvec_generic(spec)


def test_trace_counts_steps():
    trace = EngineTrace()
    mult_generic(make_family("M", t=3), trace=trace)
    assert trace.steps > 0


def test_unknown_policy():
    with pytest.raises(BadParams):
        mult_generic(make_family("M", t=2), policy="random")


def test_empty_spec_has_multiplicity_one():
    assert mult_generic(make_spec(3, [(1, 3)], [2])) == 1
    assert hvec_generic(make_spec(3, [(1, 3)], [2])) == (1,)


# -- product theorem --------------------------------------------------------

PRODUCT_PAIRS = [
    (make_spec(6, [(1, 3)], [1]), make_spec(6, [(2, 6)], [2])),
    (make_spec(6, [(1, 2)], [1]), make_spec(6, [(2, 6)], [2])),
    (make_spec(7, [(1, 5)], [2]), make_spec(7, [(4, 7)], [1])),
    (make_spec(7, [(1, 4)], [1]), make_spec(7, [(3, 7)], [2])),
    (make_spec(7, [(1, 5)], [2]), make_spec(7, [(3, 7)], [2])),
]


@pytest.mark.parametrize("s1, s2", PRODUCT_PAIRS)
def test_product_rule(s1, s2):
    assert mult_product(s1, s2) == mult_generic(s1) * mult_generic(s2)


def test_product_examples():
    s1, s2 = PRODUCT_PAIRS[0]
    assert mult_product(s1, s2) == 5 == mult_generic(make_family("Hjk", t=2, j=1, k=1))
    assert mult_product(make_spec(10, [(1, 5)], [2]), make_spec(10, [(6, 10)], [2])) == 25
    with pytest.raises(HypothesisFails):
        mult_product(make_spec(6, [(1, 5)], [2]), make_spec(6, [(2, 6)], [2]))


# -- h-vectors --------------------------------------------------------------

def test_hvec_ci2():
    assert hvec_ci2(1) == (1,)
    assert hvec_ci2(2) == (1, 2, 1)
    assert hvec_ci2(3) == (1, 2, 3, 2, 1)


def test_hvec_Mt_values():
    assert hvec_Mt(1) == (1,)
    assert hvec_Mt(2) == (1, 3, 1)
    assert hvec_Mt(3) == (1, 3, 6, 3, 1)
    for t in range(1, 12):
        assert sum(hvec_Mt(t)) == mult_Mt(t)
        assert len(hvec_Mt(t)) == 2 * t - 1


def test_delta():
    assert delta([1, 1, 1, 1]) == [1, 0, 0, 0]
    assert delta([1, 2, 3, 4]) == [1, 1, 1, 1]
    # R/M_2 in 10 variables; values confirmed by counting standard monomials
    hf = binomial_hilbert_function(hvec_Mt(2), 7, 4)
    assert hf == [1, 10, 50, 175, 490]
    assert delta(hf) == [1, 9, 40, 125, 315]


def test_decreasing_and_unimodal():
    assert is_decreasing_type((1, 3, 1)) and is_unimodal((1, 3, 1))
    assert not is_decreasing_type((1, 2, 1, 2)) and not is_unimodal((1, 2, 1, 2))
    assert is_decreasing_type((1, 3, 3, 1))
    assert not is_decreasing_type((1, 3, 2, 2)) and is_unimodal((1, 3, 2, 2))
    for t in range(1, 31):
        assert is_decreasing_type(hvec_Mt(t))


@given(st.lists(st.integers(0, 9), min_size=1, max_size=10))
def test_decreasing_type_implies_unimodal(h):
    if is_decreasing_type(h):
        assert is_unimodal(h)


# -- regularity -------------------------------------------------------------

def test_reg_closed_examples():
    assert reg_closed("M", 2) == 3
    assert reg_closed("N", 2) == 2
    assert reg_closed("SM", 2) == 4
    assert reg_closed("Lt2", 2) == 4
    with pytest.raises(BadParams):
        reg_closed("N", 1)
    with pytest.raises(UnknownFamily):
        reg_closed("Hjk", 2)


def test_reg_biliaison():
    assert reg_biliaison(1, 2, 1) == 2
    for t in range(3, 8):
        assert reg_biliaison(3 * t - 7, 3 * t - 5, 1) == 3 * t - 5
    with pytest.raises(HypothesisFails):
        reg_biliaison(5, 5, 1)


def test_reg_hypersurface():
    for t in range(2, 8):
        assert reg_hypersurface(2 * t - 3, t - 1) == 3 * t - 5
        assert reg_hypersurface(2 * t - 3, t) == 3 * t - 4
    assert reg_hypersurface(7, 1) == 7
    with pytest.raises(BadParams):
        reg_hypersurface(3, 0)


def test_reg_from_hvector():
    assert reg_from_hvector((1, 2)) == 2
    assert reg_from_hvector((1,)) == 1
    for t in range(1, 10):
        assert reg_from_hvector(hvec_Mt(t)) == reg_closed("M", t) == 2 * t - 1


@pytest.mark.parametrize("t", [2, 3])
def test_reg_from_engine_hvectors(t):
    for fam in ("M", "Lt2", "N", "SM"):
        assert reg_from_hvector(hvec_generic(make_family(fam, t=t))) == reg_closed(fam, t)


# -- Betti numbers ----------------------------------------------------------

def test_betti_Mt():
    table = betti_Mt(1)
    assert sorted(table.entries) == [(1, 1, 3), (2, 2, 3), (3, 3, 1)]
    assert betti_Mt(2).numerator() == (1, 0, -5, 5, 0, -1)
    assert series.mul((1, 3, 1), series.one_minus_z_power(3)) == (1, 0, -5, 5, 0, -1)
    for t in range(1, 31):
        assert betti_Mt(t).regularity() == 2 * t - 1


# -- reports ----------------------------------------------------------------

def test_report_json_schema():
    rep = report(family="M", t=2)
    data = json.loads(rep.to_json())
    assert list(data) == ["spec", "height", "multiplicity", "hvector", "regularity", "source"]
    assert data["multiplicity"] == "5"
    assert (data["height"], data["hvector"], data["regularity"]) == (3, [1, 3, 1], 3)
    assert data["source"] == "formula"


def test_report_for_arbitrary_spec():
    rep = report(make_spec(7, [(1, 5), (3, 7)], [2, 2]))
    assert rep.source == "engine"
    assert rep.multiplicity == 25
    assert rep.regularity == len(rep.hvector)


def test_report_consistency_checks():
    spec = make_family("M", t=2)
    with pytest.raises(ArithmeticError):
        inv.InvariantReport(spec, 3, 6, (1, 3, 1))
    with pytest.raises(ArithmeticError):
        inv.InvariantReport(spec, 3, 5, (1, 3, 1), regularity=4)


@settings(max_examples=40, deadline=None)
@given(raw_specs())
def test_hvec_sums_to_multiplicity(spec):
    h = hvec_generic(spec)
    assert sum(h) == mult_generic(spec)
    assert h[0] == 1
