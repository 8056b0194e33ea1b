"""Shared generators for the test suite."""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from pfladder.ladder import is_normalized, make_spec


def _chains(n, prev=None):
    yield []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if prev is None or (a > prev[0] and b > prev[1]):
                for rest in _chains(n, (a, b)):
                    yield [(a, b)] + rest


def normalized_specs(n):
    """Every normalized spec whose largest column index is exactly ``n``."""
    for corners in _chains(n):
        if not corners or corners[-1][1] != n:
            continue
        ranges = [range(1, (b - a + 1) // 2 + 1) for a, b in corners]
        for ts in itertools.product(*ranges):
            spec = make_spec(n, corners, ts)
            if is_normalized(spec):
                yield spec


def all_normalized_specs(nmax):
    for n in range(2, nmax + 1):
        yield from normalized_specs(n)


@st.composite
def raw_specs(draw, nmax=9):
    """Structurally valid specs (monotone corners), not necessarily normalized."""
    n = draw(st.integers(2, nmax))
    s = draw(st.integers(1, 4))
    a_vals = sorted(draw(st.lists(st.integers(1, n - 1), min_size=s, max_size=s)))
    corners = []
    for a in a_vals:
        lo = max(a + 1, corners[-1][1] if corners else 2)
        if lo > n:
            break
        corners.append((a, draw(st.integers(lo, n))))
    corners = sorted(set(corners))
    ts = [draw(st.integers(1, 4)) for _ in corners]
    return make_spec(n, corners, ts)


def det(rows):
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return out
