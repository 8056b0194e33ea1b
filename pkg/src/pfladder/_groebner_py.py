"""Pure-Python Gröbner and Hilbert-series kernels.

Polynomials are dicts ``{packed monomial: int}`` kept primitive (content 1,
positive leading coefficient); reductions are fraction-free, so all
arithmetic stays in Python integers.  The reduced basis over the rationals
is recovered by dividing each element by its leading coefficient.
"""

from math import gcd

from .errors import BudgetExceeded


def primitive(p):
    if not p:
        return p
    g = 0
    for v in p.values():
        g = gcd(g, v)
        if g == 1:
            break
    if p[max(p)] < 0:
        g = -g
    if g != 1:
        p = {k: v // g for k, v in p.items()}
    return p


def reduce_full(p, basis, P):
    """Fully reduce ``p`` by ``basis``, a list of ``(lm, lc, poly)``."""
    low, G, C = P.low, P.G, P.C
    p = dict(p)
    rem = {}
    while p:
        m = max(p)
        c = p.pop(m)
        ml = m & low
        for lm, lc, g in basis:
            if ((lm & low) + G - ml) & G == G:
                break
        else:
            rem[m] = c
            continue
        q = m - lm + C
        d = gcd(c, lc)
        a, b = lc // d, c // d
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for k in p:
                p[k] *= a
            for k in rem:
                rem[k] *= a
        shift = q - C
        for k, v in g.items():
            if k == lm:
                continue
            kk = k + shift
            nv = p.get(kk, 0) - b * v
            if nv:
                p[kk] = nv
            else:
                p.pop(kk, None)
    return primitive(rem)


def spoly(f, g, P):
    lf, lg = max(f), max(g)
    cf, cg = f[lf], g[lg]
    L = P.lcm(lf, lg)
    uf, ug = L - lf, L - lg  # multipliers, as additive shifts
    d = gcd(cf, cg)
    a, b = cg // d, cf // d
    out = {}
    for k, v in f.items():
        out[k + uf] = a * v
    for k, v in g.items():
        kk = k + ug
        nv = out.get(kk, 0) - b * v
        if nv:
            out[kk] = nv
        else:
            out.pop(kk, None)
    out.pop(L, None)
    return out


def _update(basis, pairs, lcm_of, P, idx):
    """Gebauer-Möller pair update after appending ``basis[idx]``."""
    lmf = basis[idx][0]
    keep = set()
    for pr in pairs:
        i, j = pr
        L = lcm_of[pr]
        if (
            P.divides(lmf, L)
            and L != P.lcm(basis[i][0], lmf)
            and L != P.lcm(basis[j][0], lmf)
        ):
            continue
        keep.add(pr)
    groups = {}
    for i in range(idx):
        groups.setdefault(P.lcm(basis[i][0], lmf), []).append(i)
    minimal = []
    for L in sorted(groups, key=lambda L: (P.degree(L), L)):
        if not any(P.divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        members = groups[L]
        if any(P.coprime(basis[i][0], lmf) for i in members):
            continue
        pr = (min(members), idx)
        keep.add(pr)
        lcm_of[pr] = L
    return keep


def buchberger(polys, P, budget=2_000_000):
    """Reduced Gröbner basis of integer polynomials (packed dicts).

    Returns a list of primitive polynomials sorted by leading monomial,
    largest first, plus the number of reductions performed.
    """
    basis = []
    pairs = set()
    lcm_of = {}
    work = 0
    for f in sorted((primitive(dict(f)) for f in polys if f), key=max):
        r = reduce_full(f, basis, P) if basis else f
        work += 1
        if not r:
            continue
        lm = max(r)
        basis.append((lm, r[lm], r))
        pairs = _update(basis, pairs, lcm_of, P, len(basis) - 1)
    while pairs:
        pr = min(pairs, key=lambda q: (P.degree(lcm_of[q]), lcm_of[q], q))
        pairs.discard(pr)
        i, j = pr
        s = spoly(basis[i][2], basis[j][2], P)
        work += 1
        if work > budget:
            raise BudgetExceeded(f"more than {budget} reductions")
        if not s:
            continue
        r = reduce_full(s, basis, P)
        if not r:
            continue
        lm = max(r)
        basis.append((lm, r[lm], r))
        pairs = _update(basis, pairs, lcm_of, P, len(basis) - 1)
    # minimalize, then interreduce
    basis.sort(key=lambda e: e[0])
    minimal = []
    for e in basis:
        if not any(P.divides(m[0], e[0]) for m in minimal):
            minimal.append(e)
    out = []
    for k, (lm, lc, g) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        r = reduce_full(g, others, P)
        out.append(r)
    out.sort(key=max, reverse=True)
    return out, work


# ---------------------------------------------------------------------------
# Hilbert series of monomial ideals

def minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(h, g)) for h in out):
            out.append(g)
    return out


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def _padd_shift(p, q, s):
    # p + z^s q
    out = list(p) + [0] * max(0, len(q) + s - len(p))
    for i, y in enumerate(q):
        out[i + s] += y
    return out


def hilbert_numerator(gens, nvars):
    """Numerator ``N(z)`` of ``HS(R / (gens)) = N(z) / (1 - z)^nvars``.

    Pivot recursion ``N(I) = N(I + (x)) + z N(I : x)`` on a variable ``x``
    shared by several generators; pairwise coprime generators give the
    product of ``1 - z^deg``.
    """
    memo = {}

    def rec(I):
        if not I:
            return [1]
        key = frozenset(I)
        hit = memo.get(key)
        if hit is not None:
            return hit
        counts = [0] * nvars
        for g in I:
            for v, e in enumerate(g):
                if e:
                    counts[v] += 1
        v = max(range(nvars), key=lambda i: counts[i])
        if counts[v] <= 1:
            out = [1]
            for g in I:
                d = sum(g)
                f = [1] + [0] * (d - 1) + [-1]
                out = _pmul(out, f)
        else:
            unit = tuple(1 if i == v else 0 for i in range(nvars))
            plus = minimalize([g for g in I if not g[v]] + [unit])
            colon = minimalize(
                [tuple(e - 1 if i == v and e else e for i, e in enumerate(g)) for g in I]
            )
            out = _padd_shift(rec(plus), rec(colon), 1)
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        memo[key] = out
        return out

    return tuple(rec(minimalize(gens)))
