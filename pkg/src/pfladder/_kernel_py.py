"""Pure-Python kernels: biliaison recursion on raw corner triples.

A spec is a tuple of ``(a, b, t)`` triples, normalized, sorted and
translated so that the first corner starts in row 1.  The compiled module
``_kernel_c`` implements the same functions with the same signatures.
"""

from functools import lru_cache

POLICY_MAX_T = 0
POLICY_MIN_K = 1
POLICY_LARGEST_SQUARE = 2


def prune(triples):
    live = sorted({x for x in triples if 2 * x[2] <= x[1] - x[0] + 1})
    kept = []
    dropped = []
    for p in live:
        a, b, t = p
        red = False
        for q in live:
            c, d, s = q
            if s > t or q is p:
                continue
            # cells of p outside q, capped by the size of p when disjoint
            if c > b or d < a:
                outside = b - a + 1
            else:
                outside = (c - a if c > a else 0) + (b - d if b > d else 0)
            if outside <= t - s:
                red = True
                break
        if red:
            dropped.append(p)
        else:
            kept.append(p)
    return kept, dropped


def canonical(kept):
    """Sort check and translation; ``None`` when the corners are not monotone."""
    if not kept:
        return ()
    prev_a = prev_b = 0
    for a, b, _ in kept:
        if b < prev_b or (a == prev_a and b == prev_b):
            return None
        prev_a, prev_b = a, b
    s = kept[0][0] - 1
    if s == 0:
        return tuple(kept)
    return tuple((a - s, b - s, t) for a, b, t in kept)


def step(key, k):
    """Reduced and divisor keys for the step at 0-based corner ``k``."""
    a, b, t = key[k]
    others = key[:k] + key[k + 1:]
    red = canonical(prune(others + ((a + 1, b - 1, t - 1),))[0])
    if red is None:
        return None
    div = canonical(prune(others + ((a, b - 1, t), (a + 1, b, t)))[0])
    if div is None:
        return None
    return red, div


def _order(key, policy):
    idx = range(len(key))
    if policy == POLICY_MAX_T:
        return sorted(idx, key=lambda k: (key[k][2], k), reverse=True)
    if policy == POLICY_MIN_K:
        return list(idx)
    return sorted(idx, key=lambda k: (key[k][1] - key[k][0], k), reverse=True)


@lru_cache(maxsize=1 << 17)
def choose(key, policy):
    for k in _order(key, policy):
        if key[k][2] < 2:
            continue
        out = step(key, k)
        if out is not None:
            return out
    return None


def _walk(key, policy, limit, leaf, combine):
    memo = {}

    def go(key, depth):
        hit = memo.get(key)
        if hit is not None:
            return hit
        if depth > limit:
            raise RecursionError(f"depth limit {limit} exceeded")
        if all(x[2] == 1 for x in key):
            value = leaf
        else:
            nxt = choose(key, policy)
            if nxt is None:
                raise LookupError(f"no admissible step for {key}")
            value = combine(go(nxt[0], depth + 1), go(nxt[1], depth + 1))
        memo[key] = value
        return value

    return go(key, 0)


def mult_walk(key, policy, limit):
    return _walk(key, policy, limit, 1, int.__add__)


def _hadd(r, d):
    # z * r + d
    n = max(len(r) + 1, len(d))
    out = [0] * n
    for i, c in enumerate(r):
        out[i + 1] += c
    for i, c in enumerate(d):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def hvec_walk(key, policy, limit):
    return _walk(key, policy, limit, (1,), _hadd)
