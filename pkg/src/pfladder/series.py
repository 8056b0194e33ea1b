"""Integer univariate polynomials as coefficient tuples (constant term first)."""

from __future__ import annotations

from itertools import zip_longest


def trim(p) -> tuple[int, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def add(p, q) -> tuple[int, ...]:
    return trim(x + y for x, y in zip_longest(p, q, fillvalue=0))


def sub(p, q) -> tuple[int, ...]:
    return trim(x - y for x, y in zip_longest(p, q, fillvalue=0))


def shift(p, k: int = 1) -> tuple[int, ...]:
    p = trim(p)
    return (0,) * k + p if p else ()


def mul(p, q) -> tuple[int, ...]:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return trim(out)


def one_minus_z_power(k: int) -> tuple[int, ...]:
    out = (1,)
    for _ in range(k):
        out = mul(out, (1, -1))
    return out


def divide_one_minus_z(p):
    """Divide by ``1 - z``; returns ``(quotient, remainder)``.

    The remainder is the value of ``p`` at ``z = 1``.
    """
    p = trim(p)
    if not p:
        return (), 0
    # p(z) = (1 - z) q(z) + r  with  r = p(1)  and  q_i = -sum_{j > i} p_j
    r = sum(p)
    q, acc = [], 0
    for c in p[:-1]:
        acc += c
        q.append(acc - r)
    return trim(q), r


def evaluate(p, z):
    acc = 0
    for c in reversed(p):
        acc = acc * z + c
    return acc
