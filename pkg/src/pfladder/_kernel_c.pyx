# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernel_py``: same functions, same results.

Specs live in fixed C arrays during the recursion; memo keys are packed
into ``bytes`` (three bytes per corner), so indices must stay below 256.
"""

cdef enum:
    MAXC = 64

ctypedef struct Spec:
    int s
    int a[MAXC]
    int b[MAXC]
    int t[MAXC]


cdef int _from_tuple(object triples, Spec* out) except -1:
    cdef int i = 0
    if len(triples) + 1 >= MAXC:
        raise ValueError(f"at most {MAXC - 2} corners are supported")
    for x in triples:
        out.a[i] = x[0]
        out.b[i] = x[1]
        out.t[i] = x[2]
        if out.a[i] < 0 or out.b[i] > 255 or out.t[i] > 255:
            raise ValueError("corner indices must lie in 0..255")
        i += 1
    out.s = i
    return 0


cdef tuple _to_tuple(Spec* sp):
    return tuple([(sp.a[i], sp.b[i], sp.t[i]) for i in range(sp.s)])


cdef bytes _key(Spec* sp):
    cdef unsigned char buf[3 * MAXC]
    cdef int i
    for i in range(sp.s):
        buf[3 * i] = <unsigned char>sp.a[i]
        buf[3 * i + 1] = <unsigned char>sp.b[i]
        buf[3 * i + 2] = <unsigned char>sp.t[i]
    return (<char*>buf)[:3 * sp.s]


cdef void _prune(Spec* src, Spec* kept, Spec* dropped):
    cdef Spec live
    cdef int i, j, n = 0, ta, tb, tt
    cdef int size, lo, hi, inside
    cdef bint red
    for i in range(src.s):
        if 2 * src.t[i] <= src.b[i] - src.a[i] + 1:
            live.a[n] = src.a[i]
            live.b[n] = src.b[i]
            live.t[n] = src.t[i]
            n += 1
    live.s = n
    # insertion sort, then drop exact duplicates
    for i in range(1, n):
        ta = live.a[i]; tb = live.b[i]; tt = live.t[i]
        j = i - 1
        while j >= 0 and (live.a[j] > ta or (live.a[j] == ta and (
                live.b[j] > tb or (live.b[j] == tb and live.t[j] > tt)))):
            live.a[j + 1] = live.a[j]; live.b[j + 1] = live.b[j]; live.t[j + 1] = live.t[j]
            j -= 1
        live.a[j + 1] = ta; live.b[j + 1] = tb; live.t[j + 1] = tt
    j = 0
    for i in range(n):
        if j > 0 and live.a[j - 1] == live.a[i] and live.b[j - 1] == live.b[i] \
                and live.t[j - 1] == live.t[i]:
            continue
        live.a[j] = live.a[i]; live.b[j] = live.b[i]; live.t[j] = live.t[i]
        j += 1
    n = j
    kept.s = 0
    dropped.s = 0
    for i in range(n):
        size = live.b[i] - live.a[i] + 1
        red = False
        for j in range(n):
            if j == i or live.t[j] > live.t[i]:
                continue
            lo = live.a[i] if live.a[i] > live.a[j] else live.a[j]
            hi = live.b[i] if live.b[i] < live.b[j] else live.b[j]
            inside = hi - lo + 1
            if inside < 0:
                inside = 0
            if size - inside <= live.t[i] - live.t[j]:
                red = True
                break
        if red:
            dropped.a[dropped.s] = live.a[i]; dropped.b[dropped.s] = live.b[i]
            dropped.t[dropped.s] = live.t[i]; dropped.s += 1
        else:
            kept.a[kept.s] = live.a[i]; kept.b[kept.s] = live.b[i]
            kept.t[kept.s] = live.t[i]; kept.s += 1


cdef bint _canonical(Spec* sp):
    cdef int i, sh
    for i in range(1, sp.s):
        if sp.b[i] < sp.b[i - 1] or (sp.a[i] == sp.a[i - 1] and sp.b[i] == sp.b[i - 1]):
            return False
    if sp.s:
        sh = sp.a[0] - 1
        for i in range(sp.s):
            sp.a[i] -= sh
            sp.b[i] -= sh
    return True


cdef bint _step(Spec* key, int k, Spec* red, Spec* div):
    cdef Spec raw, scratch
    cdef int i, m = 0
    for i in range(key.s):
        if i != k:
            raw.a[m] = key.a[i]; raw.b[m] = key.b[i]; raw.t[m] = key.t[i]
            m += 1
    raw.a[m] = key.a[k] + 1; raw.b[m] = key.b[k] - 1; raw.t[m] = key.t[k] - 1
    raw.s = m + 1
    _prune(&raw, red, &scratch)
    if not _canonical(red):
        return False
    raw.a[m] = key.a[k]; raw.b[m] = key.b[k] - 1; raw.t[m] = key.t[k]
    raw.a[m + 1] = key.a[k] + 1; raw.b[m + 1] = key.b[k]; raw.t[m + 1] = key.t[k]
    raw.s = m + 2
    _prune(&raw, div, &scratch)
    return _canonical(div)


cdef void _order(Spec* key, int policy, int* idx):
    cdef int i, j, tmp
    cdef long ki, kj
    for i in range(key.s):
        idx[i] = i
    if policy == 1:
        return
    # selection sort by descending (score, index)
    for i in range(key.s):
        for j in range(i + 1, key.s):
            if policy == 0:
                ki = key.t[idx[i]] * 1024 + idx[i]
                kj = key.t[idx[j]] * 1024 + idx[j]
            else:
                ki = (key.b[idx[i]] - key.a[idx[i]]) * 1024 + idx[i]
                kj = (key.b[idx[j]] - key.a[idx[j]]) * 1024 + idx[j]
            if kj > ki:
                tmp = idx[i]; idx[i] = idx[j]; idx[j] = tmp


cdef bint _choose(Spec* key, int policy, Spec* red, Spec* div):
    cdef int idx[MAXC]
    cdef int i, k
    _order(key, policy, idx)
    for i in range(key.s):
        k = idx[i]
        if key.t[k] < 2:
            continue
        if _step(key, k, red, div):
            return True
    return False


cdef tuple _hadd(tuple r, tuple d):
    cdef Py_ssize_t n = max(len(r) + 1, len(d)), i
    out = [0] * n
    for i in range(len(r)):
        out[i + 1] = r[i]
    for i in range(len(d)):
        out[i] = out[i] + d[i]
    while out and out[len(out) - 1] == 0:
        out.pop()
    return tuple(out)


cdef class _Walker:
    cdef dict memo
    cdef int policy
    cdef int limit
    cdef bint hvec

    def __init__(self, int policy, int limit, bint hvec):
        self.memo = {}
        self.policy = policy
        self.limit = limit
        self.hvec = hvec

    cdef object go(self, Spec* sp, int depth):
        cdef bytes k = _key(sp)
        cdef Spec red, div
        cdef int i
        cdef bint trivial = True
        hit = self.memo.get(k)
        if hit is not None:
            return hit
        if depth > self.limit:
            raise RecursionError(f"depth limit {self.limit} exceeded")
        for i in range(sp.s):
            if sp.t[i] != 1:
                trivial = False
                break
        if trivial:
            if self.hvec:
                value = (1,)
            else:
                value = 1
        else:
            if not _choose(sp, self.policy, &red, &div):
                raise LookupError(f"no admissible step for {_to_tuple(sp)}")
            r = self.go(&red, depth + 1)
            d = self.go(&div, depth + 1)
            if self.hvec:
                value = _hadd(r, d)
            else:
                value = r + d
        self.memo[k] = value
        return value


# ---------------------------------------------------------------------------
# Python-facing API, mirroring _kernel_py

POLICY_MAX_T = 0
POLICY_MIN_K = 1
POLICY_LARGEST_SQUARE = 2


def prune(triples):
    cdef Spec src, kept, dropped
    _from_tuple(tuple(triples), &src)
    _prune(&src, &kept, &dropped)
    return list(_to_tuple(&kept)), list(_to_tuple(&dropped))


def canonical(kept):
    cdef Spec sp
    _from_tuple(tuple(kept), &sp)
    if not _canonical(&sp):
        return None
    return _to_tuple(&sp)


def step(key, int k):
    cdef Spec sp, red, div
    _from_tuple(key, &sp)
    if not _step(&sp, k, &red, &div):
        return None
    return _to_tuple(&red), _to_tuple(&div)


def choose(key, int policy):
    cdef Spec sp, red, div
    _from_tuple(key, &sp)
    if not _choose(&sp, policy, &red, &div):
        return None
    return _to_tuple(&red), _to_tuple(&div)


def mult_walk(key, int policy, int limit):
    cdef Spec sp
    _from_tuple(key, &sp)
    return _Walker(policy, limit, False).go(&sp, 0)


def hvec_walk(key, int policy, int limit):
    cdef Spec sp
    _from_tuple(key, &sp)
    return _Walker(policy, limit, True).go(&sp, 0)
