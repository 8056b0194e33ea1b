"""Ladders of a skew-symmetric matrix and their pfaffian ideals.

A ladder is stored by its upper corners ``(a, b)``: the ladder is the union
of the square blocks ``[a, b] x [a, b]``.  A :class:`LadderIdealSpec` attaches
a pfaffian half-size ``t`` to every corner, so that corner ``k`` contributes
the ``2 t_k``-pfaffians of its square block.  Indices are 1-based throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadCornerIndex,
    BadParams,
    CoincidentCorners,
    CornerOutOfRange,
    EmptySpec,
    InvalidSpec,
    NotSortable,
    StepNotApplicable,
    UnknownFamily,
)

__all__ = [
    "UpperCorner",
    "Ladder",
    "LadderIdealSpec",
    "BiliaisonStep",
    "make_ladder",
    "make_spec",
    "normalize",
    "is_normalized",
    "tilde",
    "height",
    "height_brute",
    "make_family",
    "FAMILIES",
    "biliaison_step",
    "admissible_corners",
    "canonical_key",
    "render_ascii",
    "spec_from_json",
    "spec_to_json",
    "load_spec",
]


@dataclass(frozen=True, order=True)
class UpperCorner:
    a: int
    b: int

    @property
    def size(self) -> int:
        return self.b - self.a + 1


@dataclass(frozen=True)
class Ladder:
    """Symmetric ladder given as a union of square blocks."""

    n: int
    corners: tuple[UpperCorner, ...]

    def __contains__(self, cell) -> bool:
        i, j = cell
        return any(c.a <= i <= c.b and c.a <= j <= c.b for c in self.corners)

    def cells(self) -> set[tuple[int, int]]:
        """Strictly-upper cells ``(i, j)``, ``i < j``, of the ladder."""
        out = set()
        for c in self.corners:
            for i in range(c.a, c.b + 1):
                for j in range(i + 1, c.b + 1):
                    out.add((i, j))
        return out


@dataclass(frozen=True)
class LadderIdealSpec:
    """The pair (ladder, t) defining a pfaffian ideal of a ladder."""

    ladder: Ladder
    t: tuple[int, ...]

    def __post_init__(self):
        if len(self.t) != len(self.ladder.corners):
            raise InvalidSpec(
                f"{len(self.t)} t-values for {len(self.ladder.corners)} corners"
            )
        if any((not isinstance(x, int)) or x < 1 for x in self.t):
            raise InvalidSpec(f"t-values must be positive integers, got {self.t}")

    @property
    def n(self) -> int:
        return self.ladder.n

    @property
    def corners(self) -> tuple[UpperCorner, ...]:
        return self.ladder.corners

    def triples(self) -> list[tuple[int, int, int]]:
        return [(c.a, c.b, t) for c, t in zip(self.ladder.corners, self.t)]

    def __len__(self) -> int:
        return len(self.t)

    def __str__(self) -> str:
        body = ", ".join(f"({a},{b}):{t}" for a, b, t in self.triples())
        return f"n={self.n} [{body}]"


@dataclass(frozen=True)
class BiliaisonStep:
    """One elementary G-biliaison of height 1.

    ``source`` is obtained from ``reduced`` by a biliaison on ``divisor``.
    ``pruned`` lists corners that redundancy removal dropped from either
    output spec (size-bound drops are not recorded).
    """

    source: LadderIdealSpec
    corner: int
    reduced: LadderIdealSpec
    divisor: LadderIdealSpec
    deg_f: int
    deg_g: int
    height: int = 1
    pruned: tuple[tuple[str, int, int, int], ...] = field(default=())


def make_ladder(n: int, corners: Iterable[Sequence[int]]) -> Ladder:
    """Validate and sort a list of upper corners.

    Raises :class:`CornerOutOfRange` unless ``1 <= a < b <= n`` for every
    corner, :class:`CoincidentCorners` on repeats, and :class:`NotSortable`
    when no ordering has both coordinates nondecreasing.
    """
    pairs = [tuple(c) for c in corners]
    if not pairs:
        raise EmptySpec("a ladder needs at least one upper corner")
    for p in pairs:
        if len(p) != 2:
            raise CornerOutOfRange(f"corner {p} is not a pair")
        a, b = p
        if not (1 <= a < b <= n):
            raise CornerOutOfRange(f"corner ({a},{b}) violates 1 <= a < b <= {n}")
    return Ladder(n, _sorted_corners(pairs))


def _sorted_corners(pairs) -> tuple[UpperCorner, ...]:
    ordered = sorted(pairs)
    for p, q in zip(ordered, ordered[1:]):
        if p == q:
            raise CoincidentCorners(f"corner {p} appears twice")
        if q[1] < p[1]:
            raise NotSortable(f"corners {p} and {q} cannot be ordered monotonically")
    return tuple(UpperCorner(a, b) for a, b in ordered)


def make_spec(n: int, corners: Iterable[Sequence[int]], t: Iterable[int]) -> LadderIdealSpec:
    """Build a spec; ``t[k]`` belongs to ``corners[k]`` in the given order."""
    corners = [tuple(c) for c in corners]
    t = list(t)
    if len(corners) != len(t):
        raise InvalidSpec(f"{len(t)} t-values for {len(corners)} corners")
    ladder = make_ladder(n, corners)
    by_corner = dict(zip(corners, t))
    return LadderIdealSpec(ladder, tuple(by_corner[(c.a, c.b)] for c in ladder.corners))


def _empty_spec(n: int) -> LadderIdealSpec:
    return LadderIdealSpec(Ladder(n, ()), ())


def _outside(p, q) -> int:
    """Number of indices of block ``p`` that are not in block ``q``."""
    (a, b), (c, d) = p, q
    lo, hi = max(a, c), min(b, d)
    inside = max(0, hi - lo + 1)
    return (b - a + 1) - inside


def _prune(triples):
    """Size-bound drop, dedupe, and redundancy removal on raw triples.

    Returns ``(kept, dropped_redundant)``.  A corner is redundant when some
    other corner ``q`` satisfies ``|X_p minus X_q| <= t_p - t_q``: expanding
    any ``2 t_p``-pfaffian of ``X_p`` along those outside indices leaves
    pfaffians of size at least ``2 t_q`` inside ``X_q``.  On adjacent
    monotone corners this is exactly the negation of the two inequalities
    ``a_k - a_{k-1} > t_{k-1} - t_k`` and ``b_k - b_{k-1} > t_k - t_{k-1}``.
    """
    live = sorted({(a, b, t) for a, b, t in triples if 2 * t <= b - a + 1})
    kept, dropped = [], []
    for a, b, t in live:
        redundant = any(
            (c, d, s) != (a, b, t) and _outside((a, b), (c, d)) <= t - s
            for c, d, s in live
        )
        (dropped if redundant else kept).append((a, b, t))
    return kept, dropped


def _spec_from_triples(n: int, triples) -> LadderIdealSpec:
    if not triples:
        return _empty_spec(n)
    corners = _sorted_corners([(a, b) for a, b, _ in triples])
    by_corner = {(a, b): t for a, b, t in triples}
    return LadderIdealSpec(Ladder(n, corners), tuple(by_corner[(c.a, c.b)] for c in corners))


def normalize(spec: LadderIdealSpec) -> LadderIdealSpec:
    """Drop corners that contribute nothing or are implied by another corner.

    The result generates the same ideal.  An empty result denotes the zero
    ideal.
    """
    kept, _ = _prune(spec.triples())
    return _spec_from_triples(spec.n, kept)


def is_normalized(spec: LadderIdealSpec) -> bool:
    return normalize(spec) == spec


def tilde(spec: LadderIdealSpec) -> Ladder:
    """The ladder with corners ``(a_k + t_k - 1, b_k - t_k + 1)``."""
    if not spec.t:
        raise EmptySpec("tilde of an empty spec")
    return make_ladder(spec.n, [(a + t - 1, b - t + 1) for a, b, t in spec.triples()])


def height(spec: LadderIdealSpec) -> int:
    """Height of the pfaffian ideal: strictly-upper cells of the tilde ladder."""
    spec = normalize(spec)
    if not spec.t:
        return 0
    blocks = [(c.a, c.b) for c in tilde(spec).corners]
    total = 0
    prev_hi = None
    for lo, hi in blocks:
        size = hi - lo + 1
        total += size * (size - 1) // 2
        if prev_hi is not None and prev_hi >= lo:
            # blocks strictly increase in both ends, so only the previous
            # block can overlap the current one beyond what it already shares
            ov = prev_hi - lo + 1
            total -= ov * (ov - 1) // 2
        prev_hi = hi
    return total


def height_brute(spec: LadderIdealSpec) -> int:
    """Cell enumeration over the union of tilde squares."""
    spec = normalize(spec)
    if not spec.t:
        return 0
    return len(tilde(spec).cells())


# ---------------------------------------------------------------------------
# named families

def _family_I(t, n):
    if not (1 <= t and 2 * t <= n):
        raise BadParams(f"I_t^n needs 1 <= 2t <= n, got t={t}, n={n}")
    return n, [(1, n)], [t]


def _family_Ln(t, n):
    if not (1 <= t and 2 * t <= n - 1):
        raise BadParams(f"L_t^n needs 2t <= n-1, got t={t}, n={n}")
    return n, [(1, n - 1), (2, n)], [t, t]


def _family_M(t):
    _need(t >= 1, "M_t needs t >= 1")
    return 2 * t + 1, [(1, 2 * t + 1)], [t]


def _family_SM(t):
    _need(t >= 1, "SM_t needs t >= 1")
    return 2 * t + 2, [(1, 2 * t + 2)], [t]


def _family_N(t):
    _need(t >= 2, "N_t needs t >= 2")
    return 2 * t + 1, [(1, 2 * t - 1), (1, 2 * t + 1)], [t - 1, t]


def _family_SN(t):
    _need(t >= 1, "SN_t needs t >= 1")
    if t == 1:
        # the (2t-2)-block is empty; SN_1 is generated by indeterminates
        return 4, [(1, 4)], [1]
    return 2 * t + 2, [(1, 2 * t - 1), (1, 2 * t + 2)], [t - 1, t]


def _family_Lk(t, k):
    _need(t >= 1 and k >= 1, "L_t(k) needs t >= 1 and k >= 1")
    return 2 * t + k, [(i, 2 * t + i) for i in range(1, k + 1)], [t] * k


def _family_Ljk(t, j, k):
    _need(j >= 0 and k >= 0 and j + k >= 1, "L_t(j,k) needs j, k >= 0 and j + k >= 1")
    _need(t >= 2 if j >= 1 else t >= 1, "L_t(j,k) needs t >= 2 when j >= 1")
    corners = [(i, 2 * t + i - 2) for i in range(1, j + 1)]
    start = max(j, 1)
    corners += [(start + i, 2 * t + start + i) for i in range(k)]
    n = max(b for _, b in corners)
    return n, corners, [t - 1] * j + [t] * k


def _family_Hjk(t, j, k):
    _need(j >= 0 and k >= 0 and j + k >= 1, "H_t(j,k) needs j, k >= 0 and j + k >= 1")
    _need(t >= 2 if j >= 1 else t >= 1, "H_t(j,k) needs t >= 2 when j >= 1")
    corners = [(i, 2 * t + i - 2) for i in range(1, j + 1)]
    corners += [(j + i, 2 * t + j + i) for i in range(1, k + 1)]
    n = max(b for _, b in corners)
    return n, corners, [t - 1] * j + [t] * k


def _need(cond, msg):
    if not cond:
        raise BadParams(msg)


FAMILIES = {
    "I": (_family_I, ("t", "n")),
    "L^n": (_family_Ln, ("t", "n")),
    "M": (_family_M, ("t",)),
    "SM": (_family_SM, ("t",)),
    "N": (_family_N, ("t",)),
    "SN": (_family_SN, ("t",)),
    "Lk": (_family_Lk, ("t", "k")),
    "Ljk": (_family_Ljk, ("t", "j", "k")),
    "Hjk": (_family_Hjk, ("t", "j", "k")),
}
_ALIASES = {"Ln": "L^n", "Lt2": "Lk"}


def make_family(name: str, **params) -> LadderIdealSpec:
    """Spec of a named family, e.g. ``make_family("Ljk", t=2, j=1, k=1)``.

    ``Lt2`` is accepted as shorthand for ``Lk`` with ``k=2``.
    """
    if name == "Lt2":
        params.setdefault("k", 2)
    name = _ALIASES.get(name, name)
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}")
    builder, names = FAMILIES[name]
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise BadParams(f"family {name} takes parameters {names}, got {sorted(params)}")
    for p in names:
        if not isinstance(params[p], int):
            raise BadParams(f"parameter {p} must be an integer")
    n, corners, t = builder(**{p: params[p] for p in names})
    return make_spec(n, corners, t)


# ---------------------------------------------------------------------------
# biliaison

def biliaison_step(spec: LadderIdealSpec, k: int) -> BiliaisonStep:
    """Elementary G-biliaison of height 1 at corner ``k`` (1-based).

    Corner ``k`` becomes ``(a+1, b-1)`` with ``t-1`` in the reduced spec, and
    is split into ``(a, b-1), (a+1, b)`` with ``t`` in the divisor spec.  Both
    outputs are re-normalized.  A step whose output is not a monotone ladder
    is rejected with :class:`StepNotApplicable`.
    """
    if not is_normalized(spec):
        raise StepNotApplicable("biliaison steps apply to normalized specs only")
    triples = spec.triples()
    if not (1 <= k <= len(triples)):
        raise BadCornerIndex(f"corner index {k} outside 1..{len(triples)}")
    a, b, t = triples[k - 1]
    if t < 2:
        raise StepNotApplicable(f"corner {k} has t={t}; the step needs t >= 2")
    others = triples[: k - 1] + triples[k:]
    reduced_raw = others + [(a + 1, b - 1, t - 1)]
    divisor_raw = others + [(a, b - 1, t), (a + 1, b, t)]
    pruned = []
    out = []
    for label, raw in (("reduced", reduced_raw), ("divisor", divisor_raw)):
        kept, dropped = _prune(raw)
        pruned += [(label, *d) for d in dropped]
        try:
            out.append(_spec_from_triples(spec.n, kept))
        except (NotSortable, CoincidentCorners) as exc:
            raise StepNotApplicable(f"step at corner {k} leaves the ladder family: {exc}") from None
    return BiliaisonStep(spec, k, out[0], out[1], deg_f=t - 1, deg_g=t, pruned=tuple(pruned))


def admissible_corners(spec: LadderIdealSpec) -> list[int]:
    """1-based indices of corners at which :func:`biliaison_step` succeeds."""
    ok = []
    for k, t in enumerate(spec.t, start=1):
        if t < 2:
            continue
        try:
            biliaison_step(spec, k)
        except StepNotApplicable:
            continue
        ok.append(k)
    return ok


def canonical_key(spec: LadderIdealSpec) -> tuple:
    """Translation-invariant key of the normalized spec."""
    spec = normalize(spec)
    if not spec.t:
        return ()
    shift = min(c.a for c in spec.corners) - 1
    return tuple((a - shift, b - shift, t) for a, b, t in spec.triples())


# ---------------------------------------------------------------------------
# rendering

def render_ascii(obj) -> str:
    """Draw the ladder as a grid.

    Each ladder cell shows the smallest ``t`` among the blocks containing it,
    so regions with different pfaffian sizes are visibly separated.  Cells
    outside the ladder print as ``.``; upper corners are listed underneath.
    """
    if isinstance(obj, LadderIdealSpec):
        ladder, ts = obj.ladder, obj.t
    else:
        ladder, ts = obj, (None,) * len(obj.corners)
    n = ladder.n
    width = max(3, len(str(n)) + 2)
    rows = [" " * 4 + "".join(f"{j:>{width - 1}} " for j in range(1, n + 1))]
    rows.append(" " * 4 + "+" + "-" * (width * n - 1))
    for i in range(1, n + 1):
        line = []
        for j in range(1, n + 1):
            owners = [
                t for c, t in zip(ladder.corners, ts) if c.a <= i <= c.b and c.a <= j <= c.b
            ]
            if not owners:
                ch = "."
            elif any(t is None for t in owners):
                ch = "#"
            else:
                ch = str(min(owners)) if min(owners) < 10 else "*"
            mark = " "
            if any(c.a == i and c.b == j for c in ladder.corners):
                ch, mark = ("@", " ") if ch == "#" else (ch, "'")
            line.append(f"{ch:>{width - 1}}{mark}")
        rows.append(f"{i:>3}|" + "".join(line))
    labels = [
        f"({c.a},{c.b})" + ("" if t is None else f" t={t}") for c, t in zip(ladder.corners, ts)
    ]
    rows.append("corners: " + ", ".join(labels) if labels else "corners: none")
    return "\n".join(r.rstrip() for r in rows)


# ---------------------------------------------------------------------------
# JSON interchange

def spec_to_json(spec: LadderIdealSpec) -> dict:
    return {
        "n": spec.n,
        "corners": [[c.a, c.b] for c in spec.corners],
        "t": list(spec.t),
    }


def spec_from_json(data) -> LadderIdealSpec:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n, corners, t = data["n"], data["corners"], data["t"]
    except (KeyError, TypeError):
        raise InvalidSpec('spec JSON must have keys "n", "corners", "t"') from None
    return make_spec(n, corners, t)


def load_spec(path) -> LadderIdealSpec:
    with open(path) as fh:
        return spec_from_json(json.load(fh))
