"""
Restricted Fischer groups, weighted Steiner triple systems, Fischer spaces
and the affine GF(3) coverings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BlockViolation, DegenerateAbelian, NotBijective, OrderCap, UnsupportedParams
from .steiner import SteinerTripleSystem, validate_sts
from .tables import (ORDER_CAP, Check, GroupTable, MagmaTable, closure, gf3_index, gf3_vector,
                     make_group, scan2, scan3)


@dataclass(frozen=True, eq=False)
class FischerPair:
    g: GroupTable
    e_set: tuple

    def __post_init__(self):
        object.__setattr__(self, "e_set", tuple(sorted(int(x) for x in self.e_set)))


def is_restricted_fischer(g: GroupTable, e_set) -> Check:
    """E generates G, consists of involutions, and for x, y in E: (xy)^3 = 1, xyx in E.

    Witnesses are tagged tuples: ``("generation",)``, ``("involution", x)``,
    ``("order3", x, y)`` or ``("conjugate", x, y)``.
    """
    e = sorted(set(int(x) for x in e_set))
    if len(closure(g, e)) != g.order:
        return Check(False, ("generation",))
    t = g.table
    for x in e:
        if t[x, x] != 0 or (x == 0 and g.order > 1):
            return Check(False, ("involution", x))
    eset = set(e)
    for x, y in itertools.product(e, e):
        xy = t[x, y]
        if t[t[xy, xy], xy] != 0:
            return Check(False, ("order3", x, y))
        if int(t[xy, x]) not in eset:
            return Check(False, ("conjugate", x, y))
    return Check(True)


@dataclass(frozen=True, eq=False)
class WeightedSTS:
    """A triple system with weights ``w[p]`` (p = 1..n) in ``g``; ``w[0]`` is unused."""

    sts: SteinerTripleSystem
    g: GroupTable
    w: np.ndarray

    @property
    def image(self):
        return tuple(sorted(set(int(v) for v in self.w[1:])))

    def to_json(self):
        return {"sts": self.sts.to_json(), "g": self.g.to_json(),
                "w": {str(p): int(self.w[p]) for p in range(1, self.sts.point_count + 1)}}


def validate_weighted_sts(sts: SteinerTripleSystem, g: GroupTable, w) -> WeightedSTS:
    """Check that every weight is an involution and w(x)w(y)w(x) = w(xy) on every block."""
    n = sts.point_count
    if isinstance(w, dict):
        arr = np.zeros(n + 1, dtype=np.int64)
        for k, v in w.items():
            arr[int(k)] = int(v)
    else:
        arr = np.asarray(w, dtype=np.int64).ravel()
        if len(arr) == n:
            arr = np.concatenate([[0], arr])
    if len(arr) != n + 1:
        raise ValueError(f"need a weight for each of the {n} points")
    arr = arr.copy()
    arr[0] = 0
    t = g.table
    for p in range(1, n + 1):
        v = arr[p]
        if not 0 <= v < g.order or v == 0 or t[v, v] != 0:
            raise ValueError(f"weight of point {p} is not an involution")
    for block in sts.blocks:
        for x, y in itertools.permutations(block, 2):
            xy = sts.third_point(x, y)
            if t[t[arr[x], arr[y]], arr[x]] != arr[xy]:
                raise BlockViolation(block)
    arr.flags.writeable = False
    return WeightedSTS(sts, g, arr)


@dataclass(frozen=True)
class FischerSpace:
    points: tuple
    lines: tuple

    def third(self):
        out = {}
        for line in self.lines:
            for a, b in itertools.permutations(line, 2):
                out[(a, b)] = next(c for c in line if c not in (a, b))
        return out


def generated_is_abelian(g: GroupTable, gens):
    m = closure(g, gens)
    sub = g.table[np.ix_(m, m)]
    return bool((sub == sub.T).all())


def fischer_space_of(g: GroupTable, involutions) -> FischerSpace:
    """Lines {a, b, aba} for every non-commuting pair of the given involutions."""
    pts = sorted(set(int(x) for x in involutions))
    t = g.table
    lines = set()
    pset = set(pts)
    for a, b in itertools.combinations(pts, 2):
        if t[a, b] != t[b, a]:
            c = int(t[t[a, b], a])
            line = tuple(sorted((a, b, c)))
            assert len(set(line)) == 3 and c in pset, "line not closed in the point set"
            lines.add(line)
    return FischerSpace(tuple(pts), tuple(sorted(lines)))


def fischer_space(ws: WeightedSTS):
    """The Fischer space on the weights and the map phi: point -> weight.

    phi is checked to be a homomorphism of triple systems: on each block the
    three weights are equal or form a line.
    """
    image = ws.image
    if generated_is_abelian(ws.g, image):
        raise DegenerateAbelian("the weights generate an abelian group")
    space = fischer_space_of(ws.g, image)
    lines = set(space.lines)
    for block in ws.sts.blocks:
        vals = tuple(sorted(int(ws.w[p]) for p in block))
        if not (len(set(vals)) == 1 or vals in lines):
            raise AssertionError(f"phi is not a triple-system homomorphism on {block}")
    phi = np.asarray(ws.w).copy()
    return space, phi


def affine_sts(n) -> SteinerTripleSystem:
    """AG(n, 3): points are vectors of (Z3)^n, point index = gf3_index(v) + 1,
    lines {p, q, -p-q}."""
    q = 3 ** n
    if q + 1 > ORDER_CAP:
        raise OrderCap(f"3^{n} points exceed the order cap")
    vecs = np.array([gf3_vector(i, n) for i in range(q)], dtype=np.int64).reshape(q, n)
    weights = 3 ** np.arange(n)
    blocks = set()
    for i, j in itertools.combinations(range(q), 2):
        k = int(((-vecs[i] - vecs[j]) % 3) @ weights)
        blocks.add(tuple(sorted((i + 1, j + 1, k + 1))))
    return validate_sts(q, sorted(blocks))


def affine_weights(n, s):
    """w(z) = (tau(z), alpha) in (Z3)^s x| Z2, tau truncating to the first s coordinates."""
    q = 3 ** n
    w = np.zeros(q + 1, dtype=np.int64)
    for i in range(q):
        w[i + 1] = gf3_index(gf3_vector(i, n)[:s]) + 3 ** s
    return w


def affine_covering(s, n):
    """Covering AG(n, 3) -> L(I) for G = (Z3)^s x| Z2, n > s >= 1.

    Returns ``(FischerPair(G, I), covering, weighted_sts)``; ``covering[p]``
    is the involution assigned to point p.
    """
    if not n > s >= 1:
        raise UnsupportedParams(f"need n > s >= 1, got s={s}, n={n}")
    ws = affine_weighted_sts(s, n)
    return FischerPair(ws.g, ws.image), ws.w, ws


def affine_weighted_sts(s, n) -> WeightedSTS:
    """AG(n, 3) weighted into (Z3)^s x| Z2 by truncation; s = n gives the bijective case."""
    if not n >= s >= 1:
        raise UnsupportedParams(f"need n >= s >= 1, got s={s}, n={n}")
    g = make_group("gf3_semidirect", s=s)
    ws = validate_weighted_sts(affine_sts(n), g, affine_weights(n, s))
    assert ws.image == tuple(range(3 ** s, 2 * 3 ** s))
    return ws


def hall_system_check(space: FischerSpace) -> Check:
    """Every triangle (three pairwise collinear points not on one line)
    spans, under line completion, an affine plane of order 3."""
    third = space.third()
    on_line = {frozenset(l) for l in space.lines}
    for a, b, c in itertools.combinations(space.points, 3):
        if (a, b) not in third or (a, c) not in third or (b, c) not in third:
            continue
        if frozenset((a, b, c)) in on_line:
            continue
        span = {a, b, c}
        while True:
            grown = span | {third[(p, q)] for p in span for q in span if (p, q) in third}
            if grown == span:
                break
            span = grown
        inner = [l for l in space.lines if set(l) <= span]
        pairs = {frozenset(pq) for l in inner for pq in itertools.combinations(l, 2)}
        if len(span) != 9 or len(inner) != 12 or len(pairs) != 36:
            return Check(False, (a, b, c))
    return Check(True)


def distributive_quasigroup(ws: WeightedSTS) -> MagmaTable:
    """x * y = third point of the block through x, y and x * x = x.

    Element i of the table is the point i + 1.
    """
    vals = [int(v) for v in ws.w[1:]]
    if len(set(vals)) != len(vals):
        raise NotBijective("weights are not pairwise distinct")
    if generated_is_abelian(ws.g, vals):
        raise DegenerateAbelian("the weights generate an abelian group")
    n = ws.sts.point_count
    third = ws.sts._third
    t = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            t[x, y] = x if x == y else third[x + 1, y + 1] - 1
    m = MagmaTable(t)
    for name, chk in quasigroup_properties(m).items():
        assert chk.holds, f"{name} fails at {chk.witness}"
    return m


def quasigroup_properties(m: MagmaTable):
    """Idempotence, commutativity, x*(x*y) = y and left distributivity."""
    t = m.table
    n = m.order
    r = np.arange(n)
    idem = np.flatnonzero(t[r, r] != r)
    return {
        "idempotent": Check(not len(idem), (int(idem[0]),) if len(idem) else None),
        "commutative": _wrap(scan2(n, lambda x, y: t[x, y] == t[y, x])),
        "symmetric": _wrap(scan2(n, lambda x, y: t[x, t[x, y]] == y)),
        "left_distributive": _wrap(scan3(n, lambda x, y, z: t[x, t[y, z]] == t[t[x, y], t[x, z]])),
    }


def _wrap(w):
    return Check(w is None, w)


def involution_quasigroup(g: GroupTable, involutions) -> MagmaTable:
    """a o b = aba on a conjugation-closed set of involutions, indexed by sorted order."""
    inv = sorted(int(x) for x in involutions)
    pos = {v: i for i, v in enumerate(inv)}
    t = g.table
    n = len(inv)
    out = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(inv):
        for j, b in enumerate(inv):
            out[i, j] = pos[int(t[t[a, b], a])]
    return MagmaTable(out)
