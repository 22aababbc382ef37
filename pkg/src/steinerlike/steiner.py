"""
Steiner triple systems and Steiner loops.

Points of a system are ``1 .. n``; index 0 is reserved for the identity of the
associated loop, so the loop on ``n`` points has order ``n + 1`` and the
point ``p`` is the loop element ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BadBlock, BadResidue, NotSteiner, OrderCap, PairDuplicated, PairMissing
from .tables import ORDER_CAP, Check, LoopTable, scan2


@dataclass(frozen=True)
class SteinerTripleSystem:
    point_count: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(p) for p in b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)

    def third_point(self, p, q):
        return int(self._third[p, q])

    @property
    def _third(self):
        n = self.point_count
        out = np.zeros((n + 1, n + 1), dtype=np.int64)
        for a, b, c in self.blocks:
            out[a, b] = out[b, a] = c
            out[a, c] = out[c, a] = b
            out[b, c] = out[c, b] = a
        return out

    def to_json(self):
        return {"n": self.point_count, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, d):
        return validate_sts(int(d["n"]), d["blocks"])


def validate_sts(n, blocks) -> SteinerTripleSystem:
    """Check that every pair of distinct points of ``1..n`` lies in exactly one block."""
    n = int(n)
    seen = {}
    for raw in blocks:
        b = tuple(int(p) for p in raw)
        if len(b) != 3 or len(set(b)) != 3:
            raise BadBlock(f"block {raw} does not have three distinct points")
        if any(not 1 <= p <= n for p in b):
            raise BadBlock(f"block {raw} has a point outside 1..{n}")
        for p, q in combinations(sorted(b), 2):
            if (p, q) in seen:
                raise PairDuplicated(p, q)
            seen[(p, q)] = b
    for p, q in combinations(range(1, n + 1), 2):
        if (p, q) not in seen:
            raise PairMissing(p, q)
    return SteinerTripleSystem(n, tuple(blocks))


def _bose(n):
    # n = 3v with v odd; idempotent commutative quasigroup x o y = (x + y)/2 mod v
    v = n // 3
    half = (v + 1) // 2

    def pt(x, i):
        return 1 + x + v * i

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(v)]
    for i in range(3):
        for x, y in combinations(range(v), 2):
            blocks.append((pt(x, i), pt(y, i), pt((x + y) * half % v, (i + 1) % 3)))
    return blocks


def _skolem(n):
    # n = 6k + 1 = 3 * 2k + 1; half-idempotent commutative quasigroup of order 2k
    m = (n - 1) // 3
    k = m // 2

    def op(x, y):
        s = (x + y) % m
        return s // 2 if s % 2 == 0 else k + s // 2

    inf = n

    def pt(x, i):
        return 1 + x + m * i

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(k)]
    for x in range(k):
        for i in range(3):
            blocks.append((inf, pt(k + x, i), pt(x, (i + 1) % 3)))
    for i in range(3):
        for x, y in combinations(range(m), 2):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)))
    return blocks


def construct_sts(n) -> SteinerTripleSystem:
    """A Steiner triple system on ``n`` points.

    n = 3 (mod 6) uses the Bose construction, n = 1 (mod 6) the Skolem
    construction; n = 0 gives the empty system.
    """
    n = int(n)
    if n + 1 > ORDER_CAP:
        raise OrderCap(f"{n} points exceed the loop order cap")
    if n == 0:
        return SteinerTripleSystem(0, ())
    if n % 6 == 3:
        blocks = _bose(n)
    elif n % 6 == 1:
        blocks = _skolem(n)
    else:
        raise BadResidue(f"no Steiner triple system on {n} points (need n = 1, 3 mod 6)")
    return validate_sts(n, blocks)


def loop_from_sts(s: SteinerTripleSystem) -> LoopTable:
    """x*y = third point of the block through x, y; x*x = e."""
    t = s._third.copy()
    n = s.point_count + 1
    r = np.arange(n)
    t[0, :] = r
    t[:, 0] = r
    t[r, r] = 0
    return LoopTable(t)


def is_steiner_loop(l: LoopTable) -> Check:
    """Totally symmetric: xy = yx and x(xy) = y for all x, y."""
    t = l.table
    w = scan2(l.order, lambda x, y: (t[x, y] == t[y, x]) & (t[x, t[x, y]] == y))
    return Check(w is None, w)


def sts_from_loop(l: LoopTable) -> SteinerTripleSystem:
    if not is_steiner_loop(l):
        raise NotSteiner("table is not totally symmetric")
    n = l.order - 1
    blocks = {tuple(sorted((x, y, int(l.table[x, y]))))
              for x, y in combinations(range(1, n + 1), 2)}
    return validate_sts(n, sorted(blocks))


def fano():
    return loop_from_sts(construct_sts(7))


def klein():
    """The order-4 Steiner loop (the Klein four-group)."""
    return loop_from_sts(construct_sts(3))
