"""
Finite magmas, loops and groups given by Cayley tables.

Elements are the integers ``0 .. n-1``.  Loops always carry their identity at
index 0; :func:`validate_loop` renumbers a table into that normal form.
Subsets of elements are sorted tuples wrapped in :class:`SubsetReport`.

Triple scans are vectorised over the first variable in chunks, so every
"first witness" reported here is the lexicographically least failing tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (BadIndex, NoIdentity, NotAssociative, NotLatin, NotNormal,
                     OrderCap, UnsupportedParams)

ORDER_CAP = 4096

# elements of the (chunk, n, n) boolean block evaluated per scan step
_SCAN_BUDGET = 1 << 22


class Check(NamedTuple):
    """Outcome of an exhaustive check: truth value plus least failing tuple."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return bool(self.holds)


def _check_cap(n, cap=None):
    cap = ORDER_CAP if cap is None else cap
    if n > cap:
        raise OrderCap(f"order {n} exceeds cap {cap}")


def scan2(n, holds: Callable) -> tuple | None:
    """Least ``(x, y)`` with ``holds(x, y)`` false, or None.

    ``holds`` receives broadcastable index arrays of shape (c, 1) and (1, n).
    """
    r = np.arange(n)
    ok = np.broadcast_to(holds(r[:, None], r[None, :]), (n, n))
    if ok.all():
        return None
    return tuple(int(v) for v in np.argwhere(~ok)[0])


def scan3(n, holds: Callable) -> tuple | None:
    """Least ``(x, y, z)`` with ``holds(x, y, z)`` false, or None.

    The first variable is processed in doubling chunks so that an early
    failure costs almost nothing.
    """
    r = np.arange(n)
    y = r[None, :, None]
    z = r[None, None, :]
    budget = max(1, _SCAN_BUDGET // max(1, n * n))
    start, size = 0, 1
    while start < n:
        stop = min(n, start + size)
        x = r[start:stop, None, None]
        ok = np.broadcast_to(holds(x, y, z), (stop - start, n, n))
        if not ok.all():
            i, j, k = np.argwhere(~ok)[0]
            return (start + int(i), int(j), int(k))
        start = stop
        size = min(2 * size, budget)
    return None


@dataclass(frozen=True, eq=False)
class MagmaTable:
    """A binary operation on ``range(n)`` stored as an n x n index array."""

    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64, copy=True)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise BadIndex(f"table must be a non-empty square array, got shape {t.shape}")
        n = t.shape[0]
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            i, j = bad[0]
            raise BadIndex(f"entry ({i}, {j}) = {t[i, j]} is outside [0, {n})")
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    @property
    def order(self):
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def mul(self, x, y):
        return int(self.table[x, y])

    def __eq__(self, other):
        return (isinstance(other, MagmaTable) and self.order == other.order
                and bool(np.array_equal(self.table, other.table)))

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"{type(self).__name__}(order={self.order})"

    def to_json(self):
        return {"order": self.order, "table": self.table.tolist()}


class LoopTable(MagmaTable):
    """A Latin square with two-sided identity 0.

    Construction checks the loop axioms; use :func:`validate_loop` to accept
    a table whose identity sits elsewhere.
    """

    def __post_init__(self):
        super().__post_init__()
        t = self.table
        n = self.order
        r = np.arange(n)
        if not (np.array_equal(t[0], r) and np.array_equal(t[:, 0], r)):
            raise NoIdentity("element 0 is not a two-sided identity")
        _check_latin(t)

    @cached_property
    def ldiv(self):
        """``ldiv[a, b] = a \\ b``, the unique y with a*y = b."""
        n = self.order
        out = np.empty_like(self.table)
        out[np.arange(n)[:, None], self.table] = np.arange(n)[None, :]
        out.flags.writeable = False
        return out

    @cached_property
    def rdiv(self):
        """``rdiv[b, a] = b / a``, the unique x with x*a = b."""
        n = self.order
        out = np.empty_like(self.table)
        out[self.table, np.arange(n)[None, :]] = np.arange(n)[:, None]
        out.flags.writeable = False
        return out

    @cached_property
    def left_inverse(self):
        """x^lambda = e / x."""
        return np.ascontiguousarray(self.rdiv[0])

    @cached_property
    def right_inverse(self):
        """x^rho = x \\ e."""
        return np.ascontiguousarray(self.ldiv[:, 0])

    def to_json(self):
        d = super().to_json()
        d["identity"] = 0
        return d


def _check_latin(t):
    n = t.shape[0]
    r = np.arange(n)
    for side, arr in (("row", t), ("column", t.T)):
        srt = np.sort(arr, axis=1)
        bad = np.flatnonzero((srt != r[None, :]).any(axis=1))
        if len(bad):
            i = int(bad[0])
            row = srt[i]
            dup = row[1:][row[1:] == row[:-1]]
            raise NotLatin(side, i, int(dup[0]) if len(dup) else None)


class GroupTable(LoopTable):
    """An associative loop.  ``inverse[x]`` is the two-sided inverse."""

    def __post_init__(self):
        super().__post_init__()
        gens = _greedy_generators(self)
        t = self.table
        for g in gens:
            # Light's test: (x g) y == x (g y) for every generator g
            if not np.array_equal(t[t[:, g]], t[:, t[g]]):
                raise NotAssociative(f"Light's test fails at generator {g}")

    @cached_property
    def inverse(self):
        inv = np.ascontiguousarray(self.ldiv[:, 0])
        inv.flags.writeable = False
        return inv

    def inv(self, x):
        return int(self.inverse[x])

    def prod(self, *xs):
        acc = 0
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    def power(self, x, k):
        if k < 0:
            x, k = self.inv(x), -k
        acc = 0
        for _ in range(k):
            acc = int(self.table[acc, x])
        return acc

    def conj(self, x, g):
        """g^-1 x g."""
        return self.prod(self.inv(g), x, g)

    def commutator(self, x, y):
        """[x, y] = x^-1 y^-1 x y."""
        return self.prod(self.inv(x), self.inv(y), x, y)

    @cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def center_mask(self):
        t = self.table
        return (t == t.T).all(axis=1)

    def is_central(self, x):
        return bool(self.center_mask[x])


@dataclass(frozen=True)
class SubsetReport:
    members: tuple
    label: str

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(int(m) for m in self.members)))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return int(x) in set(self.members)

    def to_json(self):
        return list(self.members)


class Nuclei(NamedTuple):
    left: SubsetReport
    right: SubsetReport
    middle: SubsetReport
    nucleus: SubsetReport


def _greedy_generators(l: MagmaTable):
    """A small generating set, chosen greedily by least missing element."""
    n = l.order
    gens = []
    have = closure(l, [], divisions=False)
    mask = np.zeros(n, dtype=bool)
    mask[have] = True
    while not mask.all():
        g = int(np.flatnonzero(~mask)[0])
        gens.append(g)
        have = closure(l, gens, divisions=False)
        mask[:] = False
        mask[have] = True
    return gens


def closure(l: MagmaTable, gens, divisions=True):
    """Sorted array of the smallest subset containing 0 and ``gens`` that is
    closed under multiplication (and both divisions when ``l`` is a loop)."""
    t = l.table
    use_div = divisions and isinstance(l, LoopTable)
    members = np.unique(np.concatenate([[0], np.asarray(list(gens), dtype=np.int64)]))
    while True:
        ix = np.ix_(members, members)
        parts = [members, t[ix].ravel()]
        if use_div:
            parts += [l.ldiv[ix].ravel(), l.rdiv[ix].ravel()]
        grown = np.unique(np.concatenate(parts))
        if len(grown) == len(members):
            return members
        members = grown


def validate_loop(m, identity=0) -> LoopTable:
    """Check the loop axioms and return the table with identity renumbered to 0.

    The renumbering swaps the labels ``0`` and ``identity``.
    """
    if not isinstance(m, MagmaTable):
        m = MagmaTable(np.asarray(m))
    n = m.order
    _check_cap(n)
    if not 0 <= identity < n:
        raise BadIndex(f"identity {identity} outside [0, {n})")
    t = m.table
    r = np.arange(n)
    if not (np.array_equal(t[identity], r) and np.array_equal(t[:, identity], r)):
        raise NoIdentity(f"element {identity} is not a two-sided identity")
    _check_latin(t)
    if identity != 0:
        perm = r.copy()
        perm[0], perm[identity] = identity, 0
        inv = np.argsort(perm)
        t = perm[t[np.ix_(inv, inv)]]
    return LoopTable(t)


def as_group(l: MagmaTable) -> GroupTable:
    if isinstance(l, GroupTable):
        return l
    return GroupTable(l.table)


def is_associative(l: MagmaTable) -> Check:
    """x(yz) == (xy)z for all triples; witness is the least failing (x, y, z)."""
    t = l.table
    w = scan3(l.order, lambda x, y, z: t[t[x, y], z] == t[x, t[y, z]])
    return Check(w is None, w)


def is_commutative(l: MagmaTable) -> Check:
    t = l.table
    w = scan2(l.order, lambda x, y: t[x, y] == t[y, x])
    return Check(w is None, w)


def nuclei(l: LoopTable) -> Nuclei:
    """Left, right and middle nucleus and their intersection."""
    n = l.order
    t = l.table
    nl = np.ones(n, dtype=bool)
    nm = np.ones(n, dtype=bool)
    nr = np.ones(n, dtype=bool)
    r = np.arange(n)
    step = max(1, _SCAN_BUDGET // (n * n))
    for start in range(0, n, step):
        x = r[start:start + step, None, None]
        ok = t[t[x, r[None, :, None]], r[None, None, :]] == t[x, t[r[:, None], r[None, :]][None]]
        nl[start:start + step] = ok.all(axis=(1, 2))
        nm &= ok.all(axis=(0, 2))
        nr &= ok.all(axis=(0, 1))
    out = []
    for mask, label in ((nl, "left_nucleus"), (nr, "right_nucleus"), (nm, "middle_nucleus"),
                        (nl & nr & nm, "nucleus")):
        members = np.flatnonzero(mask)
        _assert_subloop(l, members)
        out.append(SubsetReport(tuple(members), label))
    return Nuclei(*out)


def _assert_subloop(l, members):
    members = np.asarray(members)
    assert len(members) and members[0] == 0
    closed = np.isin(l.table[np.ix_(members, members)], members).all()
    assert closed, "subset not closed under multiplication"


def centre(l: LoopTable) -> SubsetReport:
    """Elements of the nucleus commuting with everything."""
    t = l.table
    nuc = np.asarray(nuclei(l).nucleus.members)
    comm = (t[nuc] == t[:, nuc].T).all(axis=1)
    members = nuc[comm]
    _assert_subloop(l, members)
    return SubsetReport(tuple(members), "centre")


def derived_subloop(l: LoopTable) -> SubsetReport:
    """Smallest subloop containing every commutator and associator.

    Commutator: (yx) \\ (xy).  Associator: (x(yz)) \\ ((xy)z).
    """
    n = l.order
    t, ld = l.table, l.ldiv
    gens = set(np.unique(ld[t.T, t]).tolist())
    r = np.arange(n)
    step = max(1, _SCAN_BUDGET // (n * n))
    yz = t[r[:, None], r[None, :]]
    for start in range(0, n, step):
        x = r[start:start + step, None, None]
        left = t[x, yz[None]]
        right = t[t[x, r[None, :, None]], r[None, None, :]]
        gens.update(np.unique(ld[left, right]).tolist())
    members = closure(l, sorted(gens))
    return SubsetReport(tuple(members), "derived")


def subgroup_generated(g: GroupTable, gens) -> SubsetReport:
    members = closure(g, gens)
    return SubsetReport(tuple(members), "generated")


def subtable(l: LoopTable, members):
    """Restrict ``l`` to a subloop; returns (table, members) with the
    sub-table indexed by position in ``members``."""
    members = np.asarray(sorted(int(m) for m in members), dtype=np.int64)
    pos = -np.ones(l.order, dtype=np.int64)
    pos[members] = np.arange(len(members))
    sub = pos[l.table[np.ix_(members, members)]]
    if (sub < 0).any():
        raise BadIndex("subset is not closed under multiplication")
    cls = GroupTable if isinstance(l, GroupTable) else LoopTable
    return cls(sub), members


def is_normal(g: GroupTable, members) -> bool:
    members = np.asarray(list(members))
    inv = g.inverse
    t = g.table
    conj = t[t[inv[:, None], members[None, :]], np.arange(g.order)[:, None]]
    return bool(np.isin(conj, members).all())


def quotient_group(g: GroupTable, n):
    """Coset table of ``g`` modulo the normal subgroup ``n``.

    Returns ``(quotient, projection)``; cosets are numbered in order of their
    least element, so the trivial coset is 0.
    """
    members = np.asarray(list(n.members if isinstance(n, SubsetReport) else n), dtype=np.int64)
    if not len(members) or members.min() != 0 or not np.isin(
            g.table[np.ix_(members, members)], members).all():
        raise NotNormal("not a subgroup")
    if not is_normal(g, members):
        raise NotNormal("subgroup is not normal")
    proj = -np.ones(g.order, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if proj[x] < 0:
            proj[g.table[x, members]] = len(reps)
            reps.append(x)
    reps = np.asarray(reps)
    q = GroupTable(proj[g.table[np.ix_(reps, reps)]])
    assert np.array_equal(proj[g.table], q.table[proj[:, None], proj[None, :]])
    proj.flags.writeable = False
    return q, proj


def element_order(g: LoopTable, x) -> int:
    """Least k >= 1 with x^k = e (powers taken left to right)."""
    acc, k = int(x), 1
    while acc != 0:
        acc = int(g.table[acc, x])
        k += 1
        if k > g.order:
            raise AssertionError("element has no finite order")
    return k


def _cyclic(n):
    r = np.arange(n)
    return GroupTable((r[:, None] + r[None, :]) % n)


def _symmetric(n):
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p * q)(x) = p(q(x))
    t = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return GroupTable(np.array(t))


def symmetric_perms(n):
    """The permutation behind each element of ``make_group('symmetric', n=n)``."""
    return list(itertools.permutations(range(n)))


def direct_product(g1: LoopTable, g2: LoopTable):
    """Pairs (a, b) encoded as ``a * |g2| + b``."""
    m = g2.order
    t = (g1.table[:, None, :, None] * m + g2.table[None, :, None, :])
    t = t.reshape(g1.order * m, g1.order * m)
    cls = GroupTable if isinstance(g1, GroupTable) and isinstance(g2, GroupTable) else LoopTable
    return cls(t)


def gf3_vector(index, s):
    return [(index // 3 ** i) % 3 for i in range(s)]


def gf3_index(vec):
    return sum(int(v) % 3 * 3 ** i for i, v in enumerate(vec))


def _gf3_semidirect(s):
    """(Z3)^s x| Z2 with the involution acting as v -> -v.

    Element (v, e) is encoded as ``index(v) + e * 3**s``.
    """
    q = 3 ** s
    vecs = np.array([gf3_vector(i, s) for i in range(q)], dtype=np.int64).reshape(q, s)
    weights = 3 ** np.arange(s)
    n = 2 * q
    t = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        va, ea = vecs[a % q], a // q
        sign = -1 if ea else 1
        for b in range(n):
            vb, eb = vecs[b % q], b // q
            v = (va + sign * vb) % 3
            t[a, b] = int(v @ weights) + ((ea + eb) % 2) * q
    return GroupTable(t)


def make_group(kind, **params) -> GroupTable:
    """Build a standard group.

    kinds: ``cyclic(n)``, ``elementary_abelian_2(k)``, ``symmetric(n <= 4)``,
    ``direct_product(g1, g2)``, ``gf3_semidirect(s)``.
    """
    try:
        if kind == "cyclic":
            n = int(params["n"])
            if n < 1:
                raise UnsupportedParams("cyclic group needs n >= 1")
            _check_cap(n)
            return _cyclic(n)
        if kind == "elementary_abelian_2":
            k = int(params["k"])
            if k < 0:
                raise UnsupportedParams("k must be >= 0")
            _check_cap(2 ** k)
            r = np.arange(2 ** k)
            return GroupTable(r[:, None] ^ r[None, :])
        if kind == "symmetric":
            n = int(params["n"])
            if not 1 <= n <= 4:
                raise UnsupportedParams("symmetric groups are supported for n <= 4")
            return _symmetric(n)
        if kind == "direct_product":
            g = direct_product(params["g1"], params["g2"])
            _check_cap(g.order)
            return g
        if kind == "gf3_semidirect":
            s = int(params["s"])
            if s < 0:
                raise UnsupportedParams("s must be >= 0")
            _check_cap(2 * 3 ** s)
            return _gf3_semidirect(s)
    except KeyError as exc:
        raise UnsupportedParams(f"{kind} needs parameter {exc}") from None
    raise UnsupportedParams(f"unknown group kind {kind!r}")


def named_group(name: str) -> GroupTable:
    """Short names used by the harness and CLI: Z<n>, Z2^<k>, S<n>,
    AG3_<s> (for gf3_semidirect) and products joined by 'x'."""
    name = name.strip()
    if "x" in name:
        parts = [named_group(p) for p in name.split("x")]
        g = parts[0]
        for p in parts[1:]:
            g = make_group("direct_product", g1=g, g2=p)
        return g
    if name.startswith("Z2^"):
        return make_group("elementary_abelian_2", k=int(name[3:]))
    if name.startswith("Z"):
        return make_group("cyclic", n=int(name[1:]))
    if name.startswith("S"):
        return make_group("symmetric", n=int(name[1:]))
    if name.startswith("AG3_"):
        return make_group("gf3_semidirect", s=int(name[4:]))
    raise UnsupportedParams(f"unknown group name {name!r}")


def from_json(d) -> LoopTable:
    """Inverse of ``to_json``; returns a GroupTable when the table is associative."""
    loop = validate_loop(np.array(d["table"]), int(d.get("identity", 0)))
    if int(d["order"]) != loop.order:
        raise BadIndex("declared order does not match table")
    if is_associative(loop):
        return GroupTable(loop.table)
    return loop


def relabel(l: MagmaTable, perm: Sequence[int]):
    """Transport the table along the bijection ``x -> perm[x]``."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    return type(l)(perm[l.table[np.ix_(inv, inv)]])
