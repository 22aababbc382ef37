"""
Extension loops on S x A and the amalgamated construction on S x B x Delta.

An element ``(x, xi)`` of an extension is the index ``x * |A| + xi``; the
three variants multiply as

* standard:  ``(x, xi)(y, eta) = (xy, f(x, y) xi eta)``
* star:      ``(x, xi)(y, eta) = (xy, xi f(x, y) eta)``
* starstar:  ``(x, xi)(y, eta) = (xy, xi eta f(x, y))``
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotAbelian, OrderCap
from .tables import ORDER_CAP, Check, GroupTable, LoopTable
from .weighted import WeightedSteinerLoop


class Variant(str, enum.Enum):
    STANDARD = "standard"
    STAR = "star"
    STARSTAR = "starstar"


@dataclass(frozen=True, eq=False)
class ExtensionSpec:
    """Data of an extension of ``a`` by ``s`` with factor system ``f``.

    ``weights`` is kept when the spec came from a weighted Steiner loop; the
    criteria that need ``h`` read it from there.
    """

    s: LoopTable
    a: GroupTable
    f: np.ndarray
    variant: Variant = Variant.STANDARD
    weights: WeightedSteinerLoop | None = None

    def __post_init__(self):
        f = np.array(self.f, dtype=np.int64, copy=True)
        n = self.s.order
        if f.shape != (n, n):
            raise ValueError(f"f must be {n} x {n}, got {f.shape}")
        if ((f < 0) | (f >= self.a.order)).any():
            raise ValueError("f has values outside A")
        if f[0].any() or f[:, 0].any():
            raise ValueError("f(x, e) and f(e, y) must be the identity")
        f.flags.writeable = False
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "variant", Variant(self.variant))

    @property
    def order(self):
        return self.s.order * self.a.order

    def encode(self, x, xi):
        return x * self.a.order + xi

    def decode(self, i):
        return divmod(i, self.a.order)

    def with_variant(self, variant):
        return ExtensionSpec(self.s, self.a, self.f, variant, self.weights)

    def to_json(self):
        out = {"s": self.s.to_json(), "a": self.a.to_json(), "f": self.f.tolist(),
               "variant": self.variant.value}
        if self.weights is not None:
            out["weights"] = self.weights.to_json()
        return out


def spec_from_weighted(w: WeightedSteinerLoop, variant=Variant.STANDARD) -> ExtensionSpec:
    return ExtensionSpec(w.s, w.a, w.f, variant, w)


def build_extension(spec: ExtensionSpec) -> LoopTable:
    """Cayley table of the extension; the loop axioms are re-validated."""
    n = spec.order
    if n > ORDER_CAP:
        raise OrderCap(f"extension of order {n} exceeds cap {ORDER_CAP}")
    na = spec.a.order
    at = spec.a.table
    i = np.arange(n)
    x, xi = i // na, i % na
    x1, x2 = x[:, None], x[None, :]
    xi1, xi2 = xi[:, None], xi[None, :]
    fv = spec.f[x1, x2]
    if spec.variant is Variant.STANDARD:
        coord = at[at[fv, xi1], xi2]
    elif spec.variant is Variant.STAR:
        coord = at[at[xi1, fv], xi2]
    else:
        coord = at[at[xi1, xi2], fv]
    return LoopTable(spec.s.table[x1, x2] * na + coord)


class InverseMaps(NamedTuple):
    left: np.ndarray
    right: np.ndarray
    equal: Check
    verified: Check


def inverse_maps(spec: ExtensionSpec) -> InverseMaps:
    """One-sided inverses from the closed formulas, cross-checked against the table.

    ``equal`` reports whether the two inverses agree (with the least element
    where they differ); ``verified`` compares the formulas with the inverses
    read off the built table.
    """
    a, s, f = spec.a, spec.s, spec.f
    na = a.order
    t, inv = a.table, a.inverse
    i = np.arange(spec.order)
    x, xi = i // na, i % na
    xl, xr = s.left_inverse[x], s.right_inverse[x]
    fl = inv[f[xl, x]]  # f(x^l, x)^-1
    fr = inv[f[x, xr]]  # f(x, x^r)^-1
    xin = inv[xi]
    if spec.variant is Variant.STANDARD:
        left_a, right_a = t[fl, xin], t[xin, fr]
    elif spec.variant is Variant.STAR:
        left_a, right_a = t[xin, fl], t[fr, xin]
    else:
        left_a, right_a = t[fl, xin], t[xin, fr]
    left = xl * na + left_a
    right = xr * na + right_a
    diff = np.flatnonzero(left != right)
    equal = Check(not len(diff), (int(diff[0]),) if len(diff) else None)
    ok = True
    witness = None
    if spec.order <= ORDER_CAP:
        lt = build_extension(spec)
        bad = np.flatnonzero((lt.left_inverse != left) | (lt.right_inverse != right))
        if len(bad):
            ok, witness = False, (int(bad[0]),)
    return InverseMaps(left, right, equal, Check(ok, witness))


def is_direct_product(spec: ExtensionSpec) -> bool:
    """True when f is identically the identity of A."""
    return not spec.f.any()


@dataclass(frozen=True, eq=False)
class AmalgamatedSpec:
    """S x B x Delta with ``(a1, r1, s1)(a2, r2, s2) = (a1 a2, r1 r2, s1 s2 f(a1, a2) k(r1, r2))``.

    ``k`` is a factor system of B with values in the abelian group ``delta``.
    """

    s: LoopTable
    b: GroupTable
    delta: GroupTable
    k: np.ndarray
    f_values: np.ndarray

    def __post_init__(self):
        if not self.delta.is_abelian:
            raise NotAbelian("Delta must be abelian")
        for name, size in (("k", self.b.order), ("f_values", self.s.order)):
            arr = np.array(getattr(self, name), dtype=np.int64, copy=True)
            if arr.shape != (size, size):
                raise ValueError(f"{name} must be {size} x {size}")
            if ((arr < 0) | (arr >= self.delta.order)).any():
                raise ValueError(f"{name} has values outside Delta")
            if arr[0].any() or arr[:, 0].any():
                raise ValueError(f"{name} must be the identity on the borders")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def order(self):
        return self.s.order * self.b.order * self.delta.order


def build_amalgamated(am: AmalgamatedSpec) -> LoopTable:
    """Element ``(a, r, s)`` is the index ``(a * |B| + r) * |Delta| + s``."""
    n = am.order
    if n > ORDER_CAP:
        raise OrderCap(f"order {n} exceeds cap {ORDER_CAP}")
    nb, nd = am.b.order, am.delta.order
    i = np.arange(n)
    a, rest = np.divmod(i, nb * nd)
    r, sg = np.divmod(rest, nd)
    dt = am.delta.table
    a1, a2 = a[:, None], a[None, :]
    r1, r2 = r[:, None], r[None, :]
    s1, s2 = sg[:, None], sg[None, :]
    coord = dt[dt[dt[s1, s2], am.f_values[a1, a2]], am.k[r1, r2]]
    return LoopTable((am.s.table[a1, a2] * nb + am.b.table[r1, r2]) * nd + coord)


def is_factor_system(g: LoopTable, values: np.ndarray, target: GroupTable) -> Check:
    """k(x, y) k(xy, z) = k(y, z) k(x, yz) for all triples (abelian target)."""
    t, dt = g.table, target.table
    n = g.order
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lhs = dt[values[x, y], values[t[x, y], z]]
    rhs = dt[values[y, z], values[x, t[y, z]]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return Check(False, tuple(int(v) for v in bad[0]))
    return Check(True)
