"""
Translation permutations of a loop and the groups they generate.

Permutations are image arrays and compose as ``(p o q)(x) = p(q(x))``,
i.e. ``compose(p, q) == p[q]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ClosureCap, HypothesisFailed
from .extension import ExtensionSpec, build_extension
from .tables import LoopTable

CLOSURE_CAP = 10**6


def translation(l: LoopTable, a, side="left") -> np.ndarray:
    """lambda_a: y -> a y (``side="left"``) or rho_a: y -> y a (``side="right"``)."""
    if side == "left":
        return l.table[a].copy()
    if side == "right":
        return l.table[:, a].copy()
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def compose(p, q):
    return p[q]


def inverse(p):
    out = np.empty_like(p)
    out[p] = np.arange(len(p))
    return out


@dataclass(frozen=True, eq=False)
class PermGroupClosure:
    """All elements of the group generated by ``generators``, in BFS order."""

    elements: np.ndarray
    generators: tuple
    labels: tuple = ()

    @property
    def order(self):
        return len(self.elements)

    @property
    def keys(self):
        return frozenset(e.tobytes() for e in self.elements)

    def __contains__(self, p):
        return np.asarray(p, dtype=np.int64).tobytes() in self.keys

    def same_set(self, other):
        return self.order == other.order and self.keys == other.keys


def close(generators, labels=(), cap=CLOSURE_CAP) -> PermGroupClosure:
    """Naive breadth-first closure under composition with the generators."""
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if not gens:
        raise ValueError("need at least one generator to fix the degree")
    degree = len(gens[0])
    ident = np.arange(degree, dtype=np.int64)
    seen = {ident.tobytes()}
    elements = [ident]
    frontier = ident[None, :]
    gen_arr = np.array(gens)
    while len(frontier):
        # every frontier element composed with every generator: p o g
        prod = frontier[:, gen_arr].reshape(-1, degree)
        fresh = []
        for row in prod:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(row)
                if len(seen) > cap:
                    raise ClosureCap(f"closure exceeds {cap} elements")
        elements.extend(fresh)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, degree)
    return PermGroupClosure(np.array(elements), tuple(gens), tuple(labels))


@dataclass
class TranslationReport:
    g_left: int
    g_right: int
    g_all: int
    left_equals_right: bool
    slice_order: int
    slice_is_subgroup: bool
    slice_anti_isomorphic_to_a: bool
    slice_normal_in_g_right: bool
    sigma_order: int
    sigma_meets_slice: int
    right_order_is_a_times_sigma: bool

    def to_json(self):
        return dict(self.__dict__)


def _translations(l, side):
    return [translation(l, i, side) for i in range(l.order)]


def translation_groups(spec: ExtensionSpec, cap=CLOSURE_CAP):
    """G_l, G_r, G and the position of the A-slice {rho_(e, alpha)} inside G_r."""
    l = build_extension(spec)
    na = spec.a.order
    left, right = _translations(l, "left"), _translations(l, "right")
    g_l = close(left, [f"lambda_{i}" for i in range(l.order)], cap)
    g_r = close(right, [f"rho_{i}" for i in range(l.order)], cap)
    g = close(left + right, [f"lambda_{i}" for i in range(l.order)]
              + [f"rho_{i}" for i in range(l.order)], cap)
    slice_ = [right[spec.encode(0, al)] for al in range(na)]
    keys = {p.tobytes(): al for al, p in enumerate(slice_)}
    closed = all(compose(p, q).tobytes() in keys for p in slice_ for q in slice_)
    at = spec.a.table
    anti = closed and len(keys) == na and all(
        keys[compose(slice_[al], slice_[be]).tobytes()] == at[be, al]
        for al in range(na) for be in range(na))
    normal = all(compose(compose(inverse(r), p), r).tobytes() in keys for r in right for p in slice_)
    sigma = close([right[spec.encode(x, 0)] for x in range(spec.s.order)], cap=cap)
    meet = sum(1 for p in slice_ if p in sigma)
    report = TranslationReport(
        g_left=g_l.order, g_right=g_r.order, g_all=g.order,
        left_equals_right=g_l.same_set(g_r),
        slice_order=len(keys), slice_is_subgroup=closed,
        slice_anti_isomorphic_to_a=anti, slice_normal_in_g_right=normal,
        sigma_order=sigma.order, sigma_meets_slice=meet,
        right_order_is_a_times_sigma=g_r.order == na * sigma.order)
    return (g_l, g_r, g), report


def iota_maps(spec: ExtensionSpec):
    """iota_alpha: (x, xi) -> (x, alpha^-1 xi alpha), each tested as an automorphism.

    Returns ``(maps, failures)`` where ``failures`` lists ``(alpha, i, j)``
    with ``iota(i j) != iota(i) iota(j)``.
    """
    l = build_extension(spec)
    na = spec.a.order
    a = spec.a
    i = np.arange(spec.order)
    x, xi = i // na, i % na
    t = l.table
    maps, failures = [], []
    for al in range(na):
        phi = x * na + a.table[a.table[a.inverse[al], xi], al]
        maps.append(phi)
        bad = np.argwhere(phi[t] != t[np.ix_(phi, phi)])
        if len(bad):
            failures.append((al, int(bad[0][0]), int(bad[0][1])))
    return maps, failures


@dataclass
class DecompositionReport:
    g_generated_by_left_and_iota: bool
    right_is_iota_left: bool | None
    left_slice_central: bool | None

    def to_json(self):
        return dict(self.__dict__)


def full_group_decomposition(spec: ExtensionSpec, cap=CLOSURE_CAP) -> DecompositionReport:
    """G = <G_l, iota_alpha>; under central f also rho_(a,alpha) = iota_alpha o lambda_(a,alpha);
    for a commutative extension the slice {lambda_(e,alpha)} is central in G."""
    maps, failures = iota_maps(spec)
    if failures:
        raise HypothesisFailed("iota maps are automorphisms")
    l = build_extension(spec)
    na = spec.a.order
    left, right = _translations(l, "left"), _translations(l, "right")
    g = close(left + right, cap=cap)
    g2 = close(left + maps, cap=cap)
    central_f = bool(spec.a.center_mask[spec.f].all())
    rho_iota = None
    if central_f:
        rho_iota = all(np.array_equal(right[i], compose(maps[i % na], left[i])) for i in range(l.order))
    slice_central = None
    if bool((l.table == l.table.T).all()):
        lam = [left[spec.encode(0, al)] for al in range(na)]
        slice_central = all(np.array_equal(compose(p, q), compose(q, p))
                            for p in lam for q in left + right)
    return DecompositionReport(g.same_set(g2), rho_iota, slice_central)


def right_factorisation(spec: ExtensionSpec) -> bool:
    """rho_(a, alpha) = rho_(e, alpha) o rho_(a, 1) for every (a, alpha)."""
    l = build_extension(spec)
    return all(np.array_equal(translation(l, spec.encode(x, al), "right"),
                              compose(translation(l, spec.encode(0, al), "right"),
                                      translation(l, spec.encode(x, 0), "right")))
               for x in range(spec.s.order) for al in range(spec.a.order))


def conjugation_identity(spec: ExtensionSpec) -> bool:
    """rho_(a,g)^-1 o rho_(e,alpha) o rho_(a,g) = rho_(e, g alpha g^-1) for all a, alpha, g."""
    l = build_extension(spec)
    a = spec.a
    rho = _translations(l, "right")
    for x in range(spec.s.order):
        for ga in range(a.order):
            r = rho[spec.encode(x, ga)]
            ri = inverse(r)
            for al in range(a.order):
                lhs = compose(compose(ri, rho[spec.encode(0, al)]), r)
                if not np.array_equal(lhs, rho[spec.encode(0, a.prod(ga, al, a.inv(ga)))]):
                    return False
    return True
