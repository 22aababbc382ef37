"""
Isomorphisms between extensions that map the A-slice to itself, and the
automorphism group of one extension.

A witness ``(alpha_s, alpha_a, rho)`` stands for the map
``(x, xi) -> (x', rho(x') xi'')`` with ``x' = alpha_s[x]`` and
``xi'' = alpha_a[xi]``; ``rho`` is indexed by points of the target S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import OrderCap
from .extension import ExtensionSpec, build_extension
from .steiner import is_steiner_loop
from .tables import Check, LoopTable, _greedy_generators, closure, derived_subloop

AUTOMORPHISM_CAP = 256


def _construction_sequence(l: LoopTable, gens):
    """Express every element as a product of earlier ones, starting from ``gens``."""
    t = l.table
    known = [0] + [g for g in gens if g != 0]
    seen = set(known)
    steps = []
    frontier = list(known)
    while frontier:
        fresh = []
        for a in list(seen):
            for b in frontier:
                for x, y in ((a, b), (b, a)):
                    c = int(t[x, y])
                    if c not in seen:
                        seen.add(c)
                        steps.append((c, x, y))
                        fresh.append(c)
        frontier = fresh
    return steps


def loop_automorphisms(l: LoopTable):
    """All automorphisms of ``l`` as image arrays, in lexicographic order.

    Images of a greedy generating set are chosen by backtracking; each new
    image must avoid the subloop generated by the previous ones.
    """
    n = l.order
    if n > AUTOMORPHISM_CAP:
        raise OrderCap(f"automorphism search on order {n} exceeds cap {AUTOMORPHISM_CAP}")
    gens = [g for g in _greedy_generators(l) if g != 0]
    steps = _construction_sequence(l, gens)
    t = l.table
    found = []

    def finish(images):
        phi = np.full(n, -1, dtype=np.int64)
        phi[0] = 0
        for g, v in zip(gens, images):
            phi[g] = v
        for c, x, y in steps:
            phi[c] = t[phi[x], phi[y]]
        if len(set(phi.tolist())) != n:
            return
        if (phi[t] == t[np.ix_(phi, phi)]).all():
            found.append(phi)

    def extend(images):
        if len(images) == len(gens):
            finish(images)
            return
        span = set(closure(l, images).tolist()) if images else {0}
        for v in range(1, n):
            if v not in span:
                extend(images + [v])

    extend([])
    found.sort(key=lambda p: p.tolist())
    return found


class MorphismWitness(NamedTuple):
    alpha_s: np.ndarray
    alpha_a: np.ndarray
    rho: np.ndarray

    def point_map(self, spec: ExtensionSpec) -> np.ndarray:
        """The induced bijection on extension indices."""
        na = spec.a.order
        i = np.arange(spec.order)
        x, xi = i // na, i % na
        xs = self.alpha_s[x]
        return xs * na + spec.a.table[self.rho[xs], self.alpha_a[xi]]

    def key(self):
        return (self.alpha_s.tolist(), self.alpha_a.tolist(), self.rho.tolist())

    def to_json(self):
        return {"alpha_s": self.alpha_s.tolist(), "alpha_a": self.alpha_a.tolist(),
                "rho": {str(i): int(v) for i, v in enumerate(self.rho)}}


def _is_automorphism(l: LoopTable, phi):
    t = l.table
    return (len(set(phi.tolist())) == l.order and phi[0] == 0
            and bool((phi[t] == t[np.ix_(phi, phi)]).all()))


def _transported(spec1: ExtensionSpec, alpha_s, alpha_a):
    """g(u, v) = f1(x, y)'' with u = x', v = y'."""
    inv = np.empty_like(alpha_s)
    inv[alpha_s] = np.arange(len(alpha_s))
    return alpha_a[spec1.f[np.ix_(inv, inv)]]


def check_iso_equation(w: MorphismWitness, spec1: ExtensionSpec, spec2: ExtensionSpec) -> Check:
    """f1(x,y)'' = rho((xy)')^-1 rho(x') rho(y') f2(x', y') for all x, y.

    Witnesses are tagged: ``("alpha_s",)``, ``("alpha_a",)``, ``("rho", u)``,
    ``("equation", x, y)``, ``("diagonal", x)`` or ``("off_diagonal", x, y)``.
    """
    a, s = spec2.a, spec2.s
    if not _is_automorphism(spec1.s, w.alpha_s) or s.order != spec1.s.order:
        return Check(False, ("alpha_s",))
    if not _is_automorphism(spec1.a, w.alpha_a) or a.order != spec1.a.order:
        return Check(False, ("alpha_a",))
    rho = w.rho
    if rho[0] != 0:
        return Check(False, ("rho", 0))
    bad = np.flatnonzero(~a.center_mask[rho])
    if len(bad):
        return Check(False, ("rho", int(bad[0])))
    t, inv = a.table, a.inverse
    st = s.table
    xs = w.alpha_s
    x = np.arange(s.order)[:, None]
    y = np.arange(s.order)[None, :]
    u, v = xs[x], xs[y]
    lhs = w.alpha_a[spec1.f[x, y]]
    rhs = t[t[t[inv[rho[st[u, v]]], rho[u]], rho[v]], spec2.f[u, v]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return Check(False, ("equation",) + tuple(int(q) for q in bad[0]))
    w1, w2 = spec1.weights, spec2.weights
    if w1 is not None and w2 is not None:
        for p in range(1, s.order):
            q = int(xs[p])
            if t[t[rho[q], rho[q]], w2.diag[q]] != w.alpha_a[w1.diag[p]]:
                return Check(False, ("diagonal", p))
        h1, h2 = w.alpha_a[w1.h], w2.h
        for p in range(1, s.order):
            for r in range(1, s.order):
                if p == r:
                    continue
                up, ur = int(xs[p]), int(xs[r])
                left = t[t[t[inv[rho[st[up, ur]]], rho[up]], rho[ur]], t[h2[up], h2[ur]]]
                if left != t[h1[p], h1[r]]:
                    return Check(False, ("off_diagonal", p, r))
    return Check(True)


def _commutator_profile(f, a, order):
    """f(x,y) f(y,x)^-1 over ordered pairs of distinct non-identity points."""
    p = np.arange(1, order)
    x, y = np.meshgrid(p, p, indexing="ij")
    keep = x != y
    x, y = x[keep], y[keep]
    return x, y, a.table[f[x, y], a.inverse[f[y, x]]]


def _rho_solutions(spec1, spec2, alpha_s, alpha_a):
    """All central rho with rho(e) = 1 satisfying the isomorphism equation."""
    a, s = spec2.a, spec2.s
    t, inv = a.table, a.inverse
    n = s.order
    g = _transported(spec1, alpha_s, alpha_a)
    # rho(u) rho(v) rho(uv)^-1 must equal g(u, v) f2(u, v)^-1
    target = t[g, inv[spec2.f]]
    central = np.flatnonzero(a.center_mask)
    steiner = bool(is_steiner_loop(s))
    cand = []
    for u in range(n):
        if u == 0:
            cand.append([0])
        elif steiner:
            cand.append([int(z) for z in central if t[z, z] == target[u, u]])
        else:
            cand.append([int(z) for z in central])
    st = s.table
    by_max = [[] for _ in range(n)]
    for u in range(n):
        for v in range(n):
            by_max[max(u, v, int(st[u, v]))].append((u, v))
    rho = np.zeros(n, dtype=np.int64)
    out = []

    def assign(u):
        if u == n:
            out.append(rho.copy())
            return
        for z in cand[u]:
            rho[u] = z
            if all(t[t[rho[p], rho[q]], inv[rho[st[p, q]]]] == target[p, q] for p, q in by_max[u]):
                assign(u + 1)
        rho[u] = 0

    assign(0)
    return out


def find_isomorphisms(spec1: ExtensionSpec, spec2: ExtensionSpec, prune=True, verify=True):
    """Every witness (alpha_s, alpha_a, rho) with central rho mapping spec1 onto spec2.

    With ``prune`` a pair (alpha_s, alpha_a) is skipped unless it carries the
    commutator profile f1(x,y) f1(y,x)^-1 onto that of spec2.  With ``verify``
    each witness is expanded to a point map and checked against both tables.
    """
    if spec1.s.order != spec2.s.order or spec1.a.order != spec2.a.order:
        return []
    if spec1.variant != spec2.variant:
        raise ValueError("both extensions must use the same multiplication variant")
    aut_s = loop_automorphisms(spec1.s) if spec1.s == spec2.s else _isomorphisms(spec1.s, spec2.s)
    aut_a = loop_automorphisms(spec1.a) if spec1.a == spec2.a else _isomorphisms(spec1.a, spec2.a)
    x, y, prof2 = _commutator_profile(spec2.f, spec2.a, spec2.s.order)
    out = []
    for alpha_s in aut_s:
        for alpha_a in aut_a:
            if prune:
                g = _transported(spec1, alpha_s, alpha_a)
                _, _, prof1 = _commutator_profile(g, spec2.a, spec2.s.order)
                if (prof1 != prof2).any():
                    continue
            for rho in _rho_solutions(spec1, spec2, alpha_s, alpha_a):
                out.append(MorphismWitness(alpha_s, alpha_a, rho))
    if verify and out:
        l1, l2 = build_extension(spec1), build_extension(spec2)
        for w in out:
            assert check_iso_equation(w, spec1, spec2).holds, w
            phi = w.point_map(spec1)
            assert len(set(phi.tolist())) == l1.order
            assert (phi[l1.table] == l2.table[np.ix_(phi, phi)]).all(), w
    out.sort(key=MorphismWitness.key)
    return out


def _isomorphisms(l1: LoopTable, l2: LoopTable):
    """Isomorphisms between two tables of the same order by composing with automorphisms."""
    if l1.order != l2.order:
        return []
    auts = loop_automorphisms(l1)
    gens = [g for g in _greedy_generators(l1) if g != 0]
    steps = _construction_sequence(l1, gens)
    n = l1.order
    t1, t2 = l1.table, l2.table
    first = None

    def extend(images):
        nonlocal first
        if first is not None:
            return
        if len(images) == len(gens):
            phi = np.full(n, -1, dtype=np.int64)
            phi[0] = 0
            for g, v in zip(gens, images):
                phi[g] = v
            for c, x, y in steps:
                phi[c] = t2[phi[x], phi[y]]
            if len(set(phi.tolist())) == n and (phi[t1] == t2[np.ix_(phi, phi)]).all():
                first = phi
            return
        span = set(closure(l2, images).tolist()) if images else {0}
        for v in range(1, n):
            if v not in span:
                extend(images + [v])

    extend([])
    if first is None:
        return []
    return sorted((first[p] for p in auts), key=lambda p: p.tolist())


def _element_profile(l: LoopTable):
    """Isomorphism-invariant label of each element."""
    t = l.table
    n = l.order
    i = np.arange(n)
    powers = [i]
    for _ in range(n):
        powers.append(t[powers[-1], i])
    order = np.argmax(np.array(powers[1:]) == 0, axis=0) + 1
    commuting = (t == t.T).sum(axis=1)
    left_alt = (t[i[:, None], t] == t[t[i, i]]).sum(axis=1)
    return np.stack([order, commuting, left_alt], axis=1)


def first_isomorphism(l1: LoopTable, l2: LoopTable):
    """One isomorphism l1 -> l2 as an image array, or None.

    Generators are mapped to elements with the same invariant label; the rest
    of the map is forced by a construction sequence.
    """
    if l1.order != l2.order:
        return None
    p1, p2 = _element_profile(l1), _element_profile(l2)
    keys1 = [tuple(r) for r in p1.tolist()]
    keys2 = [tuple(r) for r in p2.tolist()]
    if sorted(keys1) != sorted(keys2):
        return None
    gens = [g for g in _greedy_generators(l1) if g != 0]
    steps = _construction_sequence(l1, gens)
    n = l1.order
    t1, t2 = l1.table, l2.table

    def extend(images):
        if len(images) == len(gens):
            phi = np.full(n, -1, dtype=np.int64)
            phi[0] = 0
            for g, v in zip(gens, images):
                phi[g] = v
            for c, x, y in steps:
                phi[c] = t2[phi[x], phi[y]]
            if len(set(phi.tolist())) == n and (phi[t1] == t2[np.ix_(phi, phi)]).all():
                return phi
            return None
        span = set(closure(l2, images).tolist()) if images else {0}
        want = keys1[gens[len(images)]]
        for v in range(1, n):
            if v not in span and keys2[v] == want:
                found = extend(images + [v])
                if found is not None:
                    return found
        return None

    return extend([])


def _is_homomorphism(s: LoopTable, a, rho):
    t = a.table
    return bool((rho[s.table] == t[rho[:, None], rho[None, :]]).all())


@dataclass
class AutGroupReport:
    full: list
    psi: list
    sigma: list
    sigma1: list
    sigma2: list
    psi_elementary_abelian: bool
    psi_meets_sigma_trivially: bool
    kernels_contain_derived: bool
    sigma_pairs: dict = field(default_factory=dict)

    @property
    def order(self):
        return len(self.full)


def automorphism_group(spec: ExtensionSpec, prune=True) -> AutGroupReport:
    """All automorphisms of the extension of the form (x, xi) -> (x', rho(x') xi'')."""
    full = find_isomorphisms(spec, spec, prune=prune)
    n, na = spec.s.order, spec.a.order
    ident_s, ident_a = np.arange(n), np.arange(na)
    a = spec.a
    t = a.table

    def is_id(p, ident):
        return bool((p == ident).all())

    psi = [w for w in full if is_id(w.alpha_s, ident_s) and is_id(w.alpha_a, ident_a)]
    sigma = [w for w in full if not w.rho.any()]
    sigma1 = [w for w in sigma if is_id(w.alpha_a, ident_a)]
    sigma2 = [w for w in sigma if is_id(w.alpha_s, ident_s)]
    rhos = {tuple(w.rho.tolist()) for w in psi}
    closed = all(tuple(t[np.array(p), np.array(q)].tolist()) in rhos for p in rhos for q in rhos)
    involutive = all((t[np.array(p), np.array(p)] == 0).all() for p in rhos)
    meet = [w for w in psi if not w.rho.any()]
    derived = derived_subloop(spec.s).members
    kernels = all((w.rho[list(derived)] == 0).all() for w in full if _is_homomorphism(spec.s, a, w.rho))
    report = AutGroupReport(full, psi, sigma, sigma1, sigma2, closed and involutive,
                            len(meet) == 1, kernels)
    if spec.weights is not None and n > 2:
        report.sigma_pairs = _sigma_pairs_report(spec, full)
    return report


def sigma_pair_condition(spec: ExtensionSpec, alpha_s, alpha_a) -> bool:
    """f(x,x)'' = f(x',x') and c h(x') = h(x') c^-1 = h(x)'' for one c in A."""
    w = spec.weights
    a = spec.a
    t, inv = a.table, a.inverse
    h = w.h
    pts = range(1, spec.s.order)
    if any(alpha_a[w.diag[x]] != w.diag[alpha_s[x]] for x in pts):
        return False
    c = t[alpha_a[h[1]], inv[h[alpha_s[1]]]]
    for x in pts:
        hx = h[alpha_s[x]]
        if t[c, hx] != alpha_a[h[x]] or t[hx, inv[c]] != alpha_a[h[x]]:
            return False
    return True


def _sigma_pairs_report(spec, full):
    """Forward: every witness with homomorphic rho satisfies the condition.
    Converse: every pair satisfying it occurs with rho = 1."""
    forward = all(sigma_pair_condition(spec, w.alpha_s, w.alpha_a)
                  for w in full if _is_homomorphism(spec.s, spec.a, w.rho))
    sigma_pairs = {(tuple(w.alpha_s.tolist()), tuple(w.alpha_a.tolist()))
                   for w in full if not w.rho.any()}
    cond_pairs = {(tuple(p.tolist()), tuple(q.tolist()))
                  for p in loop_automorphisms(spec.s) for q in loop_automorphisms(spec.a)
                  if sigma_pair_condition(spec, p, q)}
    return {"forward": forward, "converse": cond_pairs <= sigma_pairs,
            "pairs_equal": cond_pairs == sigma_pairs}
