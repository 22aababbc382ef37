"""
Loop identities: exhaustive checks on Cayley tables and closed-form criteria
for extensions of A by a weighted Steiner loop.

The two sides are deliberately independent.  :func:`brute_check` only reads a
table; :func:`criterion` only reads ``(S, A, h, diag)`` and never builds the
extension.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import NotSteinerLike
from .extension import ExtensionSpec, Variant
from .tables import Check, LoopTable, MagmaTable, closure, is_associative, scan2, scan3
from .weighted import WeightedSteinerLoop, check_core_identity, check_square_identity


class IdentityName(str, enum.Enum):
    FLEXIBLE = "flexible"
    LEFT_ALTERNATIVE = "left_alternative"
    RIGHT_ALTERNATIVE = "right_alternative"
    LEFT_INVERSE_PROPERTY = "left_inverse_property"
    RIGHT_INVERSE_PROPERTY = "right_inverse_property"
    CROSS_INVERSE = "cross_inverse"
    AUTOMORPHIC_INVERSE = "automorphic_inverse"
    WEAK_INVERSE = "weak_inverse"
    LEFT_BOL = "left_bol"
    RIGHT_BOL = "right_bol"
    MOUFANG = "moufang"
    POWER_ASSOCIATIVE = "power_associative"
    ASSOCIATIVE = "associative"
    TOTALLY_SYMMETRIC = "totally_symmetric"


I = IdentityName

# the ten basic laws, in the order they are usually listed
BASIC_IDENTITIES = (
    I.FLEXIBLE, I.LEFT_ALTERNATIVE, I.RIGHT_ALTERNATIVE, I.LEFT_INVERSE_PROPERTY,
    I.RIGHT_INVERSE_PROPERTY, I.CROSS_INVERSE, I.AUTOMORPHIC_INVERSE, I.WEAK_INVERSE,
    I.LEFT_BOL, I.RIGHT_BOL,
)


def _found(w):
    return Check(w is None, w)


def brute_check(l: LoopTable, name) -> Check:
    """Evaluate an identity over every assignment; the witness is the least failing tuple.

    Inverses are one-sided: ``x^l = e/x`` and ``x^r = x\\e``.  The automorphic
    inverse law is read as ``(xy)^r = x^r y^r``.  Weak inverse is checked on
    pairs: for each (x, y) the unique z with (xy)z = e is ``(xy)^r``.
    """
    name = IdentityName(name)
    t = l.table
    n = l.order
    lam, rho = l.left_inverse, l.right_inverse
    if name is I.FLEXIBLE:
        return _found(scan2(n, lambda x, y: t[t[x, y], x] == t[x, t[y, x]]))
    if name is I.LEFT_ALTERNATIVE:
        return _found(scan2(n, lambda x, y: t[x, t[x, y]] == t[t[x, x], y]))
    if name is I.RIGHT_ALTERNATIVE:
        return _found(scan2(n, lambda x, y: t[t[y, x], x] == t[y, t[x, x]]))
    if name is I.LEFT_INVERSE_PROPERTY:
        return _found(scan2(n, lambda x, y: t[lam[x], t[x, y]] == y))
    if name is I.RIGHT_INVERSE_PROPERTY:
        return _found(scan2(n, lambda x, y: t[t[y, x], rho[x]] == y))
    if name is I.CROSS_INVERSE:
        return _found(scan2(n, lambda x, y: t[t[x, y], rho[x]] == y))
    if name is I.AUTOMORPHIC_INVERSE:
        return _found(scan2(n, lambda x, y: rho[t[x, y]] == t[rho[x], rho[y]]))
    if name is I.WEAK_INVERSE:
        return _found(scan2(n, lambda x, y: t[x, t[y, rho[t[x, y]]]] == 0))
    if name is I.LEFT_BOL:
        return _found(scan3(n, lambda x, y, z: t[t[x, t[y, x]], z] == t[x, t[y, t[x, z]]]))
    if name is I.RIGHT_BOL:
        return _found(scan3(n, lambda x, y, z: t[z, t[t[x, y], x]] == t[t[t[z, x], y], x]))
    if name is I.MOUFANG:
        left = brute_check(l, I.LEFT_BOL)
        return left if not left else brute_check(l, I.RIGHT_BOL)
    if name is I.POWER_ASSOCIATIVE:
        return _power_associative(l)
    if name is I.ASSOCIATIVE:
        return is_associative(l)
    if name is I.TOTALLY_SYMMETRIC:
        return _found(scan2(n, lambda x, y: (t[x, y] == t[y, x]) & (t[x, t[x, y]] == y)))
    raise AssertionError(name)


def _power_associative(l: LoopTable) -> Check:
    """Every single-generated subloop is associative; the witness is the generator."""
    done = set()
    for g in range(l.order):
        if g in done:
            continue
        members = closure(l, [g])
        sub = l.table[np.ix_(members, members)]
        pos = np.full(l.order, -1, dtype=np.int64)
        pos[members] = np.arange(len(members))
        local = pos[sub]
        if not is_associative(MagmaTable(local)):
            return Check(False, (g,))
        # the other members generate subgroups of this associative subloop
        done.update(int(m) for m in members)
    return Check(True)


@dataclass
class CriterionReport:
    """Closed-form verdict with one boolean per sub-condition.

    ``holds`` is the conjunction of ``breakdown``; ``witness`` is the first
    failing sub-condition's name with its least failing assignment.
    """

    holds: bool
    witness: tuple | None
    breakdown: dict
    flags: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


class _Conditions:
    """Lazily evaluated sub-conditions on a weighted Steiner loop."""

    def __init__(self, w: WeightedSteinerLoop):
        self.w = w

    def all_f_central(self):
        w = self.w
        bad = np.argwhere(~w.a.center_mask[w.f])
        return Check(not len(bad), tuple(int(v) for v in bad[0]) if len(bad) else None)

    def f_central(self):
        w = self.w
        bad = np.flatnonzero(~w.a.center_mask[w.diag[1:]])
        return Check(not len(bad), (int(bad[0]) + 1,) if len(bad) else None)

    def k_central(self):
        w = self.w
        x, y, _ = w._pairs
        bad = np.flatnonzero(~w.a.center_mask[w.a.table[w.h[x], w.h[y]]])
        return Check(not len(bad), (int(x[bad[0]]), int(y[bad[0]])) if len(bad) else None)

    def core_identity(self):
        return check_core_identity(self.w)

    def a_abelian(self):
        t = self.w.a.table
        return _found(scan2(self.w.a.order, lambda x, y: t[x, y] == t[y, x]))

    def square_identity(self):
        return check_square_identity(self.w)

    def s_elementary_abelian(self):
        return is_associative(self.w.s)

    def h_constant(self):
        w = self.w
        bad = np.flatnonzero(w.h[1:] != w.h[1])
        return Check(not len(bad), (int(bad[0]) + 1,) if len(bad) else None)

    def diag_t4(self):
        w = self.w
        t4 = w.a.power(int(w.h[1]), 4)
        bad = np.flatnonzero(w.diag[1:] != t4)
        return Check(not len(bad), (int(bad[0]) + 1,) if len(bad) else None)

    def t2_central(self):
        w = self.w
        t = int(w.h[1])
        ok = bool(w.a.is_central(w.a.prod(t, t)))
        return Check(ok, None if ok else (t,))

    def h_values_commute(self):
        w = self.w
        t, h = w.a.table, w.h
        x, y, _ = w._pairs
        bad = np.flatnonzero(t[h[x], h[y]] != t[h[y], h[x]])
        return Check(not len(bad), (int(x[bad[0]]), int(y[bad[0]])) if len(bad) else None)

    def diag_is_s_h(self):
        """diag(x) = s h(x) = h(x) s for one s in A."""
        w = self.w
        a, h, d = w.a, w.h, w.diag
        s = a.prod(int(d[1]), a.inv(int(h[1])))
        for x in range(1, w.s.order):
            if a.prod(s, int(h[x])) != d[x] or a.prod(int(h[x]), s) != d[x]:
                return Check(False, (x,))
        return Check(True)

    def a_exponent_2(self):
        t = self.w.a.table
        r = np.arange(self.w.a.order)
        bad = np.flatnonzero(t[r, r] != 0)
        return Check(not len(bad), (int(bad[0]),) if len(bad) else None)

    def diag_trivial(self):
        bad = np.flatnonzero(self.w.diag[1:] != 0)
        return Check(not len(bad), (int(bad[0]) + 1,) if len(bad) else None)

    def h_constant_on_blocks(self):
        w = self.w
        x, y, xy = w._pairs
        bad = np.flatnonzero(w.h[xy] != w.h[y])
        return Check(not len(bad), (int(x[bad[0]]), int(y[bad[0]])) if len(bad) else None)


_LABELS = {
    "all_f_central": "f central",
    "f_central": "F central",
    "k_central": "K central",
    "core_identity": "core identity",
    "a_abelian": "A abelian",
    "square_identity": "square identity",
    "s_elementary_abelian": "S elementary abelian",
    "h_constant": "h constant",
    "diag_t4": "f(x,x) = t^4",
    "t2_central": "t^2 central",
    "h_values_commute": "h values commute",
    "diag_is_s_h": "f(x,x) = s h(x) = h(x) s",
    "a_exponent_2": "A of exponent 2",
    "diag_trivial": "f(x,x) = 1",
    "h_constant_on_blocks": "h(xy) = h(y)",
}

_LA = ("f_central", "k_central", "core_identity")
_RA = ("f_central", "core_identity")


def _bol_schema(w):
    if w.s.order > 4:
        # t^4 central is forced by right alternativity
        return ("s_elementary_abelian", "h_constant", "diag_t4", "f_central")
    return ("h_values_commute", "f_central", "core_identity")


def _group_schema(w):
    if w.s.order > 4:
        return ("s_elementary_abelian", "h_constant", "diag_t4", "t2_central")
    return _LA


def _standard_schema(w, name):
    if name is I.FLEXIBLE:
        return ("all_f_central",)
    if name in (I.RIGHT_ALTERNATIVE, I.RIGHT_INVERSE_PROPERTY):
        return _RA
    if name in (I.LEFT_ALTERNATIVE, I.LEFT_INVERSE_PROPERTY):
        return _LA
    if name is I.CROSS_INVERSE:
        return ("a_abelian", "core_identity")
    if name is I.AUTOMORPHIC_INVERSE:
        return ("a_abelian", "square_identity")
    if name is I.WEAK_INVERSE:
        return ("f_central", "k_central", "diag_is_s_h")
    if name is I.RIGHT_BOL:
        return _bol_schema(w)
    if name in (I.LEFT_BOL, I.ASSOCIATIVE):
        return _group_schema(w)
    if name is I.MOUFANG:
        return tuple(dict.fromkeys(_group_schema(w) + _bol_schema(w)))
    if name is I.POWER_ASSOCIATIVE:
        return ("f_central",)
    if name is I.TOTALLY_SYMMETRIC:
        return ("a_exponent_2", "diag_trivial", "h_constant_on_blocks")
    raise AssertionError(name)


def _with_central(schema):
    return ("all_f_central",) + tuple(c for c in schema if c != "all_f_central")


def schema(w: WeightedSteinerLoop, name, variant=Variant.STANDARD):
    """Names of the sub-conditions whose conjunction is the criterion."""
    name, variant = IdentityName(name), Variant(variant)
    base = _standard_schema(w, name)
    if variant is Variant.STANDARD or name in (I.POWER_ASSOCIATIVE, I.TOTALLY_SYMMETRIC):
        return base
    if variant is Variant.STARSTAR:
        if name in (I.LEFT_ALTERNATIVE, I.LEFT_INVERSE_PROPERTY):
            return _RA
        if name is I.LEFT_BOL:
            return _bol_schema(w)
    # a non-central factor value is predicted to break the law
    return _with_central(base)


def criterion(obj, name, variant=None) -> CriterionReport:
    """Closed-form test of an identity for the extension of A by (S, h).

    ``obj`` is a :class:`WeightedSteinerLoop` or an :class:`ExtensionSpec`
    that carries one.  For a raw factor system only power associativity is
    decidable (F central); everything else raises :class:`NotSteinerLike`.
    """
    name = IdentityName(name)
    if isinstance(obj, ExtensionSpec):
        variant = obj.variant if variant is None else variant
        if obj.weights is None:
            if name is not I.POWER_ASSOCIATIVE:
                raise NotSteinerLike(f"{name.value} needs the weight function h")
            return _raw_power_associative(obj)
        w = obj.weights
    else:
        w = obj
    variant = Variant.STANDARD if variant is None else Variant(variant)
    cond = _Conditions(w)
    breakdown = {}
    witness = None
    for key in schema(w, name, variant):
        label = _LABELS[key]
        if key == "square_identity" and not breakdown.get("A abelian", True):
            continue
        if key in ("diag_t4", "t2_central") and not breakdown.get("h constant", True):
            continue
        chk = getattr(cond, key)()
        breakdown[label] = bool(chk.holds)
        if not chk.holds and witness is None:
            witness = (label, chk.witness)
    holds = all(breakdown.values())
    flags = {}
    bol_side = I.LEFT_BOL if variant is Variant.STARSTAR else I.RIGHT_BOL
    if name in (bol_side, I.MOUFANG) and w.h_constant and holds:
        t = int(w.h[1])
        flags["proper"] = not w.a.is_central(w.a.prod(t, t))
    return CriterionReport(holds, witness, breakdown, flags)


def _raw_power_associative(spec: ExtensionSpec) -> CriterionReport:
    d = np.diag(spec.f)[1:]
    bad = np.flatnonzero(~spec.a.center_mask[d])
    ok = not len(bad)
    return CriterionReport(ok, None if ok else ("F central", (int(bad[0]) + 1,)),
                           {"F central": ok})
