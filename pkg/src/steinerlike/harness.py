"""
Equivalence harness: for every instance of a family of weighted Steiner
loops, compare the brute-force verdict on the built extension with the
closed-form criterion, for each identity and each multiplication variant.

Large exhaustive weight sets are reduced to one representative per orbit of
Aut(S) x Aut(A); both verdicts are isomorphism invariants, so the reduction
loses nothing.  Sampling is seeded and the report is canonical JSON.
"""

from __future__ import annotations

import json
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .extension import Variant, build_extension, is_direct_product, spec_from_weighted
from .identities import IdentityName, brute_check, criterion
from .morphisms import first_isomorphism, loop_automorphisms
from .steiner import fano, klein
from .tables import direct_product, make_group, named_group
from .weighted import (NonabelianFischer, Unstructured,
                       WeightedSteinerLoop, analyze_weight_group, prescribed_diag)

DEFAULT_SEED = 0x5EED
STEINER_LOOPS = {"klein": klein, "fano": fano}
GROUPS = ("Z2", "Z4", "Z2^2", "Z8", "S3", "S4")


def group_by_name(name):
    if name == "Z2":
        return make_group("cyclic", n=2)
    if name == "Z8":
        return make_group("cyclic", n=8)
    if name == "S4":
        return make_group("symmetric", n=4)
    return named_group(name)


@dataclass
class HarnessConfig:
    steiner: tuple = ("klein", "fano")
    groups: tuple = GROUPS
    seed: int = DEFAULT_SEED
    exhaustive_max_group: int = 6
    samples: int = 200
    random_diags: int = 50
    orbit_threshold: int = 4096
    variants: tuple = tuple(v.value for v in Variant)
    identities: tuple = tuple(i.value for i in IdentityName)
    threads: int = 1

    @classmethod
    def from_json(cls, d):
        d = dict(d)
        for key in ("steiner", "groups", "variants", "identities"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)

    def to_json(self):
        # thread count is excluded so the report does not depend on it
        return {k: list(v) if isinstance(v, tuple) else v
                for k, v in self.__dict__.items() if k != "threads"}


@dataclass
class Instance:
    s_name: str
    a_name: str
    h: tuple
    diag: tuple
    source: str

    def to_json(self):
        return {"s": self.s_name, "a": self.a_name, "h": list(self.h),
                "diag": list(self.diag), "source": self.source}


def _rng(seed, label):
    return np.random.default_rng([seed & (2**63 - 1), zlib.crc32(label.encode())])


def orbit_representatives(s, a, points):
    """Least code of every orbit of h: S\\{e} -> A under Aut(S) x Aut(A)."""
    na = a.order
    total = na ** points
    seen = np.zeros(total, dtype=bool)
    weights = na ** np.arange(points, dtype=np.int64)
    pairs = []
    for sigma in loop_automorphisms(s):
        inv = np.empty_like(sigma)
        inv[sigma] = np.arange(len(sigma))
        pairs.append(inv[1:] - 1)
    perms = np.array(pairs)
    alphas = np.array(loop_automorphisms(a))
    reps = []
    code = 0
    while code < total:
        h = (code // weights) % na
        moved = alphas[:, h]                      # (|Aut A|, points)
        images = moved[:, perms]                  # (|Aut A|, |Aut S|, points)
        seen[(images * weights).sum(axis=-1).ravel()] = True
        reps.append(tuple(int(v) for v in h))
        rest = np.flatnonzero(~seen[code:])
        code = code + int(rest[0]) if len(rest) else total
    return reps


def family_instances(s_name, a_name, cfg: HarnessConfig):
    s = STEINER_LOOPS[s_name]()
    a = group_by_name(a_name)
    points = s.order - 1
    label = f"{s_name}/{a_name}"
    rng = _rng(cfg.seed, label)
    if a.order <= cfg.exhaustive_max_group:
        if a.order ** points > cfg.orbit_threshold:
            hs, src = orbit_representatives(s, a, points), "orbit"
        else:
            codes = range(a.order ** points)
            hs = [tuple(int(v) for v in (c // a.order ** np.arange(points)) % a.order) for c in codes]
            src = "exhaustive"
    else:
        hs = [tuple(int(v) for v in rng.integers(0, a.order, points)) for _ in range(cfg.samples)]
        src = "sampled"
    out = []
    for h in hs:
        out.append(Instance(s_name, a_name, h, tuple(int(v) for v in prescribed_diag(s, a, h)[1:]),
                            f"{src}/prescribed"))
        out.append(Instance(s_name, a_name, h, (0,) * points, f"{src}/identity"))
    for _ in range(cfg.random_diags):
        h = tuple(int(v) for v in rng.integers(0, a.order, points))
        d = tuple(int(v) for v in rng.integers(0, a.order, points))
        out.append(Instance(s_name, a_name, h, d, "random"))
    return s, a, out


def compare_instance(w: WeightedSteinerLoop, variants, identities):
    """Rows (variant, identity, brute, criterion) for one weighted loop."""
    rows = []
    for v in variants:
        table = build_extension(spec_from_weighted(w, v))
        for name in identities:
            b = bool(brute_check(table, name).holds)
            c = bool(criterion(w, name, v).holds)
            rows.append((Variant(v).value, IdentityName(name).value, b, c))
    return rows


def structure_checks(w: WeightedSteinerLoop):
    """Weight-group assertions for loops with F central and the core identity.

    Returns None when the hypotheses fail, otherwise a dict of named booleans.
    """
    if not w.f_central:
        return None
    an = analyze_weight_group(w)
    if not an.core_identity.holds:
        return None
    a = w.a
    d = an.d_group.members
    dm = np.asarray(d)
    dsub = a.table[np.ix_(dm, dm)]
    centre_d = set(dm[(dsub == dsub.T).all(axis=1)].tolist())
    squares = {a.prod(int(v), int(v)) for v in w.h[1:]}
    quotients = [q for q, _ in an.block_groups.values()]
    out = {
        "kind": an.kind,
        "squares_central_in_D": squares <= centre_d,
        "block_quotients_1_2_6": all(q in (1, 2, 6) for q in quotients),
        "D_abelian_iff_blocks_abelian": an.d_abelian == all(ab for _, ab in an.block_groups.values()),
    }
    if w.s.order > 4:
        out["classified"] = not isinstance(an.classification, Unstructured)
        out["squares_equal"] = bool(an.h_squares_equal)
        small_d = len(d) <= 2
        spec = spec_from_weighted(w)
        product = is_direct_product(spec) or first_isomorphism(
            build_extension(spec), direct_product(w.s, a)) is not None
        out["direct_product_iff_small_D"] = product == small_d
        if isinstance(an.classification, NonabelianFischer):
            out["u_fourth"] = bool((w.diag[1:] == a.power(an.classification.u, 4)).all())
    if w.k_central:
        out["K_central_implies_D_abelian"] = an.d_abelian
    return out


def _run_family(s_name, a_name, cfg):
    s, a, instances = family_instances(s_name, a_name, cfg)
    rows, structure = [], []
    for k, inst in enumerate(instances):
        w = WeightedSteinerLoop(s, a, inst.h, inst.diag)
        for r in compare_instance(w, cfg.variants, cfg.identities):
            rows.append((k,) + r)
        st = structure_checks(w)
        if st is not None:
            structure.append((k, st))
    return instances, rows, structure


def equivalence_harness(cfg: HarnessConfig | None = None):
    """Run the whole family and return a JSON-serialisable report."""
    cfg = cfg or HarnessConfig()
    jobs = [(sn, an) for sn in cfg.steiner for an in cfg.groups]
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(lambda j: _run_family(j[0], j[1], cfg), jobs))
    else:
        results = [_run_family(sn, an, cfg) for sn, an in jobs]
    families, tally, disagreements, structure_fail = [], {}, [], []
    kinds = {}
    for (sn, an), (instances, rows, structure) in zip(jobs, results):
        families.append({"s": sn, "a": an, "instances": len(instances),
                         "sources": sorted({i.source.split("/")[0] for i in instances})})
        for k, v, name, b, c in rows:
            key = f"{v}/{name}"
            entry = tally.setdefault(key, {"instances": 0, "holds": 0, "disagreements": 0})
            entry["instances"] += 1
            entry["holds"] += int(b)
            if b != c:
                entry["disagreements"] += 1
                inst = instances[k]
                disagreements.append({"variant": v, "identity": name, "brute": b, "criterion": c,
                                      "order": STEINER_LOOPS[sn]().order * group_by_name(an).order,
                                      **inst.to_json()})
        for k, st in structure:
            kinds[f"{sn}/{an}/{st['kind']}"] = kinds.get(f"{sn}/{an}/{st['kind']}", 0) + 1
            failed = sorted(n for n, ok in st.items() if n != "kind" and not ok)
            if failed:
                structure_fail.append({"failed": failed, **instances[k].to_json()})
    disagreements.sort(key=lambda d: (d["variant"], d["identity"], d["order"], d["s"], d["a"],
                                      d["h"], d["diag"], d["source"]))
    minimal = {}
    for d in disagreements:
        minimal.setdefault(f"{d['variant']}/{d['identity']}", d)
    structure_fail.sort(key=lambda d: (d["failed"], d["s"], d["a"], d["h"], d["diag"], d["source"]))
    return {
        "seed": cfg.seed,
        "config": cfg.to_json(),
        "families": families,
        "tally": dict(sorted(tally.items())),
        "disagreement_count": len(disagreements),
        "minimal_counterexamples": minimal,
        "disagreements": disagreements,
        "structure_kinds": dict(sorted(kinds.items())),
        "structure_failures": structure_fail,
    }


def report_json(report) -> str:
    """Canonical serialisation: identical reports give identical bytes."""
    return json.dumps(report, sort_keys=True, indent=1)
