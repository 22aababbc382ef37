"""
Command-line front end.

Every command writes one JSON document that records the seed and caps it ran
with.  Exit codes: 0 ok, 1 usage or I/O error, 2 brute check and criterion
disagree, 3 an order or closure cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path


from . import harness, identities, serialize
from .errors import AlgebraError, ClosureCap, OrderCap
from .extension import Variant, build_extension
from .fischer import (affine_covering, affine_weighted_sts, distributive_quasigroup,
                      fischer_space, hall_system_check, is_restricted_fischer,
                      quasigroup_properties)
from .morphisms import automorphism_group, find_isomorphisms
from .steiner import construct_sts, loop_from_sts
from .tables import ORDER_CAP, make_group
from .translations import CLOSURE_CAP, full_group_decomposition, translation_groups
from .weighted import WeightedSteinerLoop, analyze_weight_group, prescribed_diag

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_SEED = harness.DEFAULT_SEED


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    seed: int = DEFAULT_SEED
    order_cap: int = ORDER_CAP
    closure_cap: int = CLOSURE_CAP
    output: str | None = None

    def __post_init__(self):
        if self.order_cap <= 0 or self.closure_cap <= 0:
            raise ValueError("caps must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_json(self):
        return {"command": self.command, "inputs": list(self.inputs), "seed": self.seed,
                "caps": {"order_cap": self.order_cap, "closure_cap": self.closure_cap}}


class UsageError(Exception):
    pass


def _ints(text):
    return [int(v) for v in text.split(",")] if text else []


def _seed(text):
    return int(text, 0)


def _default_seed():
    env = os.environ.get("STEINER_SEED")
    return _seed(env) if env else DEFAULT_SEED


def _envelope(cfg: RunConfig, result):
    return {"run": cfg.to_json(), "result": result}


def _check_order(spec, cfg):
    if spec.order > cfg.order_cap:
        raise OrderCap(f"extension of order {spec.order} exceeds cap {cfg.order_cap}")


# construct -------------------------------------------------------------------


def _construct(args, cfg):
    kind = args.kind
    if kind == "sts":
        _need(args, "n")
        return construct_sts(args.n).to_json()
    if kind == "steiner-loop":
        if args.name:
            return serialize.load_loop(args.name).to_json()
        _need(args, "n")
        return loop_from_sts(construct_sts(args.n)).to_json()
    if kind == "group":
        if args.name:
            return serialize.load_group(args.name).to_json()
        if not args.group_kind:
            raise UsageError("construct group needs --kind or --name")
        params = {k: getattr(args, k) for k in ("n", "k", "s") if getattr(args, k) is not None}
        return make_group(args.group_kind, **params).to_json()
    if kind == "weighted":
        if not (args.s_loop and args.a_group and args.h):
            raise UsageError("construct weighted needs --s, --a and --h")
        s, a = serialize.load_loop(args.s_loop), serialize.load_group(args.a_group)
        h = _ints(args.h)
        diag = _ints(args.diag) if args.diag else prescribed_diag(s, a, h)[1:]
        w = WeightedSteinerLoop(s, a, h, diag)
        return {"s": args.s_loop, "a": args.a_group, "variant": args.variant,
                "weights": w.to_json()}
    if kind == "extension":
        _need(args, "spec")
        spec = serialize.load_spec(serialize.read(args.spec))
        _check_order(spec, cfg)
        return build_extension(spec).to_json()
    if kind == "affine-covering":
        if args.s is None or args.n is None:
            raise UsageError("construct affine-covering needs --s and --n")
        pair, _, ws = affine_covering(args.s, args.n)
        return {"weighted_sts": ws.to_json(), "involutions": list(pair.e_set)}
    raise UsageError(f"unknown construct kind {kind!r}")


def _need(args, name):
    if getattr(args, name, None) is None:
        raise UsageError(f"--{name} is required here")


# check -----------------------------------------------------------------------


def _check(args, cfg):
    spec = serialize.load_spec(serialize.read(args.spec))
    if args.variant:
        spec = spec.with_variant(args.variant)
    _check_order(spec, cfg)
    names = args.identity or [n.value for n in identities.BASIC_IDENTITIES]
    rows, disagree = [], False
    table = build_extension(spec) if args.mode in ("brute", "both") else None
    for name in names:
        row = {"identity": identities.IdentityName(name).value}
        if table is not None:
            b = identities.brute_check(table, name)
            row["brute"] = {"holds": bool(b.holds), "witness": _plain(b.witness)}
        if args.mode in ("criterion", "both"):
            c = identities.criterion(spec, name, spec.variant)
            row["criterion"] = {"holds": bool(c.holds), "witness": _plain(c.witness),
                                "breakdown": _plain(c.breakdown), "flags": _plain(c.flags)}
        if args.mode == "both":
            row["agree"] = row["brute"]["holds"] == row["criterion"]["holds"]
            disagree |= not row["agree"]
        rows.append(row)
    result = {"variant": spec.variant.value, "mode": args.mode, "rows": rows,
              "disagreement": disagree}
    return result, EXIT_DISAGREE if disagree else EXIT_OK


def _plain(x):
    return json.loads(json.dumps(x, default=serialize._default))


# harness ---------------------------------------------------------------------


def _harness(args, cfg):
    hc = harness.HarnessConfig.from_json(serialize.read(args.config)) if args.config \
        else harness.HarnessConfig()
    # precedence: --seed, then $STEINER_SEED, then the config file, then the default
    if args.seed_given or os.environ.get("STEINER_SEED") or not args.config:
        hc.seed = cfg.seed
    cfg.seed = hc.seed
    hc.threads = args.threads
    report = harness.equivalence_harness(hc)
    out_dir = Path(args.counterexamples)
    out_dir.mkdir(parents=True, exist_ok=True)
    for old in out_dir.glob("*.json"):
        old.unlink()
    for k, d in enumerate(report["disagreements"]):
        serialize.write(out_dir / f"disagreement_{k:05d}.json", d)
    for k, d in enumerate(report["structure_failures"]):
        serialize.write(out_dir / f"structure_{k:05d}.json", d)
    bad = report["disagreement_count"] + len(report["structure_failures"])
    return report, EXIT_DISAGREE if bad else EXIT_OK


# translations, fischer, morphisms ---------------------------------------------


def _translations(args, cfg):
    spec = serialize.load_spec(serialize.read(args.spec))
    _check_order(spec, cfg)
    _, report = translation_groups(spec, cfg.closure_cap)
    out = {"translation_groups": report.to_json()}
    try:
        out["decomposition"] = full_group_decomposition(spec, cfg.closure_cap).to_json()
    except AlgebraError as exc:
        out["decomposition"] = {"skipped": str(exc)}
    return out


def _fischer(args, cfg):
    if args.s is None or args.n is None:
        raise UsageError("fischer needs --s and --n")
    ws = affine_weighted_sts(args.s, args.n)
    g, involutions = ws.g, ws.image
    space, _ = fischer_space(ws)
    out = {"group_order": g.order, "involutions": list(involutions),
           "restricted_fischer": bool(is_restricted_fischer(g, involutions)),
           "space": {"points": len(space.points), "lines": len(space.lines)},
           "hall_system": bool(hall_system_check(space))}
    if args.s == args.n:
        out["quasigroup"] = {k: bool(v) for k, v in
                             quasigroup_properties(distributive_quasigroup(ws)).items()}
    return out


def _morphisms(args, cfg):
    spec = serialize.load_spec(serialize.read(args.spec))
    _check_order(spec, cfg)
    prune = not args.no_prune
    if args.spec2:
        spec2 = serialize.load_spec(serialize.read(args.spec2))
        found = find_isomorphisms(spec, spec2, prune=prune)
        return {"isomorphic": bool(found), "count": len(found),
                "witnesses": [w.to_json() for w in found[: args.limit]]}
    rep = automorphism_group(spec, prune=prune)
    return {"order": rep.order, "psi": len(rep.psi), "sigma": len(rep.sigma),
            "sigma1": len(rep.sigma1), "sigma2": len(rep.sigma2),
            "psi_elementary_abelian": rep.psi_elementary_abelian,
            "psi_meets_sigma_trivially": rep.psi_meets_sigma_trivially,
            "kernels_contain_derived": rep.kernels_contain_derived,
            "sigma_pairs": _plain(rep.sigma_pairs),
            "witnesses": [w.to_json() for w in rep.full[: args.limit]]}


def _weights(args, cfg):
    w = serialize.load_weighted(serialize.read(args.spec))
    an = analyze_weight_group(w)
    return _plain({"kind": an.kind, "d_order": len(an.d_group.members),
                   "d_abelian": an.d_abelian, "classification": an.classification.__dict__})


# parser ----------------------------------------------------------------------


def _common(p, defaults):
    def d(value):
        return value if defaults else argparse.SUPPRESS
    p.add_argument("--seed", type=_seed, default=d(None),
                   help="64-bit seed (default 0x5EED or $STEINER_SEED)")
    p.add_argument("--order-cap", type=int, default=d(ORDER_CAP))
    p.add_argument("--closure-cap", type=int, default=d(CLOSURE_CAP))
    p.add_argument("--threads", type=int, default=d(os.cpu_count() or 1))
    p.add_argument("-o", "--output", default=d(None), help="output file (default stdout)")


def build_parser():
    p = argparse.ArgumentParser(
        prog="steinerlike",
        description="Extensions of groups by weighted Steiner loops.",
        epilog="Exit codes: 0 ok; 1 usage or I/O error; 2 brute check and criterion "
               "disagree (check --mode both, harness); 3 order or closure cap exceeded. "
               "check exits 0 whenever the requested verdicts were computed and agree, "
               "whether or not the identity holds. STEINER_SEED overrides the default seed.")
    _common(p, defaults=True)
    # the same options are accepted after the command name
    common = argparse.ArgumentParser(add_help=False)
    _common(common, defaults=False)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(*a, **kw):
        return _add(*a, parents=[common], **kw)
    sub.add_parser = add_parser

    c = sub.add_parser("construct", help="build a triple system, loop, group, spec or table")
    c.add_argument("kind", choices=["sts", "steiner-loop", "group", "weighted", "extension",
                                    "affine-covering"])
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--s", type=int, help="dimension parameter for gf3 groups and coverings")
    c.add_argument("--kind", dest="group_kind")
    c.add_argument("--name")
    c.add_argument("--s-loop", help="Steiner loop name or file for weighted specs")
    c.add_argument("--a", dest="a_group", help="group name for weighted specs")
    c.add_argument("--h", help="comma-separated weights on points 1..|S|-1")
    c.add_argument("--diag", help="comma-separated f(x,x); default satisfies the core identity")
    c.add_argument("--variant", default="standard", choices=[v.value for v in Variant])
    c.add_argument("--spec")

    k = sub.add_parser("check", help="brute check and/or closed-form criterion")
    k.add_argument("--spec", required=True)
    k.add_argument("--identity", action="append",
                   choices=[n.value for n in identities.IdentityName])
    k.add_argument("--mode", default="both", choices=["brute", "criterion", "both"])
    k.add_argument("--variant", choices=[v.value for v in Variant])

    h = sub.add_parser("harness", help="run the brute/criterion equivalence harness")
    h.add_argument("--config")
    h.add_argument("--counterexamples", default="counterexamples")

    t = sub.add_parser("translations", help="translation groups of an extension")
    t.add_argument("--spec", required=True)

    f = sub.add_parser("fischer", help="affine covering and its Fischer space")
    f.add_argument("--s", type=int)
    f.add_argument("--n", type=int)

    m = sub.add_parser("morphisms", help="automorphisms or isomorphisms of extensions")
    m.add_argument("--spec", required=True)
    m.add_argument("--spec2")
    m.add_argument("--no-prune", action="store_true")
    m.add_argument("--limit", type=int, default=20, help="witnesses to print")

    w = sub.add_parser("weights", help="classify the weight group of a weighted spec")
    w.add_argument("--spec", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.seed_given = args.seed is not None
    seed = args.seed if args.seed_given else _default_seed()
    try:
        cfg = RunConfig(args.command, [v for v in (getattr(args, "spec", None),
                                                   getattr(args, "spec2", None),
                                                   getattr(args, "config", None)) if v],
                        seed, args.order_cap, args.closure_cap, args.output)
        code = EXIT_OK
        if args.command == "construct":
            result = _construct(args, cfg)
        elif args.command == "check":
            result, code = _check(args, cfg)
        elif args.command == "harness":
            result, code = _harness(args, cfg)
        elif args.command == "translations":
            result = _translations(args, cfg)
        elif args.command == "fischer":
            result = _fischer(args, cfg)
        elif args.command == "morphisms":
            result = _morphisms(args, cfg)
        else:
            result = _weights(args, cfg)
        serialize.write(args.output, _envelope(cfg, result))
        return code
    except (OrderCap, ClosureCap) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
