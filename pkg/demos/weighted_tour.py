"""Build a few weighted Steiner loops over the Fano loop and compare the
table-scanning verdict with the closed-form one for each law."""

from steinerlike import (IdentityName, WeightedSteinerLoop, analyze_weight_group, brute_check,
                         build_extension, criterion, fano, make_group, named_group,
                         spec_from_weighted)

S = fano()
CASES = [
    ("Z8, h = 1, f(x,x) = 4", named_group("Z8"), [1] * 7, [4] * 7),
    ("Z8, h = 1, f(x,x) = 0", named_group("Z8"), [1] * 7, [0] * 7),
    ("S4, h = 4-cycle, f(x,x) = e", make_group("symmetric", n=4), [9] * 7, [0] * 7),
]

for label, a, h, diag in CASES:
    w = WeightedSteinerLoop(S, a, h, diag)
    table = build_extension(spec_from_weighted(w))
    print(f"\n{label}: order {table.order}, weight group kind {analyze_weight_group(w).kind}")
    for name in IdentityName:
        b, c = bool(brute_check(table, name)), criterion(w, name)
        mark = "" if b == c.holds else "   <- disagreement"
        flag = " (proper)" if c.flags.get("proper") else ""
        print(f"  {name.value:24s} table={b!s:5s} criterion={c.holds!s:5s}{flag}{mark}".rstrip())
