"""Cover the Fischer space of the 3^s : 2 group by a larger affine triple
system, then build the distributive quasigroup of the bijective case."""

from steinerlike import (affine_covering, affine_weighted_sts, distributive_quasigroup,
                         fischer_space, hall_system_check, is_restricted_fischer)
from steinerlike.fischer import quasigroup_properties

for s, n in [(1, 2), (2, 3)]:
    pair, w, ws = affine_covering(s, n)
    space, _ = fischer_space(ws)
    print(f"AG({n},3) onto 3^{s}:2  |G|={pair.g.order}  involutions={len(pair.e_set)}  "
          f"Fischer={bool(is_restricted_fischer(pair.g, pair.e_set))}  "
          f"space={len(space.points)} points/{len(space.lines)} lines  "
          f"Hall={bool(hall_system_check(space))}")

m = distributive_quasigroup(affine_weighted_sts(2, 2))
print("\nquasigroup on 9 points:")
for name, chk in quasigroup_properties(m).items():
    print(f"  {name:18s} {bool(chk)}")
print(m.table)
