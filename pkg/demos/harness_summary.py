"""Run the brute/criterion harness on a config file and print a summary.

    python3 demos/harness_summary.py [demos/harness_small.json]
"""

import json
import sys
import time

from steinerlike.harness import HarnessConfig, equivalence_harness

path = sys.argv[1] if len(sys.argv) > 1 else "demos/harness_small.json"
with open(path) as fh:
    cfg = HarnessConfig.from_json(json.load(fh))

t0 = time.perf_counter()
rep = equivalence_harness(cfg)
print(f"seed {rep['seed']:#x}, {sum(f['instances'] for f in rep['families'])} instances "
      f"in {time.perf_counter() - t0:.1f} s")
print(f"disagreements: {rep['disagreement_count']}")
for key, d in rep["minimal_counterexamples"].items():
    print(f"  {key}: {d['s']} x {d['a']} h={d['h']} diag={d['diag']} brute={d['brute']}")
print("classifications:")
for key, n in rep["structure_kinds"].items():
    print(f"  {key}: {n}")
print(f"structure failures: {len(rep['structure_failures'])}")
for d in rep["structure_failures"][:5]:
    print(f"  {d['failed']} {d['s']} x {d['a']} h={d['h']} diag={d['diag']}")
