"""Collects one line per acceptance criterion for the terminal summary."""

LINES = {}


def record(k, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}"
    LINES[k] = line
    print(line)
