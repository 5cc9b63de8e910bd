#!/usr/bin/env python3
"""Replay the four-transaction example and show what the engine derives.

Prints the per-step edge weights for B-C, the final skeleton at a threshold
chosen inside the weight gap, the six association rules, and the snapshot.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mindstream.engine import ContinuousQuery, Engine
from mindstream.model import EngineParams, Transaction, distinct_items
from mindstream.skeleton import derive_rules, extract_skeleton
from mindstream.snapshot import render_snapshot

STREAMS = [
    ["A", "A", "C", "D"],
    ["B", "C", "E"],
    ["A", "B", "C", "E"],
    ["B", "C", "E"],
]


def main() -> None:
    engine = Engine(EngineParams())
    engine.register_query(ContinuousQuery("trace-edge", ("B", "C"), horizon=4))
    for items in STREAMS:
        engine.ingest(Transaction(None, distinct_items(items)))

    print("trace of connection B-C:")
    for emission in engine.emissions:
        print(f"  step {emission.step}: {emission.text}")

    triangle = {("B", "C"), ("B", "E"), ("C", "E")}
    lo = min(c.weight for p, c in engine.mmap.edges.items() if p in triangle)
    hi = max(c.weight for p, c in engine.mmap.edges.items() if p not in triangle)
    theta = (lo + hi) / 2
    print(f"\nweight gap: strongest other edge {hi:.4f} < triangle minimum {lo:.4f}")
    print(f"skeleton at theta_w = {theta:.4f}:")
    skel = extract_skeleton(engine.mmap, theta)
    for (a, b), w in skel.edges:
        print(f"  {a} -- {b}  ({w:.4f})")
    print("rules:")
    for r in sorted(derive_rules(skel), key=lambda r: (r.antecedent, r.consequent)):
        print(f"  {r.antecedent} => {r.consequent}")

    print("\nfinal snapshot:")
    print(render_snapshot(engine.state), end="")


if __name__ == "__main__":
    main()
