"""One-shot static queries over a loaded snapshot.

All queries are pure reads; results are plain text, one fact per line.
Unknown labels answer "absent" rather than erroring.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .memory import detect_patterns, query_ltm
from .skeleton import derive_rules, extract_skeleton, strongest_subgraphs
from .snapshot import EngineState


class QueryUsageError(ValueError):
    pass


def _take_options(args: List[str], allowed: Dict[str, type]) -> Tuple[List[str], Dict]:
    positional: List[str] = []
    options: Dict = {}
    i = 0
    while i < len(args):
        arg = args[i]
        if arg.startswith("--"):
            if arg not in allowed:
                raise QueryUsageError(f"unknown option {arg}")
            if i + 1 >= len(args):
                raise QueryUsageError(f"option {arg} needs a value")
            try:
                options[arg] = allowed[arg](args[i + 1])
            except ValueError:
                raise QueryUsageError(f"bad value for {arg}: {args[i + 1]!r}") from None
            i += 2
        else:
            positional.append(arg)
            i += 1
    return positional, options


def _fmt(w: float) -> str:
    return f"{w:.6f}"


def run_static_query(state: EngineState, args: List[str]) -> str:
    """Evaluate one query (e.g. ["weight", "A", "C"]) against a snapshot."""
    if not args:
        raise QueryUsageError("empty query")
    kind, rest = args[0], args[1:]

    if kind == "weight":
        if len(rest) != 2:
            raise QueryUsageError("usage: weight A B")
        w = state.mmap.get_weight(rest[0], rest[1]) if rest[0] != rest[1] else None
        if rest[0] == rest[1]:
            raise QueryUsageError("weight needs two distinct labels")
        return "absent" if w is None else _fmt(w)

    if kind == "activation":
        if len(rest) != 1:
            raise QueryUsageError("usage: activation A")
        a = state.mmap.get_activation(rest[0])
        return "absent" if a is None else _fmt(a)

    if kind == "skeleton":
        _, opts = _take_options(rest, {"--theta-w": float, "--theta-a": float})
        theta_w = opts.get("--theta-w", state.params.theta_w)
        theta_a = opts.get("--theta-a", state.params.theta_a)
        skel = extract_skeleton(state.mmap, theta_w, theta_a)
        lines = ["nodes " + " ".join(sorted(skel.nodes))]
        lines += [f"edge {a} {b} {_fmt(w)}" for (a, b), w in skel.edges]
        return "\n".join(lines)

    if kind == "rules":
        _, opts = _take_options(rest, {"--theta-w": float, "--theta-a": float})
        theta_w = opts.get("--theta-w", state.params.theta_w)
        theta_a = opts.get("--theta-a", state.params.theta_a)
        rules = derive_rules(extract_skeleton(state.mmap, theta_w, theta_a))
        rules.sort(key=lambda r: (r.antecedent, r.consequent))
        return "\n".join(
            f"{r.antecedent} => {r.consequent} {_fmt(r.weight)}" for r in rules
        )

    if kind == "patterns":
        skel = extract_skeleton(state.mmap, state.params.theta_w, state.params.theta_a)
        patterns = detect_patterns(skel, state.mmap.step)
        return "\n".join(
            "pattern " + "|".join(p.signature)
            for p in sorted(patterns, key=lambda p: p.signature)
        )

    if kind == "ltm":
        which = rest[0] if rest else "all"
        if which not in ("all", "open", "closed"):
            raise QueryUsageError("usage: ltm [open|closed|all]")
        records = query_ltm(state.ltm, which)
        return "\n".join(
            f"{'|'.join(r.signature)} {r.appeared_at} "
            f"{'open' if r.is_open else r.disappeared_at} {r.recurrence_count}"
            for r in records
        )

    if kind == "strongest":
        _, opts = _take_options(rest, {"--theta-w": float, "--top": int})
        theta_w = opts.get("--theta-w", state.params.theta_w)
        top = opts.get("--top", 3)
        comps = strongest_subgraphs(state.mmap, theta_w, top)
        lines = []
        for rank, c in enumerate(comps, start=1):
            mean_w = sum(w for _, w in c.edges) / len(c.edges)
            nodes = "|".join(sorted(c.nodes))
            lines.append(f"{rank} [{nodes}] mean-weight {_fmt(mean_w)}")
        return "\n".join(lines)

    raise QueryUsageError(f"unknown query {kind!r}")
