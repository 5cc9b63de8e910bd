"""Engine loop: ingestion, memory maintenance, events, continuous queries.

One Engine owns all mutable state; every ingested transaction runs the
full pipeline (dynamics step, skeleton, pattern detection, STM/LTM update,
event reporting, continuous-query evaluation). Queries read immutable
post-step snapshots, so evaluation order never affects the state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .dynamics import StepEvents, ingest_transaction
from .memory import LTMRecord, Signature, STMEntry, detect_patterns, ltm_update, stm_tick
from .model import EngineParams, MindMap, Pair, Transaction, canonical_pair, new_mindmap
from .skeleton import Skeleton, extract_skeleton, strongest_subgraphs
from .snapshot import EngineState


@dataclass
class ContinuousQuery:
    """A standing query evaluated across future synchronization steps.

    trace-edge emits (step, weight-or-None) after each of the next
    `horizon` steps; strongest-subgraphs emits once, after the next step.
    """

    kind: str  # "trace-edge" | "strongest-subgraphs"
    target: Optional[Pair] = None
    horizon: int = 1
    registered_at: int = 0
    top_k: int = 3
    emitted: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("trace-edge", "strongest-subgraphs"):
            raise ValueError(f"unknown query kind {self.kind!r}")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.kind == "trace-edge":
            if self.target is None:
                raise ValueError("trace-edge needs a target pair")
            self.target = canonical_pair(*self.target)


@dataclass
class QueryEmission:
    query: ContinuousQuery
    step: int
    text: str


def _sig_text(sig: Signature) -> str:
    return "|".join(sig)


class Engine:
    def __init__(self, params: EngineParams = EngineParams()):
        self.params = params
        self.mmap: MindMap = new_mindmap()
        self.stm: Dict[Signature, STMEntry] = {}
        self.ltm: List[LTMRecord] = []
        self.event_lines: List[str] = []
        self.queries: List[ContinuousQuery] = []
        self.emissions: List[QueryEmission] = []

    @property
    def step(self) -> int:
        return self.mmap.step

    @property
    def state(self) -> EngineState:
        return EngineState(self.mmap, self.params, self.stm, self.ltm)

    def register_query(self, query: ContinuousQuery) -> ContinuousQuery:
        query.registered_at = self.step
        self.queries.append(query)
        return query

    def ingest(self, txn: Transaction) -> StepEvents:
        self.mmap, events = ingest_transaction(self.mmap, txn, self.params)
        step = self.mmap.step

        skel = extract_skeleton(self.mmap, self.params.theta_w, self.params.theta_a)
        current = detect_patterns(skel, step)
        self.stm, promotions = stm_tick(
            self.stm, current, step, self.params.promote_after
        )
        open_before = {r.signature for r in self.ltm if r.is_open}
        recurrence_before = {r.signature: r.recurrence_count for r in self.ltm}
        self.ltm = ltm_update(self.ltm, promotions, current, step)

        self._report(events, promotions, open_before, recurrence_before)
        self._evaluate_queries(step)
        return events

    def _report(self, events, promotions, open_before, recurrence_before) -> None:
        log = self.event_lines.append
        step = events.step
        for label in events.cells_created:
            log(f"{step} cell-created {label}")
        for a, b in events.edges_created:
            log(f"{step} edge-created {a} {b}")
        for a, b in events.edges_forgotten:
            log(f"{step} edge-forgotten {a} {b}")
        for label in events.cells_forgotten:
            log(f"{step} cell-forgotten {label}")
        for pattern in sorted(promotions, key=lambda p: p.signature):
            sig = pattern.signature
            if sig in recurrence_before and sig not in open_before:
                log(f"{step} pattern-reopened {_sig_text(sig)}")
            else:
                log(f"{step} pattern-promoted {_sig_text(sig)}")
        open_after = {r.signature for r in self.ltm if r.is_open}
        for sig in sorted(open_before - open_after):
            log(f"{step} pattern-closed {_sig_text(sig)}")

    def _evaluate_queries(self, step: int) -> None:
        for q in self.queries:
            if q.emitted >= (q.horizon if q.kind == "trace-edge" else 1):
                continue
            if q.kind == "trace-edge":
                a, b = q.target
                w = self.mmap.get_weight(a, b)
                text = "absent" if w is None else repr(w)
                self.emissions.append(QueryEmission(q, step, text))
                q.emitted += 1
            else:
                comps = strongest_subgraphs(self.mmap, self.params.theta_w, q.top_k)
                parts = [
                    "[" + _sig_text(tuple(sorted(c.nodes))) + "]" for c in comps
                ] or ["none"]
                self.emissions.append(QueryEmission(q, step, " ".join(parts)))
                q.emitted += 1

    def skeleton(self) -> Skeleton:
        return extract_skeleton(self.mmap, self.params.theta_w, self.params.theta_a)
