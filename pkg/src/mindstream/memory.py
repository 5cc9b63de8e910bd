"""Short-term and long-term pattern memory.

A pattern is a connected component (>= 2 cells) of the thresholded
skeleton, identified by its sorted node-set signature. The short-term
memory counts how many consecutive steps each pattern has survived; once
the count reaches the promotion horizon the pattern is copied into the
long-term memory with appearance / disappearance step stamps. A signature
seen again after its record closed reopens that record and bumps its
recurrence count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .skeleton import Skeleton, _components

Signature = Tuple[str, ...]


@dataclass(frozen=True)
class Pattern:
    signature: Signature
    edges: Tuple


@dataclass
class STMEntry:
    pattern: Pattern
    first_seen_step: int
    consecutive_steps: int = 1


@dataclass
class LTMRecord:
    signature: Signature
    appeared_at: int
    disappeared_at: Optional[int] = None  # None while still present
    recurrence_count: int = 1

    @property
    def is_open(self) -> bool:
        return self.disappeared_at is None


def detect_patterns(s: Skeleton, step: int) -> Set[Pattern]:
    """One pattern per connected skeleton component with >= 2 nodes."""
    patterns = set()
    for comp in _components(s):
        if len(comp.nodes) >= 2:
            patterns.add(Pattern(tuple(sorted(comp.nodes)), comp.edges))
    return patterns


def stm_tick(
    stm: Dict[Signature, STMEntry],
    current: Set[Pattern],
    step: int,
    promote_after: int,
) -> Tuple[Dict[Signature, STMEntry], Set[Pattern]]:
    """Advance the short-term memory by one step.

    Entries matching a current pattern gain a step; absent entries lapse
    (one missed step resets survival). Patterns whose count reaches exactly
    promote_after are returned for promotion.
    """
    if promote_after < 1:
        raise ValueError("promote_after must be >= 1")
    stm_next: Dict[Signature, STMEntry] = {}
    promotions: Set[Pattern] = set()
    for pattern in current:
        sig = pattern.signature
        prior = stm.get(sig)
        if prior is None:
            entry = STMEntry(pattern, first_seen_step=step)
        else:
            entry = STMEntry(pattern, prior.first_seen_step, prior.consecutive_steps + 1)
        stm_next[sig] = entry
        if entry.consecutive_steps == promote_after:
            promotions.add(pattern)
    return stm_next, promotions


def ltm_update(
    ltm: List[LTMRecord],
    promotions: Set[Pattern],
    current: Set[Pattern],
    step: int,
) -> List[LTMRecord]:
    """Apply promotions and closures for one step; returns a new list.

    Recurrence matching is by exact signature: a promotion whose closed
    record exists reopens it; otherwise a fresh record is created. Open
    records whose signature left the current pattern set are closed.
    """
    out = [
        LTMRecord(r.signature, r.appeared_at, r.disappeared_at, r.recurrence_count)
        for r in ltm
    ]
    by_sig = {r.signature: r for r in out}
    current_sigs = {p.signature for p in current}

    for pattern in sorted(promotions, key=lambda p: p.signature):
        record = by_sig.get(pattern.signature)
        if record is None:
            record = LTMRecord(pattern.signature, appeared_at=step)
            out.append(record)
            by_sig[pattern.signature] = record
        elif not record.is_open:
            record.recurrence_count += 1
            record.appeared_at = step
            record.disappeared_at = None

    for record in out:
        if record.is_open and record.signature not in current_sigs:
            record.disappeared_at = step
    return out


def query_ltm(
    ltm: List[LTMRecord],
    which: str = "all",
    signature: Optional[Signature] = None,
) -> List[LTMRecord]:
    """Filter records; `which` is one of all/open/closed/signature.

    An unknown signature yields an empty list, not an error.
    """
    if which == "all":
        picked = list(ltm)
    elif which == "open":
        picked = [r for r in ltm if r.is_open]
    elif which == "closed":
        picked = [r for r in ltm if not r.is_open]
    elif which == "signature":
        if signature is None:
            raise ValueError("signature filter requires a signature")
        picked = [r for r in ltm if r.signature == signature]
    else:
        raise ValueError(f"unknown filter {which!r}")
    return sorted(picked, key=lambda r: (r.appeared_at, r.signature))
