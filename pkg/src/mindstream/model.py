"""Core state of the mind-map: cells, connections, and engine parameters.

The mind-map is a sparse undirected weighted graph over item labels. Labels
compare by exact string equality; edges are stored once per unordered pair,
canonicalized by lexicographic order of the two labels. The base model is
cooperative only: activations and weights live in [0, 1] (the inhibitory
half of the representable [-1, 1] activation range is unused).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Optional, Tuple

Pair = Tuple[str, str]


class SelfPairError(ValueError):
    """Raised when an operation receives the same label twice as a pair."""


def validate_label(label: str) -> str:
    if not isinstance(label, str) or not label.strip():
        raise ValueError(f"item label must be a non-empty string, got {label!r}")
    return label


def canonical_pair(a: str, b: str) -> Pair:
    """Order an unordered pair deterministically. Self-pairs are rejected."""
    if a == b:
        raise SelfPairError(f"self-pair ({a!r}, {a!r})")
    return (a, b) if a < b else (b, a)


@dataclass
class ItemCell:
    label: str
    activation: float
    created_at: int
    last_activated_at: int

    def __post_init__(self) -> None:
        validate_label(self.label)
        if not -1.0 <= self.activation <= 1.0:
            raise ValueError(f"activation {self.activation} outside [-1, 1]")
        if self.last_activated_at < self.created_at:
            raise ValueError("last_activated_at precedes created_at")


@dataclass
class Connection:
    pair: Pair
    weight: float
    last_reinforced_at: int

    def __post_init__(self) -> None:
        self.pair = canonical_pair(*self.pair)
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"weight {self.weight} outside [0, 1]")


@dataclass
class Transaction:
    """One TID-grouped read from the stream; duplicates merged with counts."""

    tid: Optional[Tuple[str, int]]
    items: Dict[str, int]

    def __post_init__(self) -> None:
        for label, count in self.items.items():
            validate_label(label)
            if count < 1:
                raise ValueError(f"count for {label!r} must be >= 1, got {count}")

    @property
    def distinct_count(self) -> int:
        return len(self.items)


def distinct_items(raw_items: Iterable[str]) -> Dict[str, int]:
    """Merge a raw item sequence into a label -> occurrence-count map."""
    counts: Dict[str, int] = {}
    for label in raw_items:
        validate_label(label)
        counts[label] = counts.get(label, 0) + 1
    return counts


@dataclass
class MindMap:
    cells: Dict[str, ItemCell] = field(default_factory=dict)
    edges: Dict[Pair, Connection] = field(default_factory=dict)
    step: int = 0

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def get_weight(self, a: str, b: str) -> Optional[float]:
        """Weight of the unordered pair (a, b), or None if no edge exists."""
        conn = self.edges.get(canonical_pair(a, b))
        return None if conn is None else conn.weight

    def get_activation(self, label: str) -> Optional[float]:
        cell = self.cells.get(label)
        return None if cell is None else cell.activation

    def copy(self) -> "MindMap":
        """Independent copy; safe to mutate without touching the original."""
        return MindMap(
            cells={k: replace(v) for k, v in self.cells.items()},
            edges={k: replace(v) for k, v in self.edges.items()},
            step=self.step,
        )

    def check_invariants(self) -> None:
        """Debug hook: raise if any structural invariant is violated."""
        for pair, conn in self.edges.items():
            if pair != conn.pair or pair != canonical_pair(*pair):
                raise AssertionError(f"non-canonical edge key {pair}")
            for endpoint in pair:
                if endpoint not in self.cells:
                    raise AssertionError(f"dangling edge endpoint {endpoint!r}")
            if not 0.0 <= conn.weight <= 1.0:
                raise AssertionError(f"weight out of range on {pair}")
        for label, cell in self.cells.items():
            if not 0.0 <= cell.activation <= 1.0:
                raise AssertionError(f"activation out of range on {label!r}")
        n = self.cell_count
        if self.edge_count > n * (n - 1) // 2:
            raise AssertionError("edge count exceeds n(n-1)/2")


def new_mindmap() -> MindMap:
    return MindMap()


@dataclass(frozen=True)
class EngineParams:
    """Tunable update-rule parameters.

    eta: Hebbian learning rate, (0, 1].
    lam: activation gain per occurrence, (0, 1].
    beta_w / beta_a: per-step multiplicative decay of non-reinforced edge
        weights / non-activated cell activations, [0, 1).
    epsilon: forgetting floor; edges below it (and isolated quiet cells)
        are pruned, [0, 1) and < theta_w.
    theta_w / theta_a: skeleton thresholds on weight / activation, [0, 1].
    promote_after: consecutive skeleton steps before a pattern is promoted
        to long-term memory, >= 1.
    """

    eta: float = 0.5
    lam: float = 0.5
    beta_w: float = 0.02
    beta_a: float = 0.05
    epsilon: float = 0.01
    theta_w: float = 0.5
    theta_a: float = 0.0
    promote_after: int = 2

    def __post_init__(self) -> None:
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must be in (0, 1]")
        if not 0.0 < self.lam <= 1.0:
            raise ValueError("lam must be in (0, 1]")
        if not 0.0 <= self.beta_w < 1.0:
            raise ValueError("beta_w must be in [0, 1)")
        if not 0.0 <= self.beta_a < 1.0:
            raise ValueError("beta_a must be in [0, 1)")
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError("epsilon must be in [0, 1)")
        if not 0.0 <= self.theta_w <= 1.0:
            raise ValueError("theta_w must be in [0, 1]")
        if not 0.0 <= self.theta_a <= 1.0:
            raise ValueError("theta_a must be in [0, 1]")
        if self.epsilon >= self.theta_w:
            raise ValueError("epsilon must be < theta_w")
        if self.promote_after < 1:
            raise ValueError("promote_after must be >= 1")
