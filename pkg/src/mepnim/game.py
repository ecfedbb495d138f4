"""Nim states, legal-move generation, and the reachable-state graph.

States are tuples of non-negative heap sizes.  Two state spaces are
supported: ``MULTISET`` treats permutations of the same heap sizes as one
state (stored sorted non-increasing), ``TUPLE`` keeps heap order positional.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

GameState = tuple[int, ...]


class StateSpaceMode(Enum):
    MULTISET = "multiset"
    TUPLE = "tuple"


def canonicalize(heaps, mode: StateSpaceMode) -> GameState:
    """Canonical form of a raw heap list: sorted non-increasing in multiset
    mode, unchanged in tuple mode."""
    state = tuple(int(h) for h in heaps)
    if any(h < 0 for h in state):
        raise ValueError("heap sizes must be non-negative")
    if mode is StateSpaceMode.MULTISET:
        return tuple(sorted(state, reverse=True))
    return state


def is_terminal(state: GameState) -> bool:
    return not any(state)


def children(state: GameState, mode: StateSpaceMode) -> list[GameState]:
    """Unique successor states of a canonical state, in deterministic order:
    tuple mode by (heap index, objects removed), multiset mode sorted
    lexicographically descending.  Empty for the terminal state."""
    if mode is StateSpaceMode.TUPLE:
        out = []
        for i, c in enumerate(state):
            if c:
                pre, post = state[:i], state[i + 1 :]
                for rem in range(c - 1, -1, -1):
                    out.append(pre + (rem,) + post)
        return out
    seen = set()
    out = []
    for i, c in enumerate(state):
        if c:
            rest = state[:i] + state[i + 1 :]
            for rem in range(c - 1, -1, -1):
                child = tuple(sorted(rest + (rem,), reverse=True))
                if child not in seen:
                    seen.add(child)
                    out.append(child)
    out.sort(reverse=True)
    return out


@dataclass(frozen=True)
class Move:
    """A legal move: remove ``take`` objects from 1-based heap ``heap``,
    reaching the canonical state ``child``."""

    heap: int
    take: int
    child: GameState


def moves(state: GameState, mode: StateSpaceMode) -> tuple[Move, ...]:
    """Legal moves with their resulting states, one per unique child, in the
    same child order as `children`.  In multiset mode the representative
    (heap, take) for a child is the first in (heap, take) order."""
    raw = []
    for i, c in enumerate(state):
        for take in range(1, c + 1):
            child = canonicalize(state[:i] + (c - take,) + state[i + 1 :], mode)
            raw.append(Move(i + 1, take, child))
    if mode is StateSpaceMode.MULTISET:
        first: dict[GameState, Move] = {}
        for m in raw:
            first.setdefault(m.child, m)
        return tuple(sorted(first.values(), key=lambda m: m.child, reverse=True))
    return tuple(raw)


class GameGraph:
    """Deduplicated DAG of every state reachable from a root.

    Built once by `build_graph`, then immutable; safe to share across
    threads.  Nodes are listed in breadth-first discovery order from the
    root; edges always strictly decrease the total object count.
    """

    def __init__(self, root: GameState, mode: StateSpaceMode, nodes: list[GameState], child_ids: list[tuple[int, ...]]):
        self.root = root
        self.mode = mode
        self.nodes: tuple[GameState, ...] = tuple(nodes)
        self.child_ids: tuple[tuple[int, ...], ...] = tuple(child_ids)
        self.index: dict[GameState, int] = {s: i for i, s in enumerate(self.nodes)}
        self.n_heaps = len(root)

        self.heap_matrix = np.array(self.nodes, dtype=np.int64).reshape(len(self.nodes), self.n_heaps)
        src: list[int] = []
        dst: list[int] = []
        for i, kids in enumerate(self.child_ids):
            src.extend([i] * len(kids))
            dst.extend(kids)
        self.edge_src = np.array(src, dtype=np.int64)
        self.edge_dst = np.array(dst, dtype=np.int64)
        self.terminal_mask = np.array([is_terminal(s) for s in self.nodes], dtype=bool)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edge_src)

    def children_of(self, state: GameState) -> tuple[GameState, ...]:
        return tuple(self.nodes[j] for j in self.child_ids[self.index[state]])

    def __contains__(self, state: GameState) -> bool:
        return state in self.index


def build_graph(root, mode: StateSpaceMode) -> GameGraph:
    """Breadth-first closure of `children` from the canonicalized root, with
    states merged by canonical identity."""
    start = canonicalize(root, mode)
    nodes: list[GameState] = [start]
    index: dict[GameState, int] = {start: 0}
    child_ids: list[tuple[int, ...]] = []

    cursor = 0
    while cursor < len(nodes):
        state = nodes[cursor]
        ids = []
        for child in children(state, mode):
            j = index.get(child)
            if j is None:
                j = len(nodes)
                index[child] = j
                nodes.append(child)
            ids.append(j)
        child_ids.append(tuple(ids))
        cursor += 1
    return GameGraph(start, mode, nodes, child_ids)
