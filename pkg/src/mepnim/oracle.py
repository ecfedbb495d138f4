"""Ground-truth P/N labeling, independent of any evolved formula.

Two routes: retrograde analysis (backward induction over the game graph,
anchored at the terminal P-position) and the closed-form xor-sum rule.
They must agree on every Nim graph; the brute-force route is what evolved
formulas are verified against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from operator import xor

from .expr import Chromosome, EvalError, evaluate
from .fitness import Label
from .game import GameGraph, GameState


def retrograde_labels(graph: GameGraph) -> dict[GameState, Label]:
    """Backward induction keyed on total object count: the terminal is P,
    any state with a P child is N, a state whose children are all N is P."""
    count = graph.num_nodes
    totals = [sum(s) for s in graph.nodes]
    is_p = [False] * count
    for i in sorted(range(count), key=totals.__getitem__):
        is_p[i] = all(not is_p[j] for j in graph.child_ids[i])
    return {graph.nodes[i]: (Label.P if is_p[i] else Label.N) for i in range(count)}


def bouton_label(state: GameState) -> Label:
    """P exactly when the xor of all heap sizes is zero."""
    return Label.P if reduce(xor, state, 0) == 0 else Label.N


@dataclass(frozen=True)
class VerifyResult:
    agrees: bool
    disagreements: tuple[GameState, ...]
    invalid: bool = False

    def __bool__(self) -> bool:
        return self.agrees


def verify_formula(chrom: Chromosome, graph: GameGraph) -> VerifyResult:
    """Compare the formula's labeling with retrograde analysis on every node.

    Reports all disagreeing states, not just the first; a formula that
    raises EvalError anywhere comes back as invalid with no agreement.
    """
    expected = retrograde_labels(graph)
    disagreements = []
    for state in graph.nodes:
        try:
            got = Label.P if evaluate(chrom, state, graph.n_heaps) == 0 else Label.N
        except EvalError:
            return VerifyResult(agrees=False, disagreements=(), invalid=True)
        if got is not expected[state]:
            disagreements.append(state)
    return VerifyResult(agrees=not disagreements, disagreements=tuple(disagreements))
