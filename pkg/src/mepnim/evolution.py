"""Steady-state evolutionary search for a zero-violation formula.

One generation is population_size // 2 steady-state iterations; each
iteration selects two parents by independent binary tournaments, recombines
them with the configured probability, mutates both offspring, and lets the
better offspring replace the worst population member when strictly better.
The run stops as soon as any individual reaches fitness 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .expr import Chromosome
from .fitness import graph_fitness
from .game import StateSpaceMode, build_graph, canonicalize
from .genetics import OperatorConfig, crossover_one_point, mutate, random_chromosome


@dataclass(frozen=True)
class EvolutionConfig:
    heaps: tuple[int, ...]
    population_size: int = 100
    chromosome_length: int = 15
    generations: int = 100
    operators: OperatorConfig = field(default_factory=OperatorConfig)
    seed: int = 0
    mode: StateSpaceMode = StateSpaceMode.MULTISET


@dataclass(frozen=True)
class RunResult:
    """Outcome of one evolution run.

    ``generation_of_success`` is the 1-based generation in which a
    fitness-0 individual first appeared (0 when the random initial
    population already contained one), None on failure.
    ``best_fitness_history`` holds the population's best fitness after
    initialization and after each executed generation.
    """

    success: bool
    best_chromosome: Chromosome
    best_fitness: int | float
    generation_of_success: int | None
    best_fitness_history: tuple[int | float, ...]


def validate_config(config: EvolutionConfig) -> None:
    """Reject impossible configurations before any search happens."""
    if config.population_size < 4:
        raise ValueError("population_size must be >= 4")
    if config.chromosome_length < 1:
        raise ValueError("chromosome_length must be >= 1")
    if config.generations < 1:
        raise ValueError("generations must be >= 1")
    if not config.heaps:
        raise ValueError("heaps must not be empty")
    if any(h < 0 for h in config.heaps):
        raise ValueError("heap sizes must be non-negative")


def tournament_select(fitnesses, rng: random.Random) -> int:
    """Binary tournament: draw two distinct indices uniformly, return the
    one with lower fitness, ties broken uniformly at random."""
    i, j = rng.sample(range(len(fitnesses)), 2)
    if fitnesses[i] < fitnesses[j]:
        return i
    if fitnesses[j] < fitnesses[i]:
        return j
    return rng.choice((i, j))


def evolve(config: EvolutionConfig) -> RunResult:
    """Run one seeded steady-state search; deterministic given the config."""
    validate_config(config)
    root = canonicalize(config.heaps, config.mode)
    graph = build_graph(root, config.mode)
    n_heaps = len(root)
    ops = config.operators
    rng = random.Random(config.seed)
    pop_size = config.population_size
    length = config.chromosome_length

    population = [
        random_chromosome(length, n_heaps, rng, ops.function_gene_probability)
        for _ in range(pop_size)
    ]
    fitnesses = [graph_fitness(c, graph)[0] for c in population]

    best_idx = min(range(pop_size), key=fitnesses.__getitem__)
    best_chrom, best_fit = population[best_idx], fitnesses[best_idx]
    history = [best_fit]

    if best_fit == 0:
        return RunResult(True, best_chrom, best_fit, 0, tuple(history))

    worst_idx = max(range(pop_size), key=fitnesses.__getitem__)
    iterations = max(1, pop_size // 2)
    success_generation = None

    for generation in range(1, config.generations + 1):
        for _ in range(iterations):
            p1 = population[tournament_select(fitnesses, rng)]
            p2 = population[tournament_select(fitnesses, rng)]
            if rng.random() < ops.crossover_probability and length >= 2:
                o1, o2 = crossover_one_point(p1, p2, rng)
            else:
                o1, o2 = p1, p2
            o1 = mutate(o1, ops, n_heaps, rng)
            o2 = mutate(o2, ops, n_heaps, rng)
            f1 = graph_fitness(o1, graph)[0]
            f2 = graph_fitness(o2, graph)[0]
            best_offspring, offspring_fit = (o1, f1) if f1 <= f2 else (o2, f2)

            if offspring_fit < fitnesses[worst_idx]:
                population[worst_idx] = best_offspring
                fitnesses[worst_idx] = offspring_fit
                worst_idx = max(range(pop_size), key=fitnesses.__getitem__)
                if offspring_fit < best_fit:
                    best_chrom, best_fit = best_offspring, offspring_fit
            if best_fit == 0:
                success_generation = generation
                break
        history.append(best_fit)
        if success_generation is not None:
            break

    return RunResult(
        success=best_fit == 0,
        best_chromosome=best_chrom,
        best_fitness=best_fit,
        generation_of_success=success_generation,
        best_fitness_history=tuple(history),
    )
