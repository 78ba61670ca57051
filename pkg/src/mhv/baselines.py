"""Greedy-MHV and Growth-MHV constructive baselines.

Greedy-MHV tries the k monochromatic completions and keeps the best.
Growth-MHV grows the colouring guided by a seven-way vertex labelling,
always serving the most promising label class first.
"""

from __future__ import annotations

import random
import time
from enum import IntEnum

from .graph import FullColouring, Graph, PartialColouring, count_happy
from .result import SolveResult


def greedy_mhv(g: Graph, colouring: PartialColouring) -> SolveResult:
    """Best of the k completions that give all uncoloured vertices one colour.

    Ties between colours break towards the lowest colour index.
    """
    start = time.perf_counter()
    n = g.n
    base = colouring.as_array(n)
    best_happy = -1
    best_colour = 1
    for i in range(1, colouring.k + 1):
        filled = FullColouring(colouring.k, tuple(c if c else i for c in base))
        happy = count_happy(g, filled)
        if happy > best_happy:
            best_happy = happy
            best_colour = i
    witness = FullColouring(colouring.k, tuple(c if c else best_colour for c in base))
    elapsed = (time.perf_counter() - start) * 1000.0
    return SolveResult(
        algorithm="greedy-mhv",
        colouring=witness,
        happy=best_happy,
        percent_happy=best_happy / n if n else 1.0,
        provably_optimal=False,
        time_ms=elapsed,
    )


class GrowthLabel(IntEnum):
    """Vertex classes steering Growth-MHV.

    Coloured vertices are HAPPY, UNHAPPY or GROWING (consistent so far but
    with uncoloured neighbours).  Uncoloured vertices are NEXT_TO_GROWING,
    CAN_BE_HAPPY, CANNOT_BE_HAPPY or FREE (no coloured neighbour).
    """

    HAPPY = 0
    UNHAPPY = 1
    GROWING = 2
    NEXT_TO_GROWING = 3
    CAN_BE_HAPPY = 4
    CANNOT_BE_HAPPY = 5
    FREE = 6


def compute_growth_labels(g: Graph, colouring: PartialColouring) -> tuple[GrowthLabel, ...]:
    """Label every vertex from scratch for a given partial colouring."""
    colours = list(colouring.as_array(g.n))
    labels: list[GrowthLabel] = [GrowthLabel.FREE] * g.n
    for v in range(g.n):
        if colours[v]:
            labels[v] = _coloured_label(g, colours, v)
    for v in range(g.n):
        if not colours[v]:
            labels[v] = _uncoloured_label(g, colours, labels, v)
    return tuple(labels)


def _coloured_label(g: Graph, colours: list[int], v: int) -> GrowthLabel:
    cv = colours[v]
    has_uncoloured = False
    for u in g.adjacency[v]:
        cu = colours[u]
        if cu == 0:
            has_uncoloured = True
        elif cu != cv:
            return GrowthLabel.UNHAPPY
    return GrowthLabel.GROWING if has_uncoloured else GrowthLabel.HAPPY


def _uncoloured_label(
    g: Graph, colours: list[int], labels: list[GrowthLabel], v: int
) -> GrowthLabel:
    unhappy_colours: set[int] = set()
    has_coloured = False
    for u in g.adjacency[v]:
        if not colours[u]:
            continue
        has_coloured = True
        if labels[u] == GrowthLabel.GROWING:
            return GrowthLabel.NEXT_TO_GROWING
        if labels[u] == GrowthLabel.UNHAPPY:
            unhappy_colours.add(colours[u])
    if not has_coloured:
        return GrowthLabel.FREE
    if len(unhappy_colours) >= 2:
        return GrowthLabel.CANNOT_BE_HAPPY
    return GrowthLabel.CAN_BE_HAPPY


class GrowthRun:
    """Stepwise Growth-MHV execution; exposed so tests can audit each step."""

    def __init__(
        self,
        g: Graph,
        colouring: PartialColouring,
        seed: int = 0,
        prefer_low_degree: bool = False,
    ) -> None:
        self.g = g
        self.k = colouring.k
        self.rng = random.Random(seed)
        self.prefer_low_degree = prefer_low_degree
        self.colours = list(colouring.as_array(g.n))
        self.labels: list[GrowthLabel] = list(compute_growth_labels(g, colouring))
        self.uncoloured = sum(1 for c in self.colours if c == 0)
        self.iterations = 0

    @property
    def done(self) -> bool:
        return self.uncoloured == 0

    def _pick(self, wanted: GrowthLabel) -> int | None:
        best = None
        best_key: tuple[int, int] | None = None
        for v in range(self.g.n):
            if self.labels[v] != wanted:
                continue
            deg = self.g.degrees[v]
            key = (deg if self.prefer_low_degree else -deg, v)
            if best_key is None or key < best_key:
                best_key = key
                best = v
        return best

    def step(self) -> None:
        """Colour at least one vertex following the label priority cascade."""
        assert not self.done
        newly: list[int] = []
        centre = self._pick(GrowthLabel.GROWING)
        if centre is not None:
            cv = self.colours[centre]
            for u in self.g.adjacency[centre]:
                if self.colours[u] == 0:
                    self.colours[u] = cv
                    newly.append(u)
        else:
            centre = self._pick(GrowthLabel.CAN_BE_HAPPY)
            if centre is not None:
                donor = next(
                    u
                    for u in self.g.adjacency[centre]
                    if self.colours[u] and self.labels[u] == GrowthLabel.UNHAPPY
                )
                cv = self.colours[donor]
                self.colours[centre] = cv
                newly.append(centre)
                for u in self.g.adjacency[centre]:
                    if self.colours[u] == 0:
                        self.colours[u] = cv
                        newly.append(u)
            else:
                centre = self._pick(GrowthLabel.CANNOT_BE_HAPPY)
                if centre is not None:
                    donor = next(
                        u
                        for u in self.g.adjacency[centre]
                        if self.colours[u] and self.labels[u] == GrowthLabel.UNHAPPY
                    )
                    self.colours[centre] = self.colours[donor]
                    newly.append(centre)
                else:
                    centre = self._pick(GrowthLabel.FREE)
                    assert centre is not None, "an uncoloured vertex must carry some label"
                    self.colours[centre] = self.rng.randint(1, self.k)
                    newly.append(centre)
        self.uncoloured -= len(newly)
        self.iterations += 1
        assert self.iterations <= self.g.n, "growth must colour something every iteration"
        self._relabel_around(newly + [centre])

    def _relabel_around(self, sources: list[int]) -> None:
        # Labels can shift up to three edges away from a coloured vertex.
        region = set(sources)
        frontier = list(region)
        for _ in range(3):
            nxt: list[int] = []
            for v in frontier:
                for u in self.g.adjacency[v]:
                    if u not in region:
                        region.add(u)
                        nxt.append(u)
            frontier = nxt
        for v in region:
            if self.colours[v]:
                self.labels[v] = _coloured_label(self.g, self.colours, v)
        for v in region:
            if not self.colours[v]:
                self.labels[v] = _uncoloured_label(self.g, self.colours, self.labels, v)


def growth_mhv(
    g: Graph,
    colouring: PartialColouring,
    seed: int = 0,
    prefer_low_degree: bool = False,
) -> SolveResult:
    """Run Growth-MHV to completion.

    Candidate ties break by degree (highest first by default; the flag flips
    to lowest first), then by vertex id.  FREE vertices take a seeded random
    colour, which also serves disconnected graphs.
    """
    start = time.perf_counter()
    run = GrowthRun(g, colouring, seed=seed, prefer_low_degree=prefer_low_degree)
    while not run.done:
        run.step()
    full = FullColouring(colouring.k, tuple(run.colours))
    happy = count_happy(g, full)
    elapsed = (time.perf_counter() - start) * 1000.0
    return SolveResult(
        algorithm="growth-mhv",
        colouring=full,
        happy=happy,
        percent_happy=happy / g.n if g.n else 1.0,
        provably_optimal=False,
        time_ms=elapsed,
    )
