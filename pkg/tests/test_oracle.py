"""Brute-force oracle behaviour."""

import random

import pytest

from mhv.errors import ResourceLimitError
from mhv.graph import Graph, PartialColouring, count_happy
from mhv.oracle import brute_force

from corpus import fuzz_instances


def test_path_with_forced_endpoints():
    g = Graph(3, [(0, 1), (1, 2)])
    col = PartialColouring(2, {0: 1, 2: 2})
    result = brute_force(g, col)
    assert result.happy == 1
    assert result.provably_optimal


def test_fully_precoloured_single_evaluation():
    g = Graph(3, [(0, 1), (1, 2)])
    col = PartialColouring(2, {0: 1, 1: 1, 2: 2})
    result = brute_force(g, col)
    assert result.happy == 1
    assert result.colouring.colours == (1, 1, 2)


def test_edgeless_everything_happy():
    g = Graph(4)
    result = brute_force(g, PartialColouring(3))
    assert result.happy == 4
    assert result.percent_happy == 1.0


def test_cap_refusal():
    g = Graph(30)
    with pytest.raises(ResourceLimitError):
        brute_force(g, PartialColouring(3), cap=1000)


def test_witness_matches_reported_count_and_extends():
    for inst in fuzz_instances(40, seed=101):
        result = brute_force(inst.graph, inst.colouring)
        assert count_happy(inst.graph, result.colouring) == result.happy
        assert result.colouring.extends(inst.colouring)


def test_oracle_dominates_any_extension():
    rng = random.Random(59)
    for inst in fuzz_instances(25, seed=103):
        g, col = inst.graph, inst.colouring
        best = brute_force(g, col).happy
        base = col.as_array(g.n)
        for _ in range(10):
            filled = tuple(c if c else rng.randint(1, col.k) for c in base)
            from mhv.graph import FullColouring

            assert count_happy(g, FullColouring(col.k, filled)) <= best
