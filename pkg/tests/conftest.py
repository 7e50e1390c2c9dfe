"""Shared corpus builders for the test suite.

Random graphs are produced from explicit seeds so every test run sees the
same corpus.  Builders return None for samples that fail validation or
have no s-t path; corpus() filters those out.
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dagcount import prune_to_st, validate_and_sort


def random_dag(rng, n_min=3, n_max=7, fan=2, p=0.6, wmax=9, halves=False,
               second_instance=False):
    """One random pruned DAG on vertices 0..n-1 with s=0, t=n-1, or None."""
    n = rng.randint(n_min, n_max)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            for _ in range(rng.randint(0, fan)):
                if rng.random() >= p:
                    continue
                den = rng.choice([1, 2, 4]) if halves else 1
                w1 = Fraction(rng.randint(0, wmax), den)
                if second_instance:
                    w2 = Fraction(rng.randint(0, wmax), den)
                    edges.append((a, b, w1, w2))
                else:
                    edges.append((a, b, w1))
    try:
        dag = prune_to_st(validate_and_sort(n, 0, n - 1, edges))
    except Exception:
        return None
    return dag if dag.reachable else None


def corpus(seed, count, **kwargs):
    """Exactly ``count`` random reachable DAGs, deterministic in seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dag = random_dag(rng, **kwargs)
        if dag is not None:
            out.append(dag)
    return out


@pytest.fixture
def rng():
    return random.Random(20260823)
