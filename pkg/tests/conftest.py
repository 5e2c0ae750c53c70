"""Shared helpers: random word corpora and the independent Seifert oracle."""

from __future__ import annotations

import random
from math import gcd

from bourgeois import new_surface, word
from bourgeois.algebra import AbelianGroup, IntMatrix, cokernel


def random_planar_word(rng: random.Random, surface, max_len=6, positive=False,
                       sign=None, min_len=0):
    """A random subset-encoded word on a planar surface."""
    b = surface.boundary_count
    letters = []
    for _ in range(rng.randint(min_len, max_len)):
        subset = set()
        while not subset:
            subset = {j for j in range(1, b) if rng.random() < 0.5}
        if positive:
            exp = rng.randint(1, 3)
        elif sign is not None:
            exp = sign * rng.randint(1, 3)
        else:
            exp = rng.choice([-3, -2, -1, 1, 2, 3])
        letters.append((subset, exp))
    return word(surface, letters)


def random_vector_word(rng: random.Random, surface, max_len=5, min_len=0):
    """A random word of twists about primitive integer classes."""
    m = surface.rank
    letters = []
    for _ in range(rng.randint(min_len, max_len)):
        vec = [0] * m
        while all(x == 0 for x in vec):
            vec = [rng.randint(-2, 2) for _ in range(m)]
        g = 0
        for x in vec:
            g = gcd(g, abs(x))
        vec = tuple(x // g for x in vec)
        letters.append((vec, rng.choice([-2, -1, 1, 2])))
    return word(surface, letters)


def random_surface_and_planar_word(rng: random.Random, **kwargs):
    surface = new_surface(0, rng.randint(2, 5))
    return surface, random_planar_word(rng, surface, **kwargs)


def seifert_pants_oracle(a1: int, a2: int, a3: int) -> AbelianGroup:
    """H_1 of the Seifert space {0, (o1,0); (a1,-1), (a2,-1), (a3,-1)}.

    Presentation on generators x1, x2, x3, h: each exceptional fiber gives
    a_i x_i - h = 0 and the section gives x1 + x2 + x3 = 0.  Coded from the
    standard Seifert presentation, independent of the open-book route.
    """
    rows = [
        [a1, 0, 0, -1],
        [0, a2, 0, -1],
        [0, 0, a3, -1],
        [1, 1, 1, 0],
    ]
    return cokernel(IntMatrix.from_rows(rows))
