"""Shared instance generators for the test suite.

Structure-first randomization: pick the path/cycle decomposition first, colour
its edges properly, then fill the remaining pairs at random.  This yields
valid 1-path-cycles inside otherwise arbitrary colourings.
"""

from __future__ import annotations

import random

from pch.ec_graph import ColouredComplete, DirectedCycle, DirectedPath
from pch.rotations import PathCycleSystem, validate_system


def random_system_instance(rng: random.Random, n_range=(8, 18), k_range=(3, 7)):
    """A random colouring plus a properly coloured 1-path-cycle inside it."""
    n = rng.randint(*n_range)
    k = rng.randint(*k_range)
    verts = list(range(n))
    rng.shuffle(verts)
    m = rng.randint(5, n)
    used = verts[:m]
    p_len = rng.randint(2, m)
    path = used[:p_len]
    rest = used[p_len:]
    cycles = []
    while len(rest) >= 3:
        clen = rng.randint(3, len(rest)) if len(rest) >= 6 else len(rest)
        if len(rest) - clen in (1, 2):
            clen = len(rest)
        cycles.append(rest[:clen])
        rest = rest[clen:]

    tab: dict[tuple[int, int], int] = {}

    def setc(a, b, c):
        tab[(min(a, b), max(a, b))] = c

    def getc(a, b):
        return tab.get((min(a, b), max(a, b)))

    for piece, is_cycle in [(path, False)] + [(c, True) for c in cycles]:
        prev = None
        for i in range(len(piece) - 1):
            c = rng.choice([c for c in range(k) if c != prev])
            setc(piece[i], piece[i + 1], c)
            prev = c
        if is_cycle:
            first = getc(piece[0], piece[1])
            setc(piece[-1], piece[0], rng.choice([c for c in range(k) if c != prev and c != first]))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in tab:
                tab[(u, v)] = rng.randrange(k)

    g = ColouredComplete.from_function(n, k, lambda u, v: tab[(u, v)])
    sys = PathCycleSystem(
        DirectedPath(tuple(path)),
        tuple(DirectedCycle(tuple(c)) for c in cycles),
    )
    validate_system(sys, g)
    return g, sys
