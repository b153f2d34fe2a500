"""Generators for extremal and random edge-colourings.

The extremal families here are tight for the half-degree threshold: they have
max monochromatic degree about n/2 yet admit no properly coloured Hamiltonian
cycle (and, for the layered family, no long PC path or cycle at all).  The
random generator produces colourings with a prescribed bound on the
monochromatic degree, for stress-testing the solvers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from pch.ec_graph import ColouredComplete, ColouredGraph, is_properly_coloured_cycle


class GenerationError(RuntimeError):
    """Randomized generation failed within its retry budget (not a usage error)."""


# ---------------------------------------------------------------------------
# oriented graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrientedGraph:
    """Digraph with at most one arc per vertex pair and no loops."""

    n: int
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) outside 0..{self.n - 1}")
            if (v, u) in arcs:
                raise ValueError(f"both orientations of {{{u}, {v}}} present")

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_degree(self, v: int) -> int:
        return sum(1 for a in self.arcs if a[0] == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for a in self.arcs if a[1] == v)

    def max_in_degree(self) -> int:
        return max((self.in_degree(v) for v in range(self.n)), default=0)

    def is_tournament(self) -> bool:
        return len(self.arcs) == self.n * (self.n - 1) // 2

    def out_neighbours(self, v: int) -> list[int]:
        return sorted(w for (u, w) in self.arcs if u == v)

    def directed_cycles(self) -> set[tuple[int, ...]]:
        """All directed simple cycles, in undirected canonical form.

        Antisymmetry means at most one traversal direction of a cycle subgraph
        can be a directed cycle, so the canonical form loses nothing.
        """
        succ = {v: self.out_neighbours(v) for v in range(self.n)}
        found: set[tuple[int, ...]] = set()

        def walk(start: int, path: list[int], on_path: set[int]):
            for w in succ[path[-1]]:
                if w == start and len(path) >= 3:
                    found.add(_undirected_canonical(tuple(path)))
                elif w > start and w not in on_path:
                    on_path.add(w)
                    path.append(w)
                    walk(start, path, on_path)
                    path.pop()
                    on_path.remove(w)

        for s in range(self.n):
            walk(s, [s], {s})
        return found


def _undirected_canonical(cycle: tuple[int, ...]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    if rot[1] > rot[-1]:
        rot = (rot[0],) + rot[1:][::-1]
    return rot


def random_oriented(n: int, arc_prob: float, seed: int) -> OrientedGraph:
    """Each unordered pair independently carries an arc with the given probability."""
    rng = random.Random(seed)
    arcs = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < arc_prob:
                arcs.add((u, v) if rng.random() < 0.5 else (v, u))
    return OrientedGraph(n, frozenset(arcs))


def random_tournament(n: int, seed: int) -> OrientedGraph:
    return random_oriented(n, 1.1, seed)


# ---------------------------------------------------------------------------
# extremal families
# ---------------------------------------------------------------------------

def monochromatic(n: int, colour: int = 0, k: int | None = None) -> ColouredComplete:
    """All edges the same colour."""
    kk = k if k is not None else colour + 1
    return ColouredComplete.from_function(n, kk, lambda u, v: colour)


def rainbow(n: int) -> ColouredComplete:
    """All edges distinctly coloured."""
    k = max(1, n * (n - 1) // 2)
    counter = iter(range(k))
    return ColouredComplete.from_function(n, k, lambda u, v: next(counter))


def bollobas_erdos(k: int) -> ColouredComplete:
    """Two-colouring of K_{4k+1}: a 2k-regular circulant red, its complement blue.

    Max monochromatic degree is 2k = floor(n/2), one above the conjectured
    threshold, and there is no PC Hamiltonian cycle: with two colours a PC
    cycle must alternate, but an odd cycle cannot be 2-edge-coloured properly.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    n = 4 * k + 1

    def col(u: int, v: int) -> int:
        d = abs(u - v)
        d = min(d, n - d)
        return 0 if d <= k else 1

    return ColouredComplete.from_function(n, 2, col)


def colouring_from_oriented(og: OrientedGraph, complete_with: str | None = None):
    """Colour each arc u->v with a per-vertex colour of the head v.

    Without completion the result is a ``ColouredGraph`` on exactly the arc
    pairs: its PC cycles are precisely the directed cycles of ``og``, its max
    monochromatic degree is the max in-degree, and each vertex sees
    ``d_out(v) + min(1, d_in(v))`` colours.

    ``complete_with`` fills the remaining pairs so that a ``ColouredComplete``
    results: ``"rainbow"`` uses a fresh colour per missing pair,
    ``"extra"`` a single fresh colour for all of them.
    """
    n = og.n
    colours = {(min(u, v), max(u, v)): v for (u, v) in og.arcs}
    if complete_with is None:
        return ColouredGraph(n, max(n, 1), colours)
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in colours]
    if complete_with == "extra":
        k = n + 1
        for pair in missing:
            colours[pair] = n
    elif complete_with == "rainbow":
        k = n + max(1, len(missing))
        for i, pair in enumerate(missing):
            colours[pair] = n + i
    else:
        raise ValueError(f"unknown completion policy {complete_with!r}")
    return ColouredComplete.from_function(n, max(k, n, 1), lambda u, v: colours[(u, v)])


def tournament_with_source(m: int) -> OrientedGraph:
    """Regular tournament on 2m-1 vertices plus a source beating everyone.

    The source has in-degree 0, so no directed Hamiltonian cycle exists, while
    the max in-degree is m.  Feeding this to ``colouring_from_oriented`` gives
    a K_{2m} with max monochromatic degree m = n/2 and no PC Hamiltonian cycle.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    base = 2 * m - 1
    arcs = set()
    for i in range(base):
        for j in range(1, m):
            arcs.add((i, (i + j) % base))
    source = base
    for y in range(base):
        arcs.add((source, y))
    return OrientedGraph(2 * m, frozenset(arcs))


def layered_colouring(n: int, l: int) -> ColouredComplete:
    """Colouring with a small hub set X (|X| = l) that bounds all PC paths and cycles.

    Vertices 0..l-1 form X, the rest Y.  All edges from the i-th hub to Y get
    colour i+1 (ids 1..l as in the construction), all Y-Y edges colour 1, and
    X is internally rainbow in fresh colours above l.  Consequently every PC
    cycle is shorter than 2l and every PC path has length (edge count) below
    2l+1, while the max monochromatic degree is n-l and the min colour degree
    is l.
    """
    if not (1 <= l and 2 * l <= n):
        raise ValueError(f"need 1 <= l <= n/2, got l={l}, n={n}")
    k = l + l * (l - 1) // 2 + 1
    fresh = {}
    nxt = l + 1
    for i in range(l):
        for j in range(i + 1, l):
            fresh[(i, j)] = nxt
            nxt += 1

    def col(u: int, v: int) -> int:
        if v < l:  # both in X (u < v)
            return fresh[(u, v)]
        if u < l:  # X-Y edge from hub u
            return u + 1
        return 1  # Y-Y

    return ColouredComplete.from_function(n, k, col)


# ---------------------------------------------------------------------------
# random colourings with bounded monochromatic degree
# ---------------------------------------------------------------------------

def random_bounded_colouring(
    n: int,
    dmax: int,
    seed: int,
    colours: int | None = None,
    restarts: int = 100,
) -> ColouredComplete:
    """Random colouring with max monochromatic degree at most dmax.

    Pairs are coloured in random order; each pair draws uniformly among the
    colours still under the per-vertex cap at both endpoints, restarting on a
    dead end.  Deterministic for a fixed seed.  The palette defaults to n
    colours, which keeps outputs generic; pass a small ``colours`` to make the
    cap bind hard.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if dmax < 1:
        raise ValueError(f"need dmax >= 1, got {dmax}")
    k = colours if colours is not None else n
    if k < 1:
        raise ValueError(f"need colours >= 1, got {k}")
    if dmax * k < n - 1:
        raise GenerationError(
            f"infeasible: dmax * colours = {dmax * k} < n - 1 = {n - 1} edges per vertex"
        )

    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(restarts):
        counts = [[0] * k for _ in range(n)]
        tab: dict[tuple[int, int], int] = {}
        rng.shuffle(pairs)
        stuck = False
        for u, v in pairs:
            cu, cv = counts[u], counts[v]
            allowed = [c for c in range(k) if cu[c] < dmax and cv[c] < dmax]
            if not allowed:
                stuck = True
                break
            c = rng.choice(allowed)
            tab[(u, v)] = c
            cu[c] += 1
            cv[c] += 1
        if not stuck:
            return ColouredComplete.from_function(n, k, lambda u, v: tab[(u, v)])
    raise GenerationError(f"no colouring with dmax={dmax}, colours={k} found in {restarts} restarts")


def random_colouring(n: int, k: int, seed: int) -> ColouredComplete:
    """Uniform random k-colouring (no degree constraint)."""
    rng = random.Random(seed)
    return ColouredComplete.from_function(n, k, lambda u, v: rng.randrange(k))


# ---------------------------------------------------------------------------
# cycle-set cross checks
# ---------------------------------------------------------------------------

def properly_coloured_cycle_set(cg) -> set[tuple[int, ...]]:
    """All PC cycles of a (possibly partial) coloured graph, canonical form.

    Exhaustive; intended for small n cross-checks against directed cycle sets.
    """
    n = cg.n
    adj = [[v for v in range(n) if v != u and cg.has_edge(u, v)] for u in range(n)]
    found: set[tuple[int, ...]] = set()

    def walk(start: int, path: list[int], on_path: set[int]):
        last = path[-1]
        for w in adj[last]:
            if w == start and len(path) >= 3:
                if path[1] < path[-1] and is_properly_coloured_cycle(cg, path):
                    found.add(_undirected_canonical(tuple(path)))
            elif w > start and w not in on_path:
                on_path.add(w)
                path.append(w)
                walk(start, path, on_path)
                path.pop()
                on_path.remove(w)

    for s in range(n):
        walk(s, [s], {s})
    return found
