"""Chord rotations on properly coloured 1-path-cycles, and the 2-factor search.

A 1-path-cycle is a vertex-disjoint union of at most one directed path and any
number of cycles, properly coloured as a whole.  Its parameters (x, c_x; y,
c_y) are the path's endpoints together with the colours of the path edges at
those endpoints.  A right chord is an edge yw with c(yw) != c_y (left chords
mirror this at x); rotating along a chord rewires the system while preserving
its vertex set and properness, moving one endpoint to a neighbour of w.

A chord sequence is "spread out" when the original endpoints and all chord
targets are pairwise at distance greater than 5 inside the original system;
this guarantees the rotations never interfere, so independently derived left
and right sequences can be combined.  At small n that spacing is
unsatisfiable, so the searches here also run in a fallback mode that instead
validates every rotation directly against the current system, which is
strictly stronger at runtime.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, replace

from pch.ec_graph import (
    Certificate,
    DirectedCycle,
    DirectedPath,
    is_properly_coloured_cycle,
    is_properly_coloured_path,
    two_factor_certificate,
    verify_certificate,
)

LEFT = "left"
RIGHT = "right"

SPREAD_DISTANCE = 5


@dataclass(frozen=True)
class Params:
    x: int
    c_x: int
    y: int
    c_y: int


@dataclass(frozen=True)
class Chord:
    side: str                 # LEFT or RIGHT
    endpoint: int             # the path endpoint the chord leaves from
    w: int                    # the chord target inside the system
    target: int | None = None # which neighbour of w becomes the new endpoint;
                              # None picks the path-keeping case when both work


@dataclass(frozen=True)
class PathCycleSystem:
    """At most one directed path plus vertex-disjoint cycles."""

    path: DirectedPath | None
    cycles: tuple[DirectedCycle, ...] = ()

    def vertices(self) -> tuple[int, ...]:
        out: list[int] = []
        if self.path is not None:
            out.extend(self.path.vertices)
        for cyc in self.cycles:
            out.extend(cyc.vertices)
        return tuple(out)

    @property
    def order(self) -> int:
        return len(self.vertices())

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices())

    def params(self, g) -> Params:
        if self.path is None:
            raise ValueError("pathless system has no parameters")
        vs = self.path.vertices
        if len(vs) < 2:
            raise ValueError("parameters need a path of order >= 2")
        return Params(vs[0], g.colour(vs[0], vs[1]), vs[-1], g.colour(vs[-1], vs[-2]))


def system_adjacency(sys: PathCycleSystem) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in sys.vertices()}
    if sys.path is not None:
        for a, b in sys.path.edges():
            adj[a].append(b)
            adj[b].append(a)
    for cyc in sys.cycles:
        for a, b in cyc.edges():
            adj[a].append(b)
            adj[b].append(a)
    return adj


def system_distances(sys: PathCycleSystem) -> dict[int, dict[int, int]]:
    """All-pairs hop distances within the system (missing entry = unreachable)."""
    adj = system_adjacency(sys)
    out: dict[int, dict[int, int]] = {}
    for s in adj:
        dist = {s: 0}
        q = deque([s])
        while q:
            v = q.popleft()
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    q.append(u)
        out[s] = dist
    return out


def validate_system(sys: PathCycleSystem, g) -> None:
    """Raise ValueError unless sys is a properly coloured 1-path-cycle in g."""
    vs = sys.vertices()
    if len(set(vs)) != len(vs):
        raise ValueError("system pieces share a vertex")
    for v in vs:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    if sys.path is not None:
        if sys.path.order < 2:
            raise ValueError("system path must have order >= 2")
        if not is_properly_coloured_path(g, sys.path):
            raise ValueError("system path is not properly coloured")
    for cyc in sys.cycles:
        if not is_properly_coloured_cycle(g, cyc):
            raise ValueError("a system cycle is not properly coloured")


def system_certificate(sys: PathCycleSystem) -> Certificate:
    from pch.ec_graph import KIND_PATH_CYCLE_SYSTEM

    return Certificate(
        KIND_PATH_CYCLE_SYSTEM,
        cycles=tuple(c.vertices for c in sys.cycles),
        path=sys.path.vertices if sys.path is not None else None,
    )


# ---------------------------------------------------------------------------
# chords and single rotations
# ---------------------------------------------------------------------------

def find_chords(sys: PathCycleSystem, g, side: str) -> list[Chord]:
    """All chords on the given side: edges from that endpoint whose colour
    differs from the endpoint's parameter colour.  The non-interference
    precondition (w not in {other end} u N(other end)) belongs to rotate.
    """
    p = sys.params(g)
    endpoint, pcol = (p.y, p.c_y) if side == RIGHT else (p.x, p.c_x)
    out = []
    for w in sorted(sys.vertices()):
        if w != endpoint and g.colour(endpoint, w) != pcol:
            out.append(Chord(side, endpoint, w))
    return out


def _rotate_right(sys: PathCycleSystem, g, w: int, check: bool, target: int | None = None) -> PathCycleSystem:
    path = list(sys.path.vertices)
    x, y = path[0], path[-1]
    c_y = g.colour(y, path[-2])
    vset = sys.vertex_set()

    if w == y or w not in vset:
        raise ValueError(f"chord target {w} must lie in the system and differ from the endpoint")
    cyw = g.colour(y, w)
    if cyw == c_y:
        raise ValueError(f"edge ({y}, {w}) has the endpoint colour {c_y}: not a chord")
    if w == x or w == path[1]:
        raise ValueError(f"chord target {w} hits the opposite endpoint or its neighbour")

    pos = {v: i for i, v in enumerate(path)}
    if w in pos:
        j = pos[w]
        # chord into the path; j >= 2 and j <= len-3 hold by the guards above.
        # The new endpoint is a neighbour of w: the far one keeps everything on
        # one path, the near one splits off the tail as a cycle.  Each is
        # achievable iff c(yw) differs from the colour of w's OTHER path edge.
        before, after = path[j - 1], path[j + 1]
        can_after = cyw != g.colour(w, before)
        can_before = cyw != g.colour(w, after)
        want = target if target is not None else (after if can_after else before)
        if want == after and can_after:
            new_path = path[: j + 1] + path[j + 1 :][::-1]
            new_cycles = sys.cycles
        elif want == before and can_before:
            new_cycles = sys.cycles + (DirectedCycle(tuple(path[j:])),)
            new_path = path[:j]
        elif want in (before, after):
            raise ValueError(f"rotation endpoint {want} is blocked by the colour at {w}")
        else:
            raise ValueError(f"rotation target {want} is not a neighbour of {w}")
    else:
        # chord into a cycle: absorb the whole cycle into the path, walking off
        # w in a direction whose first edge colour differs from c(yw)
        idx = next(i for i, c in enumerate(sys.cycles) if w in c.vertices)
        cyc = sys.cycles[idx]
        verts = cyc.vertices
        L = len(verts)
        i = verts.index(w)
        pred, succ = verts[(i - 1) % L], verts[(i + 1) % L]
        can_succ = cyw != g.colour(w, pred)   # walk w, pred, ... ends at succ
        can_pred = cyw != g.colour(w, succ)   # walk w, succ, ... ends at pred
        want = target if target is not None else (succ if can_succ else pred)
        if want == succ and can_succ:
            tail = [verts[(i - t) % L] for t in range(L)]
        elif want == pred and can_pred:
            tail = [verts[(i + t) % L] for t in range(L)]
        elif want in (pred, succ):
            raise ValueError(f"rotation endpoint {want} is blocked by the colour at {w}")
        else:
            raise ValueError(f"rotation target {want} is not a neighbour of {w}")
        new_path = path + tail
        new_cycles = sys.cycles[:idx] + sys.cycles[idx + 1 :]

    out = PathCycleSystem(DirectedPath(tuple(new_path)), new_cycles)
    if check:
        validate_system(out, g)
        assert out.vertex_set() == vset, "rotation changed the vertex set"
    return out


def rotation_targets(sys: PathCycleSystem, g, side: str, w: int) -> list[int]:
    """Achievable new endpoints (neighbours of w) for a chord on this side.

    One or two of w's system neighbours qualify; the one keeping the whole
    path intact comes first, matching the default when no target is given.
    """
    work = sys if side == RIGHT else _mirror(sys)
    path = work.path.vertices
    y = path[-1]
    cyw = g.colour(y, w)
    pos = {v: i for i, v in enumerate(path)}
    out = []
    if w in pos:
        j = pos[w]
        before, after = path[j - 1], path[j + 1]
        if cyw != g.colour(w, before):
            out.append(after)
        if cyw != g.colour(w, after):
            out.append(before)
    else:
        cyc = next(c for c in work.cycles if w in c.vertices)
        pred, succ = cyc.ancestor(w), cyc.successor(w)
        if cyw != g.colour(w, pred):
            out.append(succ)
        if cyw != g.colour(w, succ):
            out.append(pred)
    return out


def _mirror(sys: PathCycleSystem) -> PathCycleSystem:
    return PathCycleSystem(sys.path.reverse() if sys.path else None, sys.cycles)


def rotate(sys: PathCycleSystem, g, chord: Chord, check: bool = True) -> PathCycleSystem:
    """One chord rotation; returns a new properly coloured system on the same vertices."""
    if sys.path is None:
        raise ValueError("cannot rotate a pathless system")
    p = sys.params(g)
    if chord.side == RIGHT:
        if chord.endpoint != p.y:
            raise ValueError(f"right chord endpoint {chord.endpoint} is not the right end {p.y}")
        return _rotate_right(sys, g, chord.w, check, chord.target)
    if chord.side == LEFT:
        if chord.endpoint != p.x:
            raise ValueError(f"left chord endpoint {chord.endpoint} is not the left end {p.x}")
        return _mirror(_rotate_right(_mirror(sys), g, chord.w, check, chord.target))
    raise ValueError(f"unknown chord side {chord.side!r}")


# ---------------------------------------------------------------------------
# chord sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChordSequence:
    chords: tuple[Chord, ...]
    spread_distance: int = SPREAD_DISTANCE


def _chords_of(seq) -> tuple[Chord, ...]:
    if isinstance(seq, ChordSequence):
        return seq.chords
    return tuple(seq)


def is_spread_out(sys: PathCycleSystem, seq, spread_distance: int | None = None) -> bool:
    """Pairwise distances in sys among {x, y, chord targets} all exceed the bound."""
    chords = _chords_of(seq)
    d = spread_distance
    if d is None:
        d = seq.spread_distance if isinstance(seq, ChordSequence) else SPREAD_DISTANCE
    if sys.path is None:
        return False
    pts = [sys.path.first, sys.path.last] + [c.w for c in chords]
    if len(set(pts)) != len(pts):
        return False
    dist = system_distances(sys)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if dist[pts[i]].get(pts[j], None) is not None and dist[pts[i]][pts[j]] <= d:
                return False
    return True


def apply_chord_sequence(
    sys: PathCycleSystem,
    g,
    seq,
    check_guarantees: bool = True,
    check: bool = True,
) -> PathCycleSystem:
    """Iterated rotation.  With a spread-out sequence, also asserts the
    non-interference guarantees: vertex set preserved, new endpoints adjacent
    (in the original system) to {x, y} or some chord target, and all-right
    sequences leaving the left parameters untouched.
    """
    chords = _chords_of(seq)
    orig = sys
    p0 = sys.params(g) if sys.path is not None else None
    cur = sys
    for i, ch in enumerate(chords):
        try:
            cur = rotate(cur, g, ch, check=check)
        except ValueError as exc:
            raise ValueError(f"chord {i} ({ch.side}, {ch.endpoint}->{ch.w}): {exc}") from None

    if check_guarantees and chords and p0 is not None and is_spread_out(orig, chords):
        adj = system_adjacency(orig)
        allowed = {p0.x, p0.y}
        for ch in chords:
            allowed.update(adj[ch.w])
        p = cur.params(g)
        assert cur.vertex_set() == orig.vertex_set()
        assert p.x in allowed and p.y in allowed, "endpoint escaped the guaranteed set"
        assert p.c_x in {g.colour(p.x, u) for u in adj[p.x]}, "left colour not an original system colour"
        assert p.c_y in {g.colour(p.y, u) for u in adj[p.y]}, "right colour not an original system colour"
        if all(ch.side == RIGHT for ch in chords):
            assert p.x == p0.x and p.c_x == p0.c_x, "right rotations moved the left end"
            assert p.y in adj[chords[-1].w]
        if all(ch.side == LEFT for ch in chords):
            assert p.y == p0.y and p.c_y == p0.c_y, "left rotations moved the right end"
            assert p.x in adj[chords[-1].w]
    return cur


def combine_rotation_sequences(
    sys: PathCycleSystem,
    g,
    right_seq,
    left_seq,
    spread_distance: int = SPREAD_DISTANCE,
) -> PathCycleSystem:
    """Apply a right-only then a left-only sequence derived independently from sys.

    Requires the concatenation to be spread out in sys; the spacing guarantees
    that the left chords stay valid after the right rotations, yielding a
    system whose right parameters come from the right sequence and left
    parameters from the left sequence, on the same vertex set.
    """
    right = _chords_of(right_seq)
    left = _chords_of(left_seq)
    if not all(ch.side == RIGHT for ch in right):
        raise ValueError("right_seq must contain only right chords")
    if not all(ch.side == LEFT for ch in left):
        raise ValueError("left_seq must contain only left chords")
    if not is_spread_out(sys, right + left, spread_distance):
        raise ValueError("combined chord sequence is not spread out in the original system")

    # the left-alone endpoint trace; the replay below is steered to follow it,
    # since a chord into the path can legitimately move either way
    probe = sys
    trace: list[int] = []
    for ch in left:
        probe = rotate(probe, g, ch, check=False)
        trace.append(probe.params(g).x)
    left_params = probe.params(g) if left else None

    cur = apply_chord_sequence(sys, g, right, check_guarantees=False)
    right_params = cur.params(g)
    for i, (ch, tgt) in enumerate(zip(left, trace)):
        try:
            cur = rotate(cur, g, replace(ch, target=tgt))
        except ValueError as exc:
            raise ValueError(
                f"left chord {i} invalidated after combination (spread-out precondition broken): {exc}"
            ) from None
    assert cur.vertex_set() == sys.vertex_set()
    final = cur.params(g)
    assert (final.y, final.c_y) == (right_params.y, right_params.c_y)
    if left_params is not None:
        assert (final.x, final.c_x) == (left_params.x, left_params.c_x)
    return cur


# ---------------------------------------------------------------------------
# endpoint-colour expansion (reachable (z, c_z) states by one-sided rotations)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EndpointState:
    vertex: int
    colour: int
    chords: tuple[Chord, ...]
    system: PathCycleSystem


@dataclass(frozen=True)
class TwoColourFind:
    vertex: int
    first: EndpointState
    second: EndpointState
    depth: int


@dataclass
class ExpansionResult:
    found: TwoColourFind | None
    layers: list[dict]          # depth -> {(z, c_z): EndpointState}
    rotations: int

    def layer_sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]


def expand_endpoint_colours(
    sys: PathCycleSystem,
    g,
    side: str,
    forbidden=frozenset(),
    max_depth: int = 3,
    spread_distance: int = SPREAD_DISTANCE,
    require_spread: bool = True,
    max_rotations: int = 200_000,
) -> ExpansionResult:
    """Breadth-first search over endpoint states reachable by one-sided rotations.

    Layer L holds, for each endpoint state (z, c_z) reachable in exactly L
    rotations on the given side, one witness chord sequence (first found wins;
    targets scanned in ascending vertex order for reproducibility).  Chord
    targets and resulting endpoints avoid ``forbidden``.  Stops early when one
    layer holds two states on the same vertex with different colours, the raw
    material for closing a path into a cycle.
    """
    if side == LEFT:
        rev = _mirror(sys)
        res = expand_endpoint_colours(
            rev, g, RIGHT, forbidden, max_depth, spread_distance, require_spread, max_rotations
        )
        return _mirror_expansion(res)

    p0 = sys.params(g)
    forbidden = frozenset(forbidden)
    dist = system_distances(sys) if require_spread else None
    layers: list[dict] = [
        {(p0.y, p0.c_y): EndpointState(p0.y, p0.c_y, (), sys)}
    ]
    rotations = 0

    for depth in range(1, max_depth + 1):
        new: dict[tuple[int, int], EndpointState] = {}
        for key in sorted(layers[-1]):
            st = layers[-1][key]
            cur = st.system
            path = cur.path.vertices
            z = path[-1]
            cz = g.colour(z, path[-2])
            xcur = path[0]
            x_nb = path[1]
            spread_pts = None
            if require_spread:
                spread_pts = [p0.x, p0.y] + [c.w for c in st.chords]
            for w in sorted(cur.vertices()):
                if w == z or w in forbidden:
                    continue
                if g.colour(z, w) == cz:
                    continue
                if w == xcur or w == x_nb:
                    continue
                if require_spread:
                    dw = dist[w]
                    if any(dw.get(p, 10 ** 9) <= spread_distance for p in spread_pts):
                        continue
                # both neighbours of w can be reachable endpoints; take each
                for tgt in rotation_targets(cur, g, RIGHT, w):
                    ch = Chord(RIGHT, z, w, tgt)
                    if rotations >= max_rotations:
                        return ExpansionResult(None, layers, rotations)
                    nxt = rotate(cur, g, ch, check=False)
                    rotations += 1
                    np = nxt.path.vertices
                    nz = np[-1]
                    ncz = g.colour(nz, np[-2])
                    if nz in forbidden:
                        continue
                    if (nz, ncz) not in new:
                        new[(nz, ncz)] = EndpointState(nz, ncz, st.chords + (ch,), nxt)
        layers.append(new)
        by_vertex: dict[int, list[int]] = {}
        for (z, c) in new:
            by_vertex.setdefault(z, []).append(c)
        for z in sorted(by_vertex):
            cols = sorted(by_vertex[z])
            if len(cols) >= 2:
                first = new[(z, cols[0])]
                second = new[(z, cols[1])]
                return ExpansionResult(TwoColourFind(z, first, second, depth), layers, rotations)
        if not new:
            break
    return ExpansionResult(None, layers, rotations)


def _mirror_expansion(res: ExpansionResult) -> ExpansionResult:
    def flip_state(st: EndpointState) -> EndpointState:
        chords = tuple(Chord(LEFT, c.endpoint, c.w, c.target) for c in st.chords)
        return EndpointState(st.vertex, st.colour, chords, _mirror(st.system))

    layers = [
        {key: flip_state(st) for key, st in layer.items()}
        for layer in res.layers
    ]
    found = None
    if res.found is not None:
        found = TwoColourFind(
            res.found.vertex,
            flip_state(res.found.first),
            flip_state(res.found.second),
            res.found.depth,
        )
    return ExpansionResult(found, layers, res.rotations)


# ---------------------------------------------------------------------------
# greedy growth
# ---------------------------------------------------------------------------

def _grow_path(g, rng: random.Random, path: list[int], allowed: set[int]) -> list[int]:
    """Greedily extend a PC path at both ends through `allowed` until stuck."""
    used = set(path)
    cand = sorted(allowed - used)
    while True:
        grew = False
        inner = path[-2] if len(path) >= 2 else None
        opts = [u for u in cand if inner is None or g.colour(path[-1], u) != g.colour(path[-1], inner)]
        if opts:
            nxt = rng.choice(opts)
            path.append(nxt)
            used.add(nxt)
            cand.remove(nxt)
            grew = True
        inner = path[1] if len(path) >= 2 else None
        opts = [u for u in cand if inner is None or g.colour(path[0], u) != g.colour(path[0], inner)]
        if opts:
            nxt = rng.choice(opts)
            path.insert(0, nxt)
            used.add(nxt)
            cand.remove(nxt)
            grew = True
        if not grew:
            return path


def maximal_path_cycle(g, seed: int = 0, restarts: int = 50) -> PathCycleSystem:
    """Longest greedily grown PC path over randomized restarts.

    The result cannot be extended by appending a single vertex at either end
    (local maximality); global maximality is approximated by the restarts.
    """
    if g.n < 2:
        raise ValueError(f"need n >= 2, got {g.n}")
    rng = random.Random(seed)
    everything = set(range(g.n))
    best: list[int] | None = None
    for _ in range(max(1, restarts)):
        path = _grow_path(g, rng, [rng.randrange(g.n)], everything)
        if best is None or len(path) > len(best):
            best = path
        if len(best) == g.n:
            break
    return PathCycleSystem(DirectedPath(tuple(best)), ())


# ---------------------------------------------------------------------------
# the 2-factor search
# ---------------------------------------------------------------------------

@dataclass
class TwoFactorConfig:
    seed: int = 0
    attempts: int = 30              # outer restarts
    greedy_restarts: int = 20       # per attempt, for the initial path
    spread_distance: int = SPREAD_DISTANCE
    use_spread: bool = True
    allow_fallback: bool = True
    max_depth: int = 3
    close_right_cap: int = 16       # fallback: right states to try closing from
    close_left_depth: int = 2
    max_rotations: int = 100_000


@dataclass
class TwoFactorOutcome:
    certificate: Certificate | None
    best_system: PathCycleSystem | None
    stats: dict

    @property
    def success(self) -> bool:
        return self.certificate is not None


def _close_path_into_cycles(sys: PathCycleSystem) -> tuple[DirectedCycle, ...]:
    return sys.cycles + (DirectedCycle(sys.path.vertices),)


def _flatten_states(res: ExpansionResult) -> list[EndpointState]:
    seen = set()
    out = []
    for layer in res.layers:
        for key in sorted(layer):
            if key not in seen:
                seen.add(key)
                out.append(layer[key])
    return out


def _try_close(sys: PathCycleSystem, g, cfg: TwoFactorConfig, stats: dict):
    """Turn the current system into vertex-disjoint PC cycles on the same vertices."""
    if sys.path is None:
        return sys.cycles
    p = sys.params(g)
    order = sys.path.order

    # immediate closure
    if order >= 3 and g.colour(p.x, p.y) not in (p.c_x, p.c_y):
        return _close_path_into_cycles(sys)

    # spread-out mode: independent right and left expansions, then combine.
    # Needs room: any two of {x, y, w} must sit more than spread_distance apart.
    if cfg.use_spread and order >= 2 * cfg.spread_distance + 3:
        res_r = expand_endpoint_colours(
            sys, g, RIGHT, max_depth=cfg.max_depth,
            spread_distance=cfg.spread_distance, require_spread=True,
            max_rotations=cfg.max_rotations,
        )
        stats["rotations"] += res_r.rotations
        stats["spread_layers"] = res_r.layer_sizes()
        if res_r.found is not None:
            f = res_r.found
            dist = system_distances(sys)
            used = {p.x, p.y}
            for st in (f.first, f.second):
                for ch in st.chords:
                    used.add(ch.endpoint)
                    used.add(ch.w)
            avoid = {
                u for u in sys.vertices()
                if any(dist[u].get(v, 10 ** 9) <= cfg.spread_distance for v in used)
            } - {p.x, p.y}
            res_l = expand_endpoint_colours(
                sys, g, LEFT, forbidden=avoid, max_depth=cfg.max_depth,
                spread_distance=cfg.spread_distance, require_spread=True,
                max_rotations=cfg.max_rotations,
            )
            stats["rotations"] += res_l.rotations
            if res_l.found is not None:
                fl = res_l.found
                z = f.vertex
                w = fl.vertex
                czw = g.colour(z, w)
                right_pick = f.first if f.first.colour != czw else f.second
                left_pick = fl.first if fl.first.colour != czw else fl.second
                try:
                    combined = combine_rotation_sequences(
                        sys, g, right_pick.chords, left_pick.chords, cfg.spread_distance
                    )
                    pc = combined.params(g)
                    if pc.x == w and pc.y == z and czw not in (pc.c_x, pc.c_y):
                        stats["closed_via"] = "spread"
                        return _close_path_into_cycles(combined)
                except ValueError:
                    pass

    # fallback mode: everything validated directly against the current system
    if cfg.allow_fallback:
        res_r = expand_endpoint_colours(
            sys, g, RIGHT, max_depth=cfg.max_depth, require_spread=False,
            max_rotations=cfg.max_rotations,
        )
        stats["rotations"] += res_r.rotations
        stats["fallback_layers"] = res_r.layer_sizes()
        for st in _flatten_states(res_r)[: cfg.close_right_cap]:
            sysr = st.system
            pr = sysr.params(g)
            if sysr.path.order >= 3 and g.colour(pr.x, pr.y) not in (pr.c_x, pr.c_y):
                stats["closed_via"] = "fallback"
                return _close_path_into_cycles(sysr)
            res_l = expand_endpoint_colours(
                sysr, g, LEFT, max_depth=cfg.close_left_depth, require_spread=False,
                max_rotations=cfg.max_rotations,
            )
            stats["rotations"] += res_l.rotations
            for stl in _flatten_states(res_l):
                sysl = stl.system
                pl = sysl.params(g)
                if sysl.path.order >= 3 and g.colour(pl.x, pl.y) not in (pl.c_x, pl.c_y):
                    stats["closed_via"] = "fallback"
                    return _close_path_into_cycles(sysl)
    return None


def _reopen(g, cycles: tuple[DirectedCycle, ...], free: set[int], rng: random.Random):
    """Start a new path among uncovered vertices, keeping the closed cycles."""
    start = min(free) if len(free) == 1 else rng.choice(sorted(free))
    path = _grow_path(g, rng, [start], free)
    if len(path) >= 2:
        return PathCycleSystem(DirectedPath(tuple(path)), cycles)
    # a single stranded vertex: splice it onto some cycle as a path head
    v = path[0]
    for idx, cyc in enumerate(cycles):
        verts = cyc.vertices
        L = len(verts)
        for i, u in enumerate(verts):
            cvu = g.colour(v, u)
            if cvu != g.colour(u, verts[(i + 1) % L]):
                tail = [verts[(i - t) % L] for t in range(L)]
            elif cvu != g.colour(u, verts[(i - 1) % L]):
                tail = [verts[(i + t) % L] for t in range(L)]
            else:
                continue
            rest = cycles[:idx] + cycles[idx + 1 :]
            return PathCycleSystem(DirectedPath(tuple([v] + tail)), rest)
    return None


def _extend_free(sys: PathCycleSystem, g, rng: random.Random) -> PathCycleSystem:
    """Greedily append uncovered vertices to the system's path at both ends."""
    if sys.path is None:
        return sys
    free = set(range(g.n)) - sys.vertex_set()
    if not free:
        return sys
    grown = _grow_path(g, rng, list(sys.path.vertices), free | set(sys.path.vertices))
    return PathCycleSystem(DirectedPath(tuple(grown)), sys.cycles)


def find_pc_two_factor(g, config: TwoFactorConfig | None = None) -> TwoFactorOutcome:
    """Search for a properly coloured 2-factor by growth, rotation and closure.

    Grow a maximal PC path, rotate its endpoints until the end colours allow
    closing it (absorbing any disjoint cycles hit along the way), and repeat
    with the leftover vertices until the cycles span.  Failure returns the
    largest system found, never an exception.
    """
    if g.n < 3:
        raise ValueError(f"need n >= 3, got {g.n}")
    cfg = config or TwoFactorConfig()
    rng = random.Random(cfg.seed)
    stats: dict = {"attempts": 0, "rotations": 0}
    best: PathCycleSystem | None = None

    for attempt in range(cfg.attempts):
        stats["attempts"] = attempt + 1
        start_sys = maximal_path_cycle(g, seed=rng.randrange(2 ** 30), restarts=cfg.greedy_restarts)
        sys = start_sys
        for _ in range(g.n + 2):
            sys = _extend_free(sys, g, rng)
            if best is None or sys.order > best.order:
                best = sys
            closed = _try_close(sys, g, cfg, stats)
            if closed is None:
                break
            covered = set()
            for cyc in closed:
                covered.update(cyc.vertices)
            if len(covered) == g.n:
                cert = verify_certificate(g, two_factor_certificate(closed))
                assert cert.valid, cert.reason
                return TwoFactorOutcome(cert, None, stats)
            reopened = _reopen(g, closed, set(range(g.n)) - covered, rng)
            if reopened is None:
                break
            sys = reopened
            if best is None or sys.order > best.order:
                best = sys
    return TwoFactorOutcome(None, best, stats)


# ---------------------------------------------------------------------------
# Hamiltonian path heuristic (2-factor cycles opened and merged by rotations)
# ---------------------------------------------------------------------------

def find_pc_ham_path_heuristic(
    g, seed: int = 0, step_cap: int = 400, cfg: TwoFactorConfig | None = None
) -> DirectedPath | None:
    """Try to build a spanning PC path: find a 2-factor, open one cycle into a
    path, then absorb the remaining cycles by chord rotations.  Returns None
    on failure; any returned path is verified spanning and properly coloured.
    """
    if g.n < 2:
        return None
    if g.n == 2:
        return DirectedPath((0, 1))
    tf_cfg = cfg or TwoFactorConfig(seed=seed)
    out = find_pc_two_factor(g, tf_cfg)
    rng = random.Random(seed + 1)
    candidates: list[PathCycleSystem] = []
    if out.success:
        cycles = [DirectedCycle(tuple(c)) for c in out.certificate.cycles]
        lead = cycles[0]
        rest = tuple(cycles[1:])
        verts = lead.vertices
        for i in range(len(verts)):
            opened = DirectedPath(verts[i:] + verts[:i])
            candidates.append(PathCycleSystem(opened, rest))
    candidates.append(maximal_path_cycle(g, seed=seed, restarts=20))

    for sys in candidates:
        cur = sys
        for _ in range(step_cap):
            if cur.path is not None and cur.path.order == g.n and not cur.cycles:
                path = cur.path
                assert is_properly_coloured_path(g, path)
                return path
            cur = _extend_free(cur, g, rng)
            if cur.path is not None and cur.path.order == g.n and not cur.cycles:
                continue
            moved = _absorb_or_shuffle(cur, g, rng)
            if moved is None:
                break
            cur = moved
    return None


def _absorb_or_shuffle(sys: PathCycleSystem, g, rng: random.Random):
    """Prefer a rotation that absorbs a cycle into the path; otherwise shuffle."""
    if sys.path is None:
        return None
    p = sys.params(g)
    on_cycles = set()
    for cyc in sys.cycles:
        on_cycles.update(cyc.vertices)
    shuffles = []
    for side, endpoint, pcol in ((RIGHT, p.y, p.c_y), (LEFT, p.x, p.c_x)):
        other = p.x if side == RIGHT else p.y
        other_nb = sys.path.vertices[1] if side == RIGHT else sys.path.vertices[-2]
        for w in sorted(sys.vertices()):
            if w in (endpoint, other, other_nb):
                continue
            if g.colour(endpoint, w) == pcol:
                continue
            ch = Chord(side, endpoint, w)
            if w in on_cycles:
                return rotate(sys, g, ch, check=False)
            shuffles.append(ch)
    if not shuffles:
        return None
    return rotate(sys, g, rng.choice(shuffles), check=False)
