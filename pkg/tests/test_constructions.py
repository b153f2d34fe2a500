import itertools
import random

import pytest

from pch.constructions import (
    GenerationError,
    OrientedGraph,
    bollobas_erdos,
    colouring_from_oriented,
    layered_colouring,
    monochromatic,
    properly_coloured_cycle_set,
    rainbow,
    random_bounded_colouring,
    random_oriented,
    tournament_with_source,
)
from pch.ec_graph import max_mono_degree, min_colour_degree
from pch.exact import exact_pc_ham_cycle


def test_bollobas_erdos_k1_shape():
    g = bollobas_erdos(1)
    assert g.n == 5 and g.k == 2
    # colour-0 edges form the 2-regular nearest-neighbour circulant: a 5-cycle
    red = sorted(
        (u, v) for u in range(5) for v in range(u + 1, 5) if g.colour(u, v) == 0
    )
    assert red == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert max_mono_degree(g) == 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bollobas_erdos_regularity(k):
    g = bollobas_erdos(k)
    n = 4 * k + 1
    assert g.n == n
    for v in range(n):
        per_colour = [0, 0]
        for u in range(n):
            if u != v:
                per_colour[g.colour(u, v)] += 1
        assert per_colour == [2 * k, 2 * k]
    assert max_mono_degree(g) == 2 * k == n // 2


def test_bollobas_erdos_no_pc_ham_cycle_small():
    assert not exact_pc_ham_cycle(bollobas_erdos(1)).exists


def test_tournament_with_source_shape():
    og = tournament_with_source(2)
    assert og.n == 4
    assert og.in_degree(3) == 0 and og.out_degree(3) == 3
    assert og.max_in_degree() == 2
    # no directed Hamiltonian cycle: every vertex order through the source dies
    for order in itertools.permutations([0, 1, 2]):
        cyc = (3,) + order
        arcs_ok = all(og.has_arc(cyc[i], cyc[(i + 1) % 4]) for i in range(4))
        assert not arcs_ok
    assert all(len(c) < 4 for c in og.directed_cycles())


def test_tournament_with_source_rejects_small_m():
    with pytest.raises(ValueError):
        tournament_with_source(1)


def test_tournament_colouring_degrees():
    og = tournament_with_source(3)
    g = colouring_from_oriented(og, complete_with="extra")
    assert g.n == 6
    assert min_colour_degree(g) == 3
    assert max_mono_degree(g) == 3


def test_tournament_colouring_no_pc_ham_cycle():
    g = colouring_from_oriented(tournament_with_source(2), complete_with="extra")
    assert max_mono_degree(g) == 2
    assert not exact_pc_ham_cycle(g).exists


def test_from_oriented_triangle():
    og = OrientedGraph(3, frozenset({(0, 1), (1, 2), (2, 0)}))
    cg = colouring_from_oriented(og)
    assert properly_coloured_cycle_set(cg) == {(0, 1, 2)}
    # colours along the directed triangle are the head colours
    assert cg.colour(0, 1) == 1 and cg.colour(1, 2) == 2 and cg.colour(0, 2) == 0


def test_from_oriented_single_arc_degrees():
    og = OrientedGraph(2, frozenset({(0, 1)}))
    cg = colouring_from_oriented(og)
    assert cg.edge_count() == 1 and cg.colour(0, 1) == 1
    g = colouring_from_oriented(og, complete_with="extra")
    assert max_mono_degree(g) == 1
    # both endpoints of the single arc see exactly one colour from it
    assert min_colour_degree(g) == 1


def test_from_oriented_guarantees_on_random_digraphs():
    for seed in range(30):
        rng = random.Random(seed)
        n = rng.randint(3, 7)
        og = random_oriented(n, 0.7, seed)
        cg = colouring_from_oriented(og)
        assert properly_coloured_cycle_set(cg) == og.directed_cycles()
        if og.arcs:
            assert max(
                max(hist.values()) if (hist := _in_colour_hist(cg, v)) else 0
                for v in range(n)
            ) == og.max_in_degree()


def _in_colour_hist(cg, v):
    hist = {}
    for u, w, c in cg.edges():
        if v in (u, w):
            hist[c] = hist.get(c, 0) + 1
    return hist


def test_completion_policies():
    og = OrientedGraph(4, frozenset({(0, 1), (2, 3)}))
    extra = colouring_from_oriented(og, complete_with="extra")
    assert extra.n == 4
    assert extra.colour(0, 1) == 1 and extra.colour(2, 3) == 3
    assert extra.colour(0, 2) == extra.colour(1, 3) == 4
    rain = colouring_from_oriented(og, complete_with="rainbow")
    fresh = [rain.colour(0, 2), rain.colour(0, 3), rain.colour(1, 2), rain.colour(1, 3)]
    assert len(set(fresh)) == 4 and all(c >= 4 for c in fresh)
    with pytest.raises(ValueError):
        colouring_from_oriented(og, complete_with="bogus")


def test_layered_parameters():
    g = layered_colouring(10, 3)
    assert max_mono_degree(g) == 7
    assert min_colour_degree(g) == 3
    # rule checks: hub i colours all its Y edges i+1, Y-Y edges are colour 1,
    # and the hub clique is rainbow in colours above l
    for i in range(3):
        assert {g.colour(i, y) for y in range(3, 10)} == {i + 1}
    assert {g.colour(a, b) for a in range(3, 10) for b in range(a + 1, 10)} == {1}
    hub = [g.colour(a, b) for a in range(3) for b in range(a + 1, 3)]
    assert len(set(hub)) == len(hub) and all(c > 3 for c in hub)


def test_layered_domain():
    with pytest.raises(ValueError):
        layered_colouring(10, 6)
    with pytest.raises(ValueError):
        layered_colouring(10, 0)


def test_random_bounded_respects_cap_and_seed():
    g1 = random_bounded_colouring(10, 4, seed=7)
    g2 = random_bounded_colouring(10, 4, seed=7)
    assert g1 == g2
    assert max_mono_degree(g1) <= 4
    g3 = random_bounded_colouring(10, 4, seed=8)
    assert g3 != g1  # overwhelmingly likely under any seeding scheme


def test_random_bounded_loose_cap_and_small_palette():
    g = random_bounded_colouring(10, 9, seed=0, colours=1)
    assert max_mono_degree(g) == 9  # monochromatic allowed when the cap is n-1
    for seed in range(5):
        g = random_bounded_colouring(12, 4, seed, colours=4)
        assert max_mono_degree(g) <= 4


def test_random_bounded_infeasible():
    with pytest.raises(GenerationError):
        random_bounded_colouring(10, 1, seed=0, colours=2)


def test_random_bounded_domain_errors():
    with pytest.raises(ValueError):
        random_bounded_colouring(2, 1, seed=0)
    with pytest.raises(ValueError):
        random_bounded_colouring(10, 0, seed=0)


def test_oriented_graph_rejects_antiparallel_arcs():
    with pytest.raises(ValueError):
        OrientedGraph(3, frozenset({(0, 1), (1, 0)}))


def test_rainbow_and_monochromatic_extremes():
    assert max_mono_degree(rainbow(6)) == 1
    assert min_colour_degree(rainbow(6)) == 5
    assert max_mono_degree(monochromatic(6)) == 5
    assert min_colour_degree(monochromatic(6)) == 1


def test_random_bounded_many_seeds_at_scale():
    # the instance family used by the absorbing-count bound checks
    for seed in range(30):
        g = random_bounded_colouring(50, 20, seed)
        assert max_mono_degree(g) <= 20
