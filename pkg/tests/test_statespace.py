import random

import pytest

import colocal as cl


# -- locales ------------------------------------------------------------

def test_build_locale_minimal():
    loc = cl.build_locale([0, 1], [(0, 1), (1, 0)])
    assert loc.sites == (0, 1)
    assert len(loc.edges) == 2


def test_z1_window_has_8_directed_edges():
    loc = cl.lattice_window(1, radius=2)
    assert loc.sites == (-2, -1, 0, 1, 2)
    assert len(loc.edges) == 8


def test_missing_reverse_edge():
    with pytest.raises(cl.NotSymmetric):
        cl.build_locale([0, 1], [(0, 1)])


def test_self_loop_and_duplicate():
    with pytest.raises(cl.NotSimple):
        cl.build_locale([0, 1], [(0, 0), (0, 1), (1, 0)])
    with pytest.raises(cl.NotSimple):
        cl.build_locale([0, 1], [(0, 1), (0, 1), (1, 0)])


def test_disconnected():
    with pytest.raises(cl.NotConnected):
        cl.build_locale([0, 1, 2, 3], [(0, 1), (1, 0), (2, 3), (3, 2)])


def test_lattice_window_counts():
    w1 = cl.lattice_window(1, radius=1)
    assert len(w1.sites) == 3 and len(w1.edges) == 4
    w2 = cl.lattice_window(2, radius=1)
    assert len(w2.sites) == 9 and len(w2.edges) == 24


def test_torus_too_small():
    with pytest.raises(cl.SizeTooSmall):
        cl.lattice_window(1, sizes=(2,))


def test_torus_ring():
    ring = cl.lattice_window(1, sizes=(3,))
    assert len(ring.sites) == 3 and len(ring.edges) == 6


def test_window_ids_follow_lex_coordinate_order():
    w2 = cl.lattice_window(2, radius=1)
    coords = [w2.coord_of(s) for s in w2.sites]
    assert coords == sorted(coords)
    assert w2.site_at((0, 0)) in w2.sites
    assert w2.site_at((2, 0)) is None


# -- interactions --------------------------------------------------------

def test_validate_exclusion_and_identity(exclusion):
    assert cl.validate_interaction(exclusion).ok
    assert cl.validate_interaction(cl.identity_interaction(3)).ok


def test_validate_interaction_violation():
    bad = cl.make_interaction((0, 1), 0, {(0, 1): (1, 1), (1, 1): (1, 1)})
    report = cl.validate_interaction(bad)
    assert not report.ok
    assert ((0, 1), (1, 1)) in report.violations


# -- configuration spaces -------------------------------------------------

def test_enumerate_binary_pair(exclusion):
    space = cl.enumerate_configs(cl.siteset([0, 1]), exclusion)
    assert space.size == 4
    for idx in range(4):
        a = space.decode(idx)
        assert idx == a[0] + 2 * a[1]


def test_enumerate_three_states():
    space = cl.enumerate_configs(cl.siteset([0]), cl.identity_interaction(3))
    assert space.size == 3


def test_enumerate_cap(exclusion):
    with pytest.raises(cl.SpaceTooLarge):
        cl.enumerate_configs(cl.siteset(range(30)), exclusion)


def test_mixed_radix_roundtrip(exclusion):
    space = cl.enumerate_configs(cl.siteset(range(10)), exclusion)
    for idx in range(space.size):
        assert space.encode(space.decode(idx)) == idx
    rng = random.Random(7)
    tri = cl.ConfigSpace(cl.siteset(range(6)), 3)
    for _ in range(100):
        a = tuple(rng.randrange(3) for _ in range(6))
        assert tri.decode(tri.encode(a)) == a


# -- transitions -----------------------------------------------------------

def test_apply_transition_swap(exclusion):
    eta = cl.Config(cl.siteset([0, 1]), (1, 0))
    assert cl.apply_transition(eta, (0, 1), exclusion).assignment == (0, 1)
    fixed = cl.Config(cl.siteset([0, 1]), (1, 1))
    assert cl.apply_transition(fixed, (0, 1), exclusion).assignment == (1, 1)


def test_apply_transition_three_state_rule():
    inter = cl.make_interaction((0, 1, 2), 0, {(1, 2): (0, 0)})
    eta = cl.Config(cl.siteset([0, 1, 2]), (1, 2, 2))
    out = cl.apply_transition(eta, (0, 1), inter)
    assert out.assignment == (0, 0, 2)


def test_apply_transition_outside(exclusion):
    eta = cl.Config(cl.siteset([0, 1]), (1, 0))
    with pytest.raises(cl.EdgeOutsideSiteSet):
        cl.apply_transition(eta, (0, 5), exclusion)


def test_transition_graph_single_edge(exclusion, single_edge):
    graph = cl.transition_graph(cl.siteset([0, 1]), exclusion, single_edge)
    assert len(graph.records) == 4          # one per (config, edge)
    assert graph.pairs == ((1, 2), (2, 1))  # (1,0) <-> (0,1)
    assert graph.n_components == 3


def test_transition_graph_identity_empty(single_edge):
    graph = cl.transition_graph(cl.siteset([0, 1]),
                                cl.identity_interaction(2), single_edge)
    assert graph.records == ()
    assert graph.n_components == 4


def test_transition_graph_path3_components(exclusion, path3):
    graph = cl.transition_graph(cl.siteset(path3.sites), exclusion, path3)
    # one component per particle count 0..3
    assert graph.n_components == 4


def test_transition_symmetry(exclusion, path3):
    sites = cl.siteset(path3.sites)
    graph = cl.transition_graph(sites, exclusion, path3)
    pair_set = set(graph.pairs)
    for src, e, dst in graph.records:
        assert (dst, src) in pair_set
        eta = graph.space.config(dst)
        back = cl.apply_transition(eta, (e[1], e[0]), exclusion)
        assert graph.space.encode(back.assignment) == src


def test_transition_symmetry_three_state(path3):
    inter = cl.make_interaction((0, 1, 2), 0,
                                {(1, 2): (2, 1), (2, 1): (1, 2)})
    sites = cl.siteset(path3.sites)
    graph = cl.transition_graph(sites, inter, path3)
    for src, e, dst in graph.records:
        eta = graph.space.config(dst)
        back = cl.apply_transition(eta, (e[1], e[0]), inter)
        assert graph.space.encode(back.assignment) == src


# -- group actions ----------------------------------------------------------

def test_group_act_shift():
    w = cl.lattice_window(1, radius=2)
    sigma = cl.translation_map(w, (1,))
    f = cl.site_occupation(cl.siteset([0]), 2, 0)
    moved = cl.group_act(sigma, f)
    assert moved.sites.sites == (1,)
    assert moved.values == f.values


def test_group_act_identity():
    w = cl.lattice_window(1, radius=2)
    ident = cl.identity_map(w)
    f = cl.site_occupation(cl.siteset([0, 1]), 2, 0)
    assert cl.group_act(ident, f).equals(f)


def test_group_act_leaves_window():
    w = cl.lattice_window(1, radius=2)
    sigma = cl.translation_map(w, (2,))
    f = cl.site_occupation(cl.siteset([1, 2]), 2, 1)
    with pytest.raises(cl.ActionLeavesWindow):
        cl.group_act(sigma, f)


def test_group_act_right_inverse(exclusion):
    rng = random.Random(11)
    w = cl.lattice_window(1, radius=3)
    sigma = cl.translation_map(w, (1,))
    inv = sigma.inverse()
    sites = cl.siteset([-1, 0, 1])
    from conftest import rand_table
    f = rand_table(rng, sites)
    assert cl.group_act(inv, cl.group_act(sigma, f)).equals(f)
    eta = cl.Config(sites, (1, 0, 1))
    assert cl.group_act(inv, cl.group_act(sigma, eta)) == eta
    form = cl.differential(f, exclusion, w)
    back = cl.group_act(inv, cl.group_act(sigma, form))
    for e in form.edges:
        assert back.tables[e].minimized().equals(form.tables[e].minimized())


def test_transition_commutes_with_action(exclusion):
    w = cl.lattice_window(1, radius=3)
    sigma = cl.translation_map(w, (1,))
    eta = cl.Config(cl.siteset([0, 1]), (1, 0))
    moved_edge = (sigma.apply(0), sigma.apply(1))
    lhs = cl.group_act(sigma, cl.apply_transition(eta, (0, 1), exclusion))
    rhs = cl.apply_transition(cl.group_act(sigma, eta), moved_edge, exclusion)
    assert lhs == rhs


# -- diameters --------------------------------------------------------------

def test_site_diameter_examples():
    w1 = cl.lattice_window(1, radius=2)
    assert cl.site_diameter(cl.siteset([0]), w1) == 0
    assert cl.site_diameter(cl.siteset([-1, 1]), w1) == 2
    w2 = cl.lattice_window(2, radius=1)
    pair = cl.siteset([w2.site_at((0, 0)), w2.site_at((1, 1))])
    assert cl.site_diameter(pair, w2) == 2
    with pytest.raises(cl.EmptySet):
        cl.site_diameter(cl.siteset([]), w1)
