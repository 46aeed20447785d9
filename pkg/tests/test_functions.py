import random
from fractions import Fraction as F

import pytest

import colocal as cl
from conftest import rand_table


# -- restriction by base extension ------------------------------------------

def test_iota_restrict_kills_offwindow_factor(exclusion):
    sites = cl.siteset([0, 1])
    fxy = cl.site_occupation(sites, 2, 0) * cl.site_occupation(sites, 2, 1)
    out = cl.iota_restrict(fxy, cl.siteset([0]), exclusion)
    assert out.values == (F(0), F(0))


def test_iota_restrict_identity_and_constant(exclusion):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0)
    assert cl.iota_restrict(f, sites, exclusion) is f
    c = cl.fn_constant(sites, 2, F(7, 3))
    assert cl.iota_restrict(c, cl.siteset([1]), exclusion).values == (F(7, 3),) * 2


# -- chains -------------------------------------------------------------------

def test_build_chain_local_function(mu_half):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0)
    chain = cl.build_chain(f, [cl.siteset([0]), sites], mu_half)
    assert chain.tables[0].values == (F(0), F(1))
    assert chain.verify_compatibility()


def test_build_chain_worked_example(mu_half):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0) * cl.site_occupation(sites, 2, 1)
    chain = cl.build_chain(f, [cl.siteset([0]), sites], mu_half)
    assert chain.tables[0].values == (F(0), F(1, 2))
    assert chain.tables[1] is f


def test_build_chain_constant(mu_half):
    sites = cl.siteset([0, 1, 2])
    c = cl.fn_constant(sites, 2, F(1))
    chain = cl.build_chain(c, [cl.siteset([]), cl.siteset([1]), sites], mu_half)
    assert all(set(t.values) == {F(1)} for t in chain.tables)


def test_chain_compatibility_random(mu_half):
    rng = random.Random(31)
    windows = [cl.siteset([1]), cl.siteset([0, 1]), cl.siteset([0, 1, 2])]
    for _ in range(10):
        f = rand_table(rng, windows[-1])
        assert cl.build_chain(f, windows, mu_half).verify_compatibility()


# -- expansion ----------------------------------------------------------------

def test_expansion_worked_example(half):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0) * cl.site_occupation(sites, 2, 1)
    expansion = cl.expand_martingale(f, half)
    assert expansion.component(()).values == (F(1, 4),)
    assert expansion.component((0,)).values == (F(-1, 4), F(1, 4))
    assert expansion.component((1,)).values == (F(-1, 4), F(1, 4))
    # (eta_x - 1/2)(eta_y - 1/2), index order (00, 10, 01, 11)
    assert expansion.component((0, 1)).values == (F(1, 4), F(-1, 4),
                                                  F(-1, 4), F(1, 4))
    # the pair component is killed by the projection onto either singleton
    mu = cl.ProductMeasure(half)
    assert cl.conditional_expectation(expansion.component((0, 1)),
                                      cl.siteset([0]), mu).is_zero()


def test_expansion_of_conserved_sum_is_singletons(exclusion, half):
    xi = cl.conserved_quantities(exclusion, half)[0]
    sites = cl.siteset([0, 1, 2])
    f = cl.conserved_colocal(xi, sites)
    expansion = cl.expand_martingale(f, half)
    for sub, table in expansion.components.items():
        if len(sub) == 1:
            assert table.values == xi.xi
        else:
            assert table.is_zero()


def test_expansion_of_constant(half):
    sites = cl.siteset([0, 1])
    c = cl.fn_constant(sites, 2, F(5, 7))
    expansion = cl.expand_martingale(c, half)
    assert expansion.component(()).values == (F(5, 7),)
    assert all(t.is_zero() for sub, t in expansion.components.items() if sub)


def test_expansion_reconstruction_and_orthogonality(half):
    rng = random.Random(37)
    mu = cl.ProductMeasure(half)
    base = [0, 1, 2, 3]
    for trial in range(25):
        k = 1 + trial % 4
        sites = cl.siteset(base[:k])
        f = rand_table(rng, sites)
        expansion = cl.expand_martingale(f, half)
        assert expansion.reconstruct().equals(f)
        for target in expansion.components:
            for sub, table in expansion.components.items():
                if set(sub) <= set(target):
                    continue
                projected = cl.conditional_expectation(
                    table.embed(sites), cl.siteset(target), mu)
                assert projected.is_zero()


def test_expansion_uniqueness_perturbation(half):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0) * cl.site_occupation(sites, 2, 1)
    expansion = cl.expand_martingale(f, half)
    mu = cl.ProductMeasure(half)
    bump = cl.fn_constant(cl.siteset([0]), 2, F(0)).shift(F(1, 3))
    perturbed = expansion.component((0,)) + bump
    # either the sum no longer reconstructs f, or a projection no longer kills
    total = cl.fn_constant(sites, 2, F(0))
    for sub, table in expansion.components.items():
        table = perturbed if sub == (0,) else table
        total = total + table.embed(sites)
    still_sums = total.equals(f)
    still_killed = cl.conditional_expectation(
        perturbed.embed(sites), cl.siteset([]), mu).is_zero()
    assert not (still_sums and still_killed)


def test_expansion_rejects_window_measure(exclusion, half):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0)
    win = cl.ProductMeasure(half).materialize(sites)
    with pytest.raises(cl.NonProductMeasure):
        cl.expand_martingale(f, win)


def test_expansion_subset_cap(half):
    sites = cl.siteset(range(5))
    f = cl.fn_constant(sites, 2, F(1))
    with pytest.raises(cl.TooManySubsets):
        cl.expand_martingale(f, half, subset_cap=4)


# -- uniform radius -------------------------------------------------------------

def test_uniform_radius_examples(exclusion, half):
    w = cl.lattice_window(1, radius=2)
    xi = cl.conserved_quantities(exclusion, half)[0]
    sites = cl.siteset([-1, 0, 1])
    assert cl.uniform_radius(cl.expand_martingale(
        cl.conserved_colocal(xi, sites), half), w) == 0
    pair = cl.siteset([0, 1])
    fxy = cl.site_occupation(pair, 2, 0) * cl.site_occupation(pair, 2, 1)
    assert cl.uniform_radius(cl.expand_martingale(fxy, half), w) == 1
    c = cl.fn_constant(pair, 2, F(2))
    assert cl.uniform_radius(cl.expand_martingale(c, half), w) == 0


# -- conserved quantities ---------------------------------------------------------

def test_conserved_exclusion(exclusion, half):
    basis = cl.conserved_quantities(exclusion, half)
    assert len(basis) == 1
    xi = basis[0]
    assert xi.xi == (F(-1, 2), F(1, 2))
    assert xi.xi[1] - xi.xi[0] == 1
    assert half.mean(xi.xi) == 0


def test_conserved_killed_by_extra_rule(half):
    inter = cl.make_interaction((0, 1), 0,
                                {(0, 1): (1, 0), (1, 0): (0, 1), (1, 1): (0, 0)})
    assert cl.conserved_quantities(inter, half) == []


def test_conserved_identity_three_states():
    nu = cl.uniform_states(3)
    basis = cl.conserved_quantities(cl.identity_interaction(3), nu)
    assert len(basis) == 2
    for xi in basis:
        assert nu.mean(xi.xi) == 0


def test_conserved_invariants_random_interactions(half):
    # every basis vector satisfies the pair constraints exactly
    inter = cl.make_interaction((0, 1, 2), 0,
                                {(1, 2): (2, 1), (2, 1): (1, 2),
                                 (1, 1): (2, 0), (2, 0): (1, 1)})
    nu = cl.uniform_states(3)
    for xi in cl.conserved_quantities(inter, nu):
        assert nu.mean(xi.xi) == 0
        for (i, j), (i2, j2) in inter.changed_pairs():
            assert xi.xi[i2] + xi.xi[j2] == xi.xi[i] + xi.xi[j]


def test_conserved_colocal_values(exclusion, half):
    xi = cl.conserved_quantities(exclusion, half)[0]
    sites = cl.siteset([0, 1])
    table = cl.conserved_colocal(xi, sites)
    assert table.value_at((1, 0)) == 0
    assert table.value_at((0, 0)) == 2 * xi.xi[0]
    empty = cl.conserved_colocal(xi, cl.siteset([]))
    assert empty.values == (F(0),)


def test_conserved_colocal_in_kernel(exclusion, half):
    # the window sum of a conserved quantity has zero differential
    w = cl.lattice_window(1, radius=1)
    xi = cl.conserved_quantities(exclusion, half)[0]
    table = cl.conserved_colocal(xi, cl.siteset(w.sites))
    assert cl.differential(table, exclusion, w).is_zero()


# -- irreducible quantification ----------------------------------------------------

def test_iq_exclusion(exclusion, half, single_edge, path3, triangle):
    report = cl.check_iq(exclusion, half, [single_edge, path3, triangle])
    assert report.ok


def test_iq_identity_fails(half, single_edge):
    report = cl.check_iq(cl.identity_interaction(2), half, [single_edge])
    assert not report.ok
    witnesses = report.results[0].witnesses
    assert witnesses
    totals, first, second = witnesses[0]
    assert {first, second} == {(1, 0), (0, 1)}


def test_iq_implies_kernel_constant_on_level_sets(exclusion, half, path3):
    # with IQ, components coincide with conserved-total level sets, so each
    # kernel element is a function of the totals
    sites = cl.siteset(path3.sites)
    basis = cl.conserved_quantities(exclusion, half)
    graph = cl.transition_graph(sites, exclusion, path3)
    labels = graph.component_labels
    totals_of = {}
    for idx in range(graph.space.size):
        totals = tuple(xi.total(graph.space.decode(idx)) for xi in basis)
        totals_of.setdefault(totals, set()).add(labels[idx])
    assert all(len(v) == 1 for v in totals_of.values())
