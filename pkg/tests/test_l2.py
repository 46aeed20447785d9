import random
from fractions import Fraction as F

import colocal as cl
from conftest import rand_table


def test_l2_norm_examples(mu_half):
    sites = cl.siteset([0, 1])
    fx = cl.site_occupation(sites, 2, 0)
    assert cl.l2_norm(fx, mu_half).squared == F(1, 2)
    fxy = fx * cl.site_occupation(sites, 2, 1)
    assert cl.l2_norm(fxy, mu_half).squared == F(1, 4)
    zero = cl.fn_constant(sites, 2, F(0))
    norm = cl.l2_norm(zero, mu_half)
    assert norm.squared == 0 and norm.root == 0.0


def test_chain_report_worked_example(mu_half):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0) * cl.site_occupation(sites, 2, 1)
    report = cl.martingale_chain_report(f, [cl.siteset([0]), sites], mu_half)
    assert report.norms_sq == (F(1, 8), F(1, 4))
    assert report.gaps_sq == (F(1, 8),)
    assert report.sup_sq == F(1, 4)
    assert report.monotone and report.pythagoras


def test_chain_report_local_function_stabilizes(mu_half):
    sites = cl.siteset([0, 1, 2])
    pair = cl.siteset([0, 1])
    f = (cl.site_occupation(pair, 2, 0) *
         cl.site_occupation(pair, 2, 1)).embed(sites)
    report = cl.martingale_chain_report(
        f, [cl.siteset([0]), pair, sites], mu_half)
    # once the window covers the support the gaps vanish exactly
    assert report.gaps_sq[-1] == 0
    assert report.norms_sq[1] == report.norms_sq[2]


def test_chain_report_constant(mu_half):
    sites = cl.siteset([0, 1])
    c = cl.fn_constant(sites, 2, F(3))
    report = cl.martingale_chain_report(
        c, [cl.siteset([]), cl.siteset([0]), sites], mu_half)
    assert set(report.norms_sq) == {F(9)}
    assert set(report.gaps_sq) == {F(0)}


def test_contraction_exact(mu_half):
    rng = random.Random(73)
    big = cl.siteset([0, 1, 2])
    for _ in range(30):
        f = rand_table(rng, big)
        full = cl.l2_norm(f, mu_half).squared
        for sub in [cl.siteset([]), cl.siteset([0]), cl.siteset([0, 2])]:
            projected = cl.conditional_expectation(f, sub, mu_half)
            assert cl.l2_norm(projected, mu_half).squared <= full


def test_pythagoras_exact_random_chains(mu_half):
    rng = random.Random(79)
    windows = [cl.siteset([1]), cl.siteset([0, 1]), cl.siteset([0, 1, 3]),
               cl.siteset([0, 1, 2, 3])]
    for _ in range(20):
        f = rand_table(rng, windows[-1])
        report = cl.martingale_chain_report(f, windows, mu_half)
        assert report.pythagoras and report.monotone


def test_gelfand_structural(mu_half):
    # local functions give chains with finite sup norm; built chains satisfy
    # the compatibility that makes them projective-family truncations
    rng = random.Random(83)
    windows = [cl.siteset([0]), cl.siteset([0, 1]), cl.siteset([0, 1, 2])]
    f = rand_table(rng, windows[-1])
    chain = cl.build_chain(f, windows, mu_half)
    assert chain.verify_compatibility()
    report = cl.martingale_chain_report(f, windows, mu_half)
    assert report.sup_sq == report.norms_sq[-1]


def test_report_json_round(mu_half):
    sites = cl.siteset([0, 1])
    f = cl.site_occupation(sites, 2, 0)
    report = cl.martingale_chain_report(f, [cl.siteset([0]), sites], mu_half)
    payload = report.to_json_dict()
    assert payload["norms_sq"] == ["1/2", "1/2"]
    assert payload["monotone"] and payload["pythagoras"]


def test_form_norm_of_density_gradient(mu_half):
    exclusion = cl.exclusion_interaction()
    window = cl.lattice_window(1, radius=2)
    basis = cl.conserved_quantities(exclusion, cl.bernoulli(F(1, 2)))
    rho = cl.cocycle_from_coefficients(basis, [[F(1)]])
    omega = cl.omega_from_cocycle(rho, window, exclusion)
    # every directed edge table is +-(eta_n - eta_{n+1}): squared norm 1/2
    norm = cl.form_l2_norm(omega, mu_half)
    assert norm.squared == F(1, 2)
