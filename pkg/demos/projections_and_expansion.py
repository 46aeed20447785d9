"""Conditional-expectation projections and the orthogonal subset expansion.

Projecting onto smaller windows is an orthogonal projection; over a product
measure every function splits uniquely into components indexed by subsets,
each killed by the projections that miss it.
"""

from fractions import Fraction as F

import colocal as cl

nu = cl.bernoulli(F(1, 2))
mu = cl.ProductMeasure(nu)

pair = cl.siteset([0, 1])
f = cl.site_occupation(pair, 2, 0) * cl.site_occupation(pair, 2, 1)

projected = cl.conditional_expectation(f, cl.siteset([0]), mu)
print("project eta_0*eta_1 onto {0}:", projected.values, "(= eta_0 / 2)")

# Tower property: projecting in stages equals projecting once.
triple = cl.siteset([0, 1, 2])
g = cl.site_occupation(triple, 2, 0) * cl.site_occupation(triple, 2, 2)
stage = cl.conditional_expectation(
    cl.conditional_expectation(g, pair, mu), cl.siteset([0]), mu)
direct = cl.conditional_expectation(g, cl.siteset([0]), mu)
print("tower property holds exactly:", stage.equals(direct))

# The expansion of eta_0*eta_1: mean, two centered singletons, one pair term.
expansion = cl.expand_martingale(f, nu)
for subset, table in sorted(expansion.components.items()):
    print(f"  component {subset}: {table.values}")
print("components sum back to f:", expansion.reconstruct().equals(f))

# The pair component is annihilated by every projection missing a site.
pair_component = expansion.component((0, 1))
print("projection onto {0} kills the pair component:",
      cl.conditional_expectation(pair_component, cl.siteset([0]), mu).is_zero())

# Conserved sums expand into singletons only, so their radius is zero.
window = cl.lattice_window(1, radius=2)
xi = cl.conserved_quantities(cl.exclusion_interaction(), nu)[0]
total = cl.conserved_colocal(xi, cl.siteset([-1, 0, 1]))
print("radius of a conserved sum:",
      cl.uniform_radius(cl.expand_martingale(total, nu), window))
print("radius of eta_0*eta_1:",
      cl.uniform_radius(expansion, window))
