"""Configuration spaces with transition structure.

Build lattice windows, attach an interaction, enumerate configurations,
walk transitions, and check which conserved quantities the interaction
admits and whether equal conserved totals force connectivity.
"""

from fractions import Fraction as F

import colocal as cl

# A window of the one-dimensional lattice: sites -2..2, nearest neighbors.
window = cl.lattice_window(1, radius=2)
print("sites:", window.sites)
print("directed edges:", len(window.edges))

# The simple exclusion interaction swaps the two endpoint states.
exclusion = cl.exclusion_interaction()
print("reversibility check:", cl.validate_interaction(exclusion).ok)

# Configurations on a pair of sites, mixed-radix indexed.
pair = cl.siteset([0, 1])
space = cl.enumerate_configs(pair, exclusion)
for idx in range(space.size):
    print(f"  index {idx} = {space.decode(idx)}")

eta = cl.Config(pair, (1, 0))
print("swap across (0,1):", cl.apply_transition(eta, (0, 1), exclusion).assignment)

# The full transition graph over a 3-site window: components are exactly
# the particle-number level sets.
path3 = cl.lattice_window(1, radius=1)
graph = cl.transition_graph(cl.siteset(path3.sites), exclusion, path3)
print("transition records:", len(graph.records))
print("connected components:", graph.n_components)

# Conserved quantities: for exclusion the particle density, centered.
nu = cl.bernoulli(F(1, 2))
basis = cl.conserved_quantities(exclusion, nu)
print("conserved basis:", [xi.xi for xi in basis])

# Equal conserved totals imply connectivity on these windows...
report = cl.check_iq(exclusion, nu, [path3])
print("exclusion irreducibly quantified here:", report.ok)

# ...but not for the identity interaction, which moves nothing.
single = cl.build_locale([0, 1], [(0, 1), (1, 0)])
frozen = cl.check_iq(cl.identity_interaction(2), nu, [single])
print("identity interaction fails with witness:",
      frozen.results[0].witnesses[0][1:])
