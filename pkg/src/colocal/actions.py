"""Group elements acting on configurations, tables, and forms.

The action relabels sites: a configuration moves to sigma(Lambda), a
function f moves to sigma(f)(eta) = f(sigma^{-1}(eta)), and a form moves
with its transitions.  All three raise ActionLeavesWindow when a needed
image is outside the represented window.
"""

from __future__ import annotations

from .forms import Form
from .statespace import Config, SiteMap
from .tables import FnTable


def group_act(sigma: SiteMap, target):
    """Apply a group element to a Config, FnTable, or Form."""
    if isinstance(target, Config):
        new_sites = sigma.map_siteset(target.sites)
        assignment = [0] * len(target.assignment)
        for k, s in enumerate(target.sites):
            assignment[new_sites.position(sigma.apply_or_raise(s))] = \
                target.assignment[k]
        return Config(new_sites, tuple(assignment))
    if isinstance(target, FnTable):
        return target.relabel(sigma)
    if isinstance(target, Form):
        return target.relabel(sigma)
    raise TypeError(f"cannot act on {type(target).__name__}")
