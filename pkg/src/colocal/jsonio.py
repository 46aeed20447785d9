"""JSON schemas for every object the CLI reads or writes.

Scalars are canonical ``"p/q"`` strings in exact mode and plain numbers in
float mode.  All dump functions produce deterministic structures (sorted
keys are applied at serialization time by the CLI).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .forms import Form, Path
from .measure import ProductMeasure, StateMeasure, WindowMeasure
from .scalars import format_scalar, parse_scalar
from .statespace import (
    Config,
    Interaction,
    LatticeMeta,
    Locale,
    SiteSet,
    build_locale,
    lattice_window,
    make_interaction,
    siteset,
)
from .tables import FnTable
from .varadhan import Cocycle, InvariantFormSpec, cocycle_from_coefficients

SCHEMA_VERSION = "1"


# -- locale -------------------------------------------------------------

def locale_from_json(obj: dict) -> Locale:
    lattice = obj.get("lattice")
    if lattice is not None and "sites" not in obj:
        if "radius" in lattice:
            return lattice_window(lattice["dim"], radius=lattice["radius"])
        return lattice_window(lattice["dim"], sizes=tuple(lattice["sizes"]))
    meta = None
    if lattice is not None:
        if "radius" in lattice:
            meta = LatticeMeta(lattice["dim"], "window", radius=lattice["radius"])
        else:
            meta = LatticeMeta(lattice["dim"], "torus",
                               sizes=tuple(lattice["sizes"]))
    return build_locale(obj["sites"], [tuple(e) for e in obj["edges"]], meta)


def locale_to_json(locale: Locale) -> dict:
    out = {"sites": list(locale.sites),
           "edges": sorted([o, t] for (o, t) in locale.edges)}
    if locale.lattice is not None:
        lat = {"dim": locale.lattice.dim}
        if locale.lattice.kind == "window":
            lat["radius"] = locale.lattice.radius
        else:
            lat["sizes"] = list(locale.lattice.sizes)
        out["lattice"] = lat
    return out


# -- interaction --------------------------------------------------------

def interaction_from_json(obj: dict) -> Interaction:
    states = tuple(obj["states"])
    phi = {}
    for pair in obj.get("phi", []):
        (a, b), (c, d) = pair
        phi[(a, b)] = (c, d)
    return make_interaction(states, obj["base"], phi)


def interaction_to_json(inter: Interaction) -> dict:
    changed = []
    for (i, j), (i2, j2) in inter.changed_pairs():
        changed.append([[inter.states[i], inter.states[j]],
                        [inter.states[i2], inter.states[j2]]])
    return {"states": list(inter.states), "base": inter.base, "phi": changed}


# -- measures -----------------------------------------------------------

def state_measure_from_json(obj, states, mode: str = "exact") -> StateMeasure:
    """Accepts either a list of weights (state order) or a mapping keyed by
    the string form of each state label."""
    if isinstance(obj, list):
        return StateMeasure(tuple(parse_scalar(w, mode) for w in obj))
    weights = [parse_scalar(obj[str(s)], mode) for s in states]
    return StateMeasure(tuple(weights))


def state_measure_to_json(nu: StateMeasure, states) -> dict:
    return {str(s): format_scalar(w) for s, w in zip(states, nu.weights)}


def measure_from_json(obj: dict, interaction: Interaction,
                      mode: str = "exact"):
    """{"kind": "product", "nu": ...} or
    {"kind": "window", "siteset": [...], "weights": {index: scalar}}."""
    kind = obj.get("kind", "product")
    if kind == "product":
        return ProductMeasure(state_measure_from_json(
            obj["nu"], interaction.states, mode))
    sites = siteset(obj["siteset"])
    n = interaction.n_states
    size = n ** len(sites)
    weights = obj["weights"]
    if isinstance(weights, list):
        values = [parse_scalar(w, mode) for w in weights]
    else:
        values = [parse_scalar(weights[str(i)], mode) for i in range(size)]
    return WindowMeasure(sites, n, tuple(values))


def window_measure_to_json(mu: WindowMeasure) -> dict:
    return {"kind": "window", "siteset": list(mu.sites),
            "weights": {str(i): format_scalar(w)
                        for i, w in enumerate(mu.weights)}}


# -- tables and forms ---------------------------------------------------

def fn_table_from_json(obj: dict, interaction: Interaction,
                       mode: str = "exact") -> FnTable:
    sites = siteset(obj["siteset"])
    values = tuple(parse_scalar(v, mode) for v in obj["values"])
    return FnTable(sites, interaction.n_states, values)


def fn_table_to_json(f: FnTable) -> dict:
    return {"siteset": list(f.sites),
            "values": [format_scalar(v) for v in f.values]}


def form_from_json(obj: dict, interaction: Interaction,
                   mode: str = "exact", validate: bool = True,
                   tol: Optional[float] = None, state_cap: int = 1 << 20) -> Form:
    """{"siteset": [...], "edges": [{"edge": [o, t], "support": [...]?,
    "values": [...]}]}; the listed edge orientation is the orientation the
    values describe."""
    from .forms import make_form

    sites = siteset(obj["siteset"])
    tables = {}
    edges = []
    for entry in obj["edges"]:
        edge = tuple(entry["edge"])
        support = siteset(entry.get("support", obj["siteset"]))
        values = tuple(parse_scalar(v, mode) for v in entry["values"])
        tables[edge] = FnTable(support, interaction.n_states, values)
        edges.append(edge)
    return make_form(sites, interaction, edges, tables, validate=validate,
                     tol=tol, state_cap=state_cap)


def form_to_json(form: Form) -> dict:
    entries = []
    for e in form.edges:
        t = form.tables[e]
        entries.append({"edge": list(e), "support": list(t.sites),
                        "values": [format_scalar(v) for v in t.values]})
    return {"siteset": list(form.sites), "edges": entries}


def path_to_json(path: Path) -> dict:
    return {"start_siteset": list(path.start.sites),
            "start_assignment": list(path.start.assignment),
            "edges": [list(e) for e in path.edges]}


# -- cocycles and stencils -----------------------------------------------

def cocycle_from_json(obj, basis, n_states: int, mode: str = "exact") -> Cocycle:
    """A list of coefficient rows over the conserved basis, one per lattice
    generator."""
    rows = [[parse_scalar(c, mode) for c in row] for row in obj]
    return cocycle_from_coefficients(basis, rows, n_states)


def cocycle_to_json(rho: Cocycle) -> dict:
    return {"generators": [[format_scalar(c) for c in row]
                           for row in rho.images],
            "basis": [[format_scalar(v) for v in xi.xi] for xi in rho.basis]}


def invariant_spec_from_json(obj: dict, interaction: Interaction,
                             mode: str = "exact") -> InvariantFormSpec:
    template = locale_from_json(obj["template"])
    form = form_from_json(obj["form"], interaction, mode, validate=False)
    return InvariantFormSpec(template, form)


def invariant_spec_to_json(spec: InvariantFormSpec) -> dict:
    return {"template": locale_to_json(spec.template),
            "form": form_to_json(spec.form)}


# -- generic ------------------------------------------------------------

def jsonify(value):
    """Best-effort conversion of library values into JSON-compatible data."""
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    if isinstance(value, SiteSet):
        return list(value.sites)
    if isinstance(value, Config):
        return {"siteset": list(value.sites), "assignment": list(value.assignment)}
    if isinstance(value, Path):
        return path_to_json(value)
    if isinstance(value, frozenset):
        return sorted(jsonify(v) for v in value)
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)
