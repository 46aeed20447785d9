"""Shift-equivariant structure on lattice windows: fundamental domains,
cocycles valued in conserved quantities, and the decomposition of
shift-invariant closed forms into an exact part plus a cocycle part.

The cocycle data assigns to each lattice generator a combination of
conserved quantities.  Its canonical potential places, at the site with
coordinate x, the single-site table ``h_x = sum_j x_j * (image of generator
j)``; the differential of that potential is a translation-consistent closed
form (consistency follows from the conservation identity).  Conversely,
given a shift-invariant closed form, solving for a potential and taking the
shift residue of its single-site expansion components recovers the cocycle;
expansion components of a projected chain are exact on any sub-window by the
tower property, so the recovery works on windows far too large to enumerate
by solving on small sub-windows instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import linalg
from .errors import (
    NotInvariant,
    ResidueNotConserved,
    WindowTooSmall,
)
from .forms import Form, differential, solve_potential
from .functions import ConservedQuantity, conserved_quantities
from .measure import ProductMeasure, StateMeasure, conditional_expectation
from .scalars import Scalar
from .statespace import (
    ConfigSpace,
    DEFAULT_STATE_CAP,
    Edge,
    Interaction,
    Locale,
    SiteSet,
    guard_space,
    lattice_window,
    siteset,
)
from .tables import FnTable

Coord = tuple[int, ...]


def _as_coord(value, dim: int) -> Coord:
    if isinstance(value, int):
        if dim != 1:
            raise ValueError("scalar coordinate only valid in dimension 1")
        return (value,)
    coord = tuple(value)
    if len(coord) != dim:
        raise ValueError(f"coordinate {coord} has wrong dimension")
    return coord


def _unit(axis: int, dim: int) -> Coord:
    return tuple(1 if k == axis else 0 for k in range(dim))


def _coord_add(a: Coord, b: Coord) -> Coord:
    return tuple(x + y for x, y in zip(a, b))


def _coord_sub(a: Coord, b: Coord) -> Coord:
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# fundamental domain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalDomain:
    """One representative per translation orbit of nonempty finite coordinate
    sets: the representative has its lexicographically smallest element at
    the origin."""

    dim: int

    def split(self, coords) -> tuple[Coord, tuple[Coord, ...]]:
        """Return (tau, base) with coords == base translated by tau."""
        cs = sorted(_as_coord(c, self.dim) for c in coords)
        if not cs:
            raise ValueError("fundamental domain is over nonempty sets")
        tau = cs[0]
        return tau, tuple(_coord_sub(c, tau) for c in cs)

    def contains(self, coords) -> bool:
        tau, _ = self.split(coords)
        return tau == (0,) * self.dim


def fundamental_domain(dim: int) -> FundamentalDomain:
    return FundamentalDomain(dim)


# ---------------------------------------------------------------------------
# cocycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    """Homomorphism from the translation group into the span of the
    conserved-quantity basis; ``images[j]`` are the coefficients of the
    j-th generator over the basis."""

    n_states: int
    basis: tuple[ConservedQuantity, ...]
    images: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        for row in self.images:
            if len(row) != len(self.basis):
                raise ValueError("coefficient row does not match the basis")

    @property
    def dim(self) -> int:
        return len(self.images)

    def is_zero(self) -> bool:
        return all(all(c == 0 for c in row) for row in self.images)

    def generator_state_table(self, axis: int) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.n_states
        for c, xi in zip(self.images[axis], self.basis):
            for s in range(self.n_states):
                out[s] += c * xi.xi[s]
        return tuple(out)

    def site_state_table(self, coord: Coord) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.n_states
        for axis, x in enumerate(coord):
            if x == 0:
                continue
            g = self.generator_state_table(axis)
            for s in range(self.n_states):
                out[s] += x * g[s]
        return tuple(out)

    def scale(self, c: Scalar) -> "Cocycle":
        return Cocycle(self.n_states, self.basis,
                       tuple(tuple(c * v for v in row) for row in self.images))


def cocycle_from_coefficients(basis: Sequence[ConservedQuantity],
                              images, n_states: Optional[int] = None) -> Cocycle:
    basis = tuple(basis)
    if n_states is None:
        if not basis:
            raise ValueError("n_states required for an empty basis")
        n_states = basis[0].n_states
    rows = tuple(tuple(Fraction(c) for c in row) for row in images)
    return Cocycle(n_states, basis, rows)


def zero_cocycle(basis: Sequence[ConservedQuantity], dim: int,
                 n_states: int) -> Cocycle:
    return Cocycle(n_states, tuple(basis),
                   tuple(tuple([Fraction(0)] * len(basis)) for _ in range(dim)))


# ---------------------------------------------------------------------------
# window geometry helpers
# ---------------------------------------------------------------------------

def _require_lattice_window(window: Locale) -> None:
    if window.lattice is None or window.lattice.kind != "window":
        raise ValueError("operation requires a lattice box window")


def interior_sites(window: Locale, margin: int) -> tuple[int, ...]:
    """Sites at lattice distance >= margin from the window boundary."""
    _require_lattice_window(window)
    r = window.lattice.radius
    return tuple(s for s in window.sites
                 if max(abs(c) for c in window.coord_of(s)) <= r - margin)


def interior_edges(window: Locale, margin: int) -> tuple[Edge, ...]:
    inside = set(interior_sites(window, margin))
    return tuple(sorted((o, t) for (o, t) in window.edges
                        if o < t and o in inside and t in inside))


# ---------------------------------------------------------------------------
# canonical potential and form of a cocycle
# ---------------------------------------------------------------------------

def theta_from_cocycle(rho: Cocycle, window: Locale,
                       state_cap: int = DEFAULT_STATE_CAP) -> FnTable:
    """Truncation of the canonical potential: sum over window sites of the
    single-site tables ``h_x``.  Exact projection of the infinite potential
    because every ``h_x`` has zero mean."""
    _require_lattice_window(window)
    sites = siteset(window.sites)
    n = rho.n_states
    size = n ** len(sites)
    guard_space(size, state_cap)
    per_site = [rho.site_state_table(window.coord_of(s)) for s in sites]
    space = ConfigSpace(sites, n)
    values = []
    for idx in range(size):
        assignment = space.decode(idx)
        values.append(sum((per_site[k][a] for k, a in enumerate(assignment)),
                          Fraction(0)))
    return FnTable(sites, n, tuple(values))


def omega_from_cocycle(rho: Cocycle, window: Locale,
                       interaction: Interaction) -> Form:
    """Differential of the truncated canonical potential, assembled edge by
    edge; every edge table depends only on the two endpoint states."""
    _require_lattice_window(window)
    if interaction.n_states != rho.n_states:
        raise ValueError("cocycle and interaction state counts differ")
    sites = siteset(window.sites)
    n = rho.n_states
    tables = {}
    pairs = tuple(sorted((o, t) for (o, t) in window.edges if o < t))
    for (o, t) in pairs:
        h_o = rho.site_state_table(window.coord_of(o))
        h_t = rho.site_state_table(window.coord_of(t))
        support = SiteSet((o, t))
        values = []
        for b in range(n):         # state at t (more significant digit)
            for a in range(n):     # state at o (less significant digit)
                a2, b2 = interaction.phi_pair(a, b)
                values.append(h_o[a2] - h_o[a] + h_t[b2] - h_t[b])
        # mixed-radix order: digit at o is least significant
        ordered = [Fraction(0)] * (n * n)
        k = 0
        for b in range(n):
            for a in range(n):
                ordered[a + n * b] = values[k]
                k += 1
        tables[(o, t)] = FnTable(support, n, tuple(ordered))
    return Form(sites, interaction, pairs, tables)


@dataclass(frozen=True)
class CocycleIdentityReport:
    ok: bool
    per_axis: tuple[dict, ...]


def verify_cocycle_identity(rho: Cocycle, window: Locale) -> CocycleIdentityReport:
    """Check that the shift residue of the truncated potential equals the
    generator image, per axis, on every site whose shifted partner is also in
    the window."""
    _require_lattice_window(window)
    dim = window.lattice.dim
    details = []
    all_ok = True
    for axis in range(dim):
        unit = _unit(axis, dim)
        expected = rho.generator_state_table(axis)
        compared = 0
        mismatches = []
        for s in window.sites:
            c = window.coord_of(s)
            partner = window.site_at(_coord_sub(c, unit))
            if partner is None:
                continue
            compared += 1
            diff = tuple(a - b for a, b in zip(rho.site_state_table(c),
                                               rho.site_state_table(_coord_sub(c, unit))))
            if diff != expected:
                mismatches.append(s)
        if compared == 0:
            raise WindowTooSmall(
                f"window has no site pairs along axis {axis}", axis=axis)
        ok = not mismatches
        all_ok = all_ok and ok
        details.append({"axis": axis, "compared": compared, "ok": ok,
                        "mismatch_sites": mismatches})
    return CocycleIdentityReport(all_ok, tuple(details))


# ---------------------------------------------------------------------------
# invariant form stencils
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantFormSpec:
    """A shift-invariant form given by its stencil: a form on a template
    window whose anchor edges (origin to each unit vector) define every
    translate."""

    template: Locale
    form: Form

    def __post_init__(self):
        _require_lattice_window(self.template)
        for axis in range(self.dim):
            if self.anchor_edge(axis) not in self.form.edges:
                raise ValueError(
                    f"template form is missing the anchor edge of axis {axis}")

    @property
    def dim(self) -> int:
        return self.template.lattice.dim

    @property
    def interaction(self) -> Interaction:
        return self.form.interaction

    def anchor_edge(self, axis: int) -> Edge:
        origin = self.template.site_at((0,) * self.dim)
        tip = self.template.site_at(_unit(axis, self.dim))
        return (origin, tip)

    def anchor_table(self, axis: int) -> FnTable:
        return self.form.tables[self.anchor_edge(axis)]

    @cached_property
    def stencil_radius(self) -> int:
        """Chebyshev spread of the anchor supports beyond their own edge."""
        best = 0
        for axis in range(self.dim):
            unit = _unit(axis, self.dim)
            for s in self.anchor_table(axis).minimized().sites:
                c = self.template.coord_of(s)
                spread = min(max(abs(v) for v in c) if any(c) else 0,
                             max(abs(v) for v in _coord_sub(c, unit))
                             if c != unit else 0)
                best = max(best, spread)
        return best

    def check_invariance(self, tol: float | None = None) -> list[Edge]:
        """Template edges whose tables disagree with the translated anchor
        (edges whose translated support leaves the template are skipped)."""
        bad = []
        for (o, t), table in self.form.tables.items():
            co, ct = self.template.coord_of(o), self.template.coord_of(t)
            direction = _coord_sub(ct, co)
            axis = direction.index(1)
            anchor = self.anchor_table(axis).minimized()
            expected = _translate_table(anchor, self.template, self.template,
                                        co, None, None)
            if expected is None:
                continue
            if not expected.equals(table.minimized(), tol):
                bad.append((o, t))
        return sorted(bad)

    def materialize(self, window: Locale, nu: StateMeasure,
                    keep: Optional[SiteSet] = None) -> Form:
        """The window component of the invariant form: each window edge gets
        the translated anchor table, with sites outside ``keep`` (default:
        the window) integrated out against nu."""
        _require_lattice_window(window)
        ambient = keep if keep is not None else siteset(window.sites)
        pairs = []
        tables = {}
        for (o, t) in sorted(window.edges):
            if o > t or o not in ambient or t not in ambient:
                continue
            co, ct = window.coord_of(o), window.coord_of(t)
            axis = _coord_sub(ct, co).index(1)
            anchor = self.anchor_table(axis)
            table = _translate_table(anchor, self.template, window, co,
                                     ambient, nu)
            pairs.append((o, t))
            tables[(o, t)] = table
        return Form(ambient, self.interaction, tuple(pairs), tables)

    def _combine(self, other: "InvariantFormSpec", sign: int) -> "InvariantFormSpec":
        if self.dim != other.dim or self.interaction != other.interaction:
            raise ValueError("stencils are not compatible")
        radius = max(self.template.lattice.radius, other.template.lattice.radius)
        template = lattice_window(self.dim, radius)
        anchors = []
        for axis in range(self.dim):
            a = _translate_table(self.anchor_table(axis), self.template,
                                 template, (0,) * self.dim, None, None)
            b = _translate_table(other.anchor_table(axis), other.template,
                                 template, (0,) * self.dim, None, None)
            support = a.sites.union(b.sites)
            merged = a.embed(support) + (b.embed(support) if sign > 0
                                         else -b.embed(support))
            anchors.append(merged)
        return invariant_spec_from_anchors(template, self.interaction, anchors)

    def __add__(self, other: "InvariantFormSpec") -> "InvariantFormSpec":
        return self._combine(other, +1)

    def __sub__(self, other: "InvariantFormSpec") -> "InvariantFormSpec":
        return self._combine(other, -1)


def _translate_table(table: FnTable, src: Locale, dst: Locale, shift: Coord,
                     keep: Optional[SiteSet], nu: Optional[StateMeasure]):
    """Move a table by a lattice shift from one window chart to another,
    integrating out sites that land outside ``keep`` (or outside ``dst``).

    Translation preserves the lexicographic site order, so kept digits keep
    their relative positions.  Returns None when averaging would be needed
    but no measure was supplied.
    """
    coords = [src.coord_of(s) for s in table.sites]
    moved = [_coord_add(c, shift) for c in coords]
    targets = [dst.site_at(c) for c in moved]
    kept = [k for k, s in enumerate(targets)
            if s is not None and (keep is None or s in keep)]
    if len(kept) == len(targets):
        return FnTable(SiteSet(tuple(targets)), table.n_states, table.values)
    if nu is None:
        return None
    out_positions = [k for k in range(len(targets)) if k not in kept]
    kept_sites = SiteSet(tuple(targets[k] for k in kept))
    small = ConfigSpace(kept_sites, table.n_states)
    values = []
    for idx in range(small.size):
        assignment = small.decode(idx)
        total = Fraction(0)
        for outer in itertools.product(range(table.n_states),
                                       repeat=len(out_positions)):
            full = [0] * len(targets)
            for pos, digit in zip(kept, assignment):
                full[pos] = digit
            weight = Fraction(1)
            for pos, digit in zip(out_positions, outer):
                full[pos] = digit
                weight *= nu.weights[digit]
            total += weight * table.values[table.space.encode(tuple(full))]
        values.append(total)
    return FnTable(kept_sites, table.n_states, tuple(values))


def invariant_spec_from_anchors(template: Locale, interaction: Interaction,
                                anchors: Sequence[FnTable]) -> InvariantFormSpec:
    """Build the template form by translating each axis anchor onto every
    template edge where its support fits."""
    dim = template.lattice.dim
    tables = {}
    pairs = []
    for (o, t) in sorted(template.edges):
        if o > t:
            continue
        co, ct = template.coord_of(o), template.coord_of(t)
        axis = _coord_sub(ct, co).index(1)
        moved = _translate_table(anchors[axis], template, template, co,
                                 None, None)
        if moved is None:
            continue
        pairs.append((o, t))
        tables[(o, t)] = moved
    form = Form(siteset(template.sites), interaction, tuple(pairs), tables)
    return InvariantFormSpec(template, form)


def invariant_form_from_cocycle(rho: Cocycle, interaction: Interaction,
                                dim: int) -> InvariantFormSpec:
    """Stencil of the canonical closed form of a cocycle; each anchor table
    depends only on the two endpoint states."""
    template = lattice_window(dim, 1)
    n = rho.n_states
    anchors = []
    for axis in range(dim):
        g = rho.generator_state_table(axis)
        origin = template.site_at((0,) * dim)
        tip = template.site_at(_unit(axis, dim))
        support = SiteSet(tuple(sorted((origin, tip))))
        values = [Fraction(0)] * (n * n)
        for b in range(n):
            for a in range(n):
                a2, b2 = interaction.phi_pair(a, b)
                # the site weights are 0 at the origin and g at the tip
                values[a + n * b] = g[b2] - g[b]
        anchors.append(FnTable(support, n, tuple(values)))
    return invariant_spec_from_anchors(template, interaction, anchors)


def invariant_form_from_potential_stencil(core: FnTable, template: Locale,
                                          interaction: Interaction) -> InvariantFormSpec:
    """Stencil of the differential of the shift-invariant potential
    ``sum over translates of core``.  The template must be large enough to
    hold every contributing translate of the core around an anchor edge."""
    _require_lattice_window(template)
    dim = template.lattice.dim
    n = interaction.n_states
    core = core.minimized()
    core_coords = [template.coord_of(s) for s in core.sites]
    anchors = []
    for axis in range(dim):
        unit = _unit(axis, dim)
        endpoints = [(0,) * dim, unit]
        shifts = sorted({_coord_sub(p, u) for p in endpoints for u in core_coords})
        support_coords = set(endpoints)
        for v in shifts:
            support_coords.update(_coord_add(u, v) for u in core_coords)
        support_sites = []
        for c in sorted(support_coords):
            s = template.site_at(c)
            if s is None:
                raise ValueError(
                    "template window too small for the potential stencil")
            support_sites.append(s)
        support = SiteSet(tuple(sorted(support_sites)))
        space = ConfigSpace(support, n)
        origin = template.site_at((0,) * dim)
        tip = template.site_at(unit)
        po, pt = support.position(origin), support.position(tip)
        values = []
        for idx in range(space.size):
            assignment = space.decode(idx)
            a, b = assignment[po], assignment[pt]
            a2, b2 = interaction.phi_pair(a, b)
            if (a2, b2) == (a, b):
                values.append(Fraction(0))
                continue
            moved = list(assignment)
            moved[po], moved[pt] = a2, b2
            total = Fraction(0)
            for v in shifts:
                translated = _translate_table(core, template, template, v,
                                              None, None)
                if translated is None:
                    raise ValueError(
                        "template window too small for the potential stencil")
                total += (translated.evaluate_in(support, tuple(moved))
                          - translated.evaluate_in(support, assignment))
            values.append(total)
        anchors.append(FnTable(support, n, tuple(values)).minimized())
    return invariant_spec_from_anchors(template, interaction, anchors)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VaradhanDecomposition:
    cocycle: Cocycle
    residual_spec: InvariantFormSpec
    residual_form: Optional[Form]
    residual_potential: Optional[FnTable]
    window: Locale
    margin: int
    mode: str
    checks: dict


def _singleton_state_table(theta: FnTable, site: int,
                           nu: StateMeasure) -> tuple:
    """Single-site expansion component of theta at ``site`` (mean removed)."""
    projected = conditional_expectation(theta, SiteSet((site,)),
                                        ProductMeasure(nu))
    mean = nu.mean(projected.values)
    return tuple(v - mean for v in projected.values)


def _shift_residue(pair_tables, basis, n_states, context: str):
    """Common value of the per-site differences, solved over the basis."""
    reference = pair_tables[0]
    for other in pair_tables[1:]:
        if other != reference:
            raise ResidueNotConserved(
                f"shift residue varies across {context}; window too small "
                "or interaction not irreducibly quantified")
    coeffs = linalg.solve_in_span([xi.xi for xi in basis], reference)
    if coeffs is None:
        raise ResidueNotConserved(
            f"shift residue on {context} is outside the conserved span")
    return coeffs


def decompose_invariant_form(spec: InvariantFormSpec, window: Locale,
                             nu: StateMeasure, *,
                             margin: Optional[int] = None,
                             tol: float | None = None,
                             state_cap: int = DEFAULT_STATE_CAP) -> VaradhanDecomposition:
    """Split a shift-invariant closed form into a cocycle part and an exact
    part.

    On windows within the state cap this solves for a potential on the full
    window, reads the cocycle off the shift residue of its single-site
    components on the interior, and returns the residual form together with
    its potential.  On larger windows the same single-site components are
    computed exactly from solves on three-site sub-windows per axis, and the
    residual is returned as a stencil only.
    """
    _require_lattice_window(window)
    dim = window.lattice.dim
    if spec.dim != dim:
        raise ValueError("stencil and window dimensions differ")
    interaction = spec.interaction
    n = interaction.n_states
    if nu.n_states != n:
        raise ValueError("measure and interaction state counts differ")

    mismatched = spec.check_invariance(tol)
    if mismatched:
        raise NotInvariant("template form is not translation-consistent",
                           edges=mismatched)

    basis = conserved_quantities(interaction, nu)
    if margin is None:
        margin = spec.stencil_radius + 1
    radius = window.lattice.radius
    if radius - margin < 0:
        raise WindowTooSmall(
            f"window radius {radius} cannot hold margin {margin}",
            radius=radius, margin=margin)

    window_size = n ** len(window.sites)
    mode = "window" if window_size <= state_cap else "local"
    checks: dict = {"mode": mode, "margin": margin,
                    "stencil_radius": spec.stencil_radius}
    mu = ProductMeasure(nu)

    if mode == "window":
        omega = spec.materialize(window, nu)
        theta = solve_potential(omega, mu, tol=tol, state_cap=state_cap)
        singles = {s: _singleton_state_table(theta, s, nu)
                   for s in window.sites}
        inside = set(interior_sites(window, margin))
        rows = []
        for axis in range(dim):
            unit = _unit(axis, dim)
            diffs = []
            for s in sorted(inside):
                partner = window.site_at(_coord_sub(window.coord_of(s), unit))
                if partner is None or partner not in inside:
                    continue
                diffs.append(tuple(a - b for a, b in zip(singles[s],
                                                         singles[partner])))
            if not diffs:
                raise WindowTooSmall(
                    f"interior has no site pairs along axis {axis}",
                    axis=axis, margin=margin)
            rows.append(_shift_residue(diffs, basis, n,
                                       f"axis {axis} interior"))
        rho = Cocycle(n, tuple(basis), tuple(rows))

        theta_rho = theta_from_cocycle(rho, window, state_cap)
        residual_potential = theta - theta_rho
        dense_residual = differential(residual_potential, interaction, window,
                                      state_cap)
        residual_tables = {e: t.minimized()
                           for e, t in dense_residual.tables.items()}
        residual_form = Form(dense_residual.sites, interaction,
                             dense_residual.edges, residual_tables)

        checks["residual_interior_zero"] = all(
            residual_tables[e].is_zero(tol)
            for e in interior_edges(window, margin))
        checks["residual_interior_invariant"] = _interior_invariance(
            residual_form, window, margin, tol)
    else:
        residual_form = None
        residual_potential = None
        checks["closedness_window_radius"] = _validate_closed_locally(
            spec, nu, mu, tol, state_cap)
        rows = []
        for axis in range(dim):
            unit = _unit(axis, dim)
            coords = [_coord_sub((0,) * dim, unit), (0,) * dim, unit]
            sub_sites = []
            for c in coords:
                s = window.site_at(c)
                if s is None:
                    raise WindowTooSmall(
                        f"window cannot hold the axis-{axis} probe sites",
                        axis=axis)
                sub_sites.append(s)
            sub = SiteSet(tuple(sorted(sub_sites)))
            omega_sub = spec.materialize(window, nu, keep=sub)
            theta_sub = solve_potential(omega_sub, mu, tol=tol,
                                        state_cap=state_cap)
            singles = {s: _singleton_state_table(theta_sub, s, nu)
                       for s in sub}
            mid, tip = sub_sites[1], sub_sites[2]
            low = sub_sites[0]
            diffs = [tuple(a - b for a, b in zip(singles[mid], singles[low])),
                     tuple(a - b for a, b in zip(singles[tip], singles[mid]))]
            rows.append(_shift_residue(diffs, basis, n, f"axis {axis} probe"))
        rho = Cocycle(n, tuple(basis), tuple(rows))

    residual_spec = spec - invariant_form_from_cocycle(rho, interaction, dim)
    checks["residual_stencil_zero"] = all(
        residual_spec.anchor_table(axis).is_zero(tol)
        for axis in range(dim))

    return VaradhanDecomposition(rho, residual_spec, residual_form,
                                 residual_potential, window, margin, mode,
                                 checks)


def _interior_invariance(form: Form, window: Locale, margin: int,
                         tol: float | None) -> bool:
    """Are the (support-minimized) interior edge tables translation
    consistent along every axis?"""
    inside = interior_edges(window, margin)
    by_axis: dict[int, list[Edge]] = {}
    for (o, t) in inside:
        axis = _coord_sub(window.coord_of(t), window.coord_of(o)).index(1)
        by_axis.setdefault(axis, []).append((o, t))
    for axis, edges in by_axis.items():
        reference_edge = edges[0]
        ref = form.tables[reference_edge].minimized()
        ref_origin = window.coord_of(reference_edge[0])
        for e in edges[1:]:
            shift = _coord_sub(window.coord_of(e[0]), ref_origin)
            expected = _translate_table(ref, window, window, shift, None, None)
            if expected is None:
                continue
            if not expected.equals(form.tables[e].minimized(), tol):
                return False
    return True


def _validate_closed_locally(spec: InvariantFormSpec, nu: StateMeasure,
                             mu: ProductMeasure, tol, state_cap) -> Optional[int]:
    """Check closedness on the largest materializable box window; returns
    its radius, or None when even radius 1 exceeds the cap."""
    n = spec.interaction.n_states
    for radius in range(spec.stencil_radius + 1, 0, -1):
        if n ** ((2 * radius + 1) ** spec.dim) <= state_cap:
            probe = lattice_window(spec.dim, radius)
            omega = spec.materialize(probe, nu)
            solve_potential(omega, mu, tol=tol, state_cap=state_cap)
            return radius
    return None
