"""Degree-one forms on configuration graphs: differential, path integrals,
potential solving, kernels, and projection.

A form assigns a scalar to every genuine transition ``(eta, eta^e)``.  Per
edge this is a table ``omega_e`` with three structural constraints: it
vanishes where the transition fixes the configuration, it agrees across
edges producing the same target, and it is alternating (reversing the edge
after the move flips the sign).  Only one orientation per undirected edge is
stored; the reverse is derived through the alternating identity, which makes
that constraint structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence

from . import linalg
from .errors import (
    InvalidPath,
    MalformedForm,
    NotClosed,
    NotOrdinary,
    NotSubset,
)
from .measure import (
    Measure,
    WindowMeasure,
    conditional_expectation,
    expectation,
    is_ordinary,
    materialize,
)
from .scalars import Scalar, scalar_eq, scalar_is_zero
from .statespace import (
    Config,
    ConfigSpace,
    DEFAULT_STATE_CAP,
    Edge,
    Interaction,
    Locale,
    SiteSet,
    UnionFind,
    edges_within,
    guard_space,
    transition_graph,
)
from .tables import FnTable, fn_constant, fn_zeros


def canonical_edge(edge: Edge) -> Edge:
    return edge if edge[0] < edge[1] else (edge[1], edge[0])


def canonical_pairs(edges) -> tuple[Edge, ...]:
    return tuple(sorted({canonical_edge(e) for e in edges}))


@dataclass(frozen=True)
class Form:
    """Edge tables over an ambient site set, stored in canonical orientation
    (smaller endpoint first).  Table supports may be proper subsets of the
    ambient sites; evaluation embeds on the fly."""

    sites: SiteSet
    interaction: Interaction
    edges: tuple[Edge, ...]                 # canonical undirected pairs
    tables: Mapping[Edge, FnTable]

    @property
    def n_states(self) -> int:
        return self.interaction.n_states

    @cached_property
    def space(self) -> ConfigSpace:
        return ConfigSpace(self.sites, self.n_states)

    def _move(self, assignment: Sequence[int], edge: Edge):
        po = self.sites.position(edge[0])
        pt = self.sites.position(edge[1])
        a, b = assignment[po], assignment[pt]
        a2, b2 = self.interaction.phi_pair(a, b)
        if (a2, b2) == (a, b):
            return None
        moved = list(assignment)
        moved[po], moved[pt] = a2, b2
        return tuple(moved)

    def edge_value(self, edge: Edge, assignment: Sequence[int]) -> Scalar:
        """omega_edge at an ambient assignment, any orientation."""
        key = canonical_edge(edge)
        if key not in self.tables:
            raise KeyError(f"edge {edge} not part of this form")
        moved = self._move(assignment, edge)
        if moved is None:
            return Fraction(0)
        if edge == key:
            return self.tables[key].evaluate_in(self.sites, assignment)
        return -self.tables[key].evaluate_in(self.sites, moved)

    def dense_table(self, edge: Edge) -> FnTable:
        """omega_edge as a dense table on the ambient sites."""
        values = tuple(self.edge_value(edge, self.space.decode(i))
                       for i in range(self.space.size))
        return FnTable(self.sites, self.n_states, values)

    def is_zero(self, tol: float | None = None) -> bool:
        return all(t.is_zero(tol) for t in self.tables.values())

    def _combine(self, other: "Form", sign: int) -> "Form":
        if self.sites != other.sites or self.edges != other.edges:
            raise MalformedForm("forms live on different windows")
        tables = {}
        for e in self.edges:
            a, b = self.tables[e], other.tables[e]
            support = a.sites.union(b.sites)
            merged = a.embed(support) + (b.embed(support) if sign > 0
                                         else -b.embed(support))
            tables[e] = merged
        return Form(self.sites, self.interaction, self.edges, tables)

    def __add__(self, other: "Form") -> "Form":
        return self._combine(other, +1)

    def __sub__(self, other: "Form") -> "Form":
        return self._combine(other, -1)

    def scale(self, c: Scalar) -> "Form":
        return Form(self.sites, self.interaction, self.edges,
                    {e: t.scale(c) for e, t in self.tables.items()})

    def relabel(self, sigma) -> "Form":
        """Push forward along a site map (forms move like their transitions)."""
        new_sites = sigma.map_siteset(self.sites)
        tables = {}
        for (o, t), table in self.tables.items():
            image = (sigma.apply_or_raise(o), sigma.apply_or_raise(t))
            moved = table.relabel(sigma)
            if image[0] < image[1]:
                tables[image] = moved
            else:
                key = (image[1], image[0])
                support = moved.sites.union(SiteSet(key))
                carrier = Form(support, self.interaction, (key,),
                               {key: _reverse_orientation_table(
                                   moved, image, support, self.interaction)})
                tables[key] = carrier.tables[key]
        edges = tuple(sorted(tables))
        return Form(new_sites, self.interaction, edges, tables)


def _reverse_orientation_table(table: FnTable, oriented: Edge,
                               support: SiteSet,
                               interaction: Interaction) -> FnTable:
    """Table for the canonical orientation given the reversed one:
    omega_can(eta) = -omega_rev(eta^can), zero on fixed configurations."""
    can = (oriented[1], oriented[0])
    space = ConfigSpace(support, interaction.n_states)
    po, pt = support.position(can[0]), support.position(can[1])
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
        values.append(-table.evaluate_in(support, tuple(moved)))
    return FnTable(support, interaction.n_states, tuple(values))


def make_form(sites: SiteSet, interaction: Interaction, edges,
              tables: Mapping[Edge, FnTable], *, validate: bool = True,
              tol: float | None = None,
              state_cap: int = DEFAULT_STATE_CAP) -> Form:
    """Build a form from per-edge tables (either orientation; missing edges
    get the zero table) and check the structural constraints."""
    pairs = canonical_pairs(edges)
    pair_set = set(pairs)
    stored: dict[Edge, FnTable] = {}
    reversed_given: dict[Edge, FnTable] = {}
    for edge, table in tables.items():
        edge = tuple(edge)
        key = canonical_edge(edge)
        if key not in pair_set:
            raise MalformedForm(f"table for edge {edge} outside the edge set",
                                edge=edge)
        if not table.sites.is_subset_of(sites):
            raise MalformedForm(f"table support for {edge} leaves the window",
                                edge=edge)
        if edge == key:
            if key in stored:
                raise MalformedForm(f"duplicate table for edge {key}", edge=key)
            stored[key] = table
        else:
            reversed_given[key] = table
    for key, rev in reversed_given.items():
        support = rev.sites.union(SiteSet(key))
        derived = _reverse_orientation_table(rev, (key[1], key[0]), support,
                                             interaction)
        if key not in stored:
            stored[key] = derived
        elif validate:
            a = stored[key].embed(support.union(stored[key].sites))
            b = derived.embed(support.union(stored[key].sites))
            if not a.equals(b, tol):
                raise MalformedForm(
                    f"tables for the two orientations of {key} are not "
                    "alternating-consistent", edge=key)
    for key in pairs:
        if key not in stored:
            stored[key] = fn_zeros(SiteSet(key), interaction.n_states)

    form = Form(sites, interaction, pairs, stored)
    if validate:
        validate_form(form, tol=tol, state_cap=state_cap)
    return form


def validate_form(form: Form, tol: float | None = None,
                  state_cap: int = DEFAULT_STATE_CAP):
    """Enumerate the window and check: zero on fixed configurations, and
    agreement across directed edges with a common target."""
    space = form.space
    guard_space(space.size, state_cap)
    directed = [e for pair in form.edges for e in (pair, (pair[1], pair[0]))]
    for idx in range(space.size):
        assignment = space.decode(idx)
        by_target: dict[tuple, tuple[Edge, Scalar]] = {}
        for e in directed:
            moved = form._move(assignment, e)
            value = form.edge_value(e, assignment)
            if moved is None:
                if not scalar_is_zero(value, tol):
                    raise MalformedForm(
                        f"omega_{e} nonzero on a fixed configuration",
                        edge=e, assignment=assignment)
                continue
            if moved in by_target:
                other_edge, other_value = by_target[moved]
                if not scalar_eq(value, other_value, tol):
                    raise MalformedForm(
                        f"omega_{e} and omega_{other_edge} disagree on a "
                        "shared transition", assignment=assignment)
            else:
                by_target[moved] = (e, value)


# ---------------------------------------------------------------------------
# differential and paths
# ---------------------------------------------------------------------------

def differential(f: FnTable, interaction: Interaction, locale: Locale,
                 state_cap: int = DEFAULT_STATE_CAP) -> Form:
    """The gradient form: (df)_e(eta) = f(eta^e) - f(eta)."""
    guard_space(f.space.size, state_cap)
    pairs = canonical_pairs(edges_within(locale, f.sites))
    space = f.space
    tables = {}
    for e in pairs:
        po, pt = f.sites.position(e[0]), f.sites.position(e[1])
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
            values.append(f.value_at(tuple(moved)) - f.values[idx])
        tables[e] = FnTable(f.sites, f.n_states, tuple(values))
    return Form(f.sites, interaction, pairs, tables)


@dataclass(frozen=True)
class Path:
    """A start configuration and a sequence of edges, each a genuine
    transition."""

    start: Config
    edges: tuple[Edge, ...]

    @property
    def n_steps(self) -> int:
        return len(self.edges)


def path_configs(path: Path, interaction: Interaction):
    """All configurations along the path; raises InvalidPath on a step that
    fixes the configuration or leaves the site set."""
    configs = [path.start]
    current = path.start
    for k, e in enumerate(path.edges):
        if e[0] not in current.sites or e[1] not in current.sites:
            raise InvalidPath(f"step {k} edge {e} leaves the site set",
                              step=k, edge=e)
        po, pt = current.sites.position(e[0]), current.sites.position(e[1])
        a, b = current.assignment[po], current.assignment[pt]
        a2, b2 = interaction.phi_pair(a, b)
        if (a2, b2) == (a, b):
            raise InvalidPath(f"step {k} fixes the configuration", step=k, edge=e)
        moved = list(current.assignment)
        moved[po], moved[pt] = a2, b2
        current = Config(current.sites, tuple(moved))
        configs.append(current)
    return configs


def is_closed_path(path: Path, interaction: Interaction) -> bool:
    configs = path_configs(path, interaction)
    return configs[0] == configs[-1]


def path_integral(form: Form, path: Path) -> Scalar:
    """Sum of omega over the path's transitions."""
    if path.start.sites != form.sites:
        raise InvalidPath("path configurations live outside the form's window")
    configs = path_configs(path, form.interaction)
    total = Fraction(0)
    for eta, e in zip(configs, path.edges):
        total = total + form.edge_value(e, eta.assignment)
    return total


# ---------------------------------------------------------------------------
# potentials
# ---------------------------------------------------------------------------

def solve_potential(form: Form, mu: Optional[Measure] = None, *,
                    tol: float | None = None,
                    state_cap: int = DEFAULT_STATE_CAP) -> FnTable:
    """Integrate the form to a potential f with df = omega, or raise
    NotClosed with a witness cycle of nonzero integral.

    A spanning forest is rooted at the lexicographically smallest
    configuration of each connected component (potential 0 there), values
    are propagated along tree transitions, and every remaining transition is
    checked for consistency.  If ``mu`` is given the result is shifted to
    zero mean.
    """
    space = form.space
    guard_space(space.size, state_cap)

    adjacency: list[list[tuple[int, Edge]]] = [[] for _ in range(space.size)]
    directed = [e for pair in form.edges for e in (pair, (pair[1], pair[0]))]
    for idx in range(space.size):
        assignment = space.decode(idx)
        for e in directed:
            moved = form._move(assignment, e)
            if moved is not None:
                adjacency[idx].append((space.encode(moved), e))

    uf = UnionFind(space.size)
    for idx in range(space.size):
        for dst, _ in adjacency[idx]:
            uf.union(idx, dst)
    roots: dict[int, int] = {}
    for idx in range(space.size):
        r = uf.find(idx)
        if r not in roots or space.decode(idx) < space.decode(roots[r]):
            roots[r] = idx

    potential: list[Optional[Scalar]] = [None] * space.size
    parent: dict[int, tuple[int, Edge]] = {}
    for root in sorted(roots.values()):
        potential[root] = Fraction(0)
        frontier = [root]
        while frontier:
            nxt = []
            for src in frontier:
                src_assignment = space.decode(src)
                for dst, e in adjacency[src]:
                    if potential[dst] is None:
                        potential[dst] = (potential[src]
                                          + form.edge_value(e, src_assignment))
                        parent[dst] = (src, e)
                        nxt.append(dst)
            frontier = nxt

    # consistency over every remaining transition record
    for idx in range(space.size):
        assignment = space.decode(idx)
        for dst, e in adjacency[idx]:
            value = form.edge_value(e, assignment)
            if not scalar_eq(potential[dst] - potential[idx], value, tol):
                raise _not_closed(form, space, parent, idx, e, dst,
                                  potential)

    table = FnTable(form.sites, form.n_states, tuple(potential))
    if mu is not None:
        table = table.shift(-expectation(table, mu))
    return table


def _tree_steps(space: ConfigSpace, parent, idx: int):
    """Directed steps (src index, edge, dst index) from the root to idx."""
    steps = []
    while idx in parent:
        src, e = parent[idx]
        steps.append((src, e, idx))
        idx = src
    steps.reverse()
    return steps


def _not_closed(form: Form, space: ConfigSpace, parent, src: int, edge: Edge,
                dst: int, potential) -> NotClosed:
    to_src = _tree_steps(space, parent, src)
    to_dst = _tree_steps(space, parent, dst)
    shared = 0
    while (shared < len(to_src) and shared < len(to_dst)
           and to_src[shared] == to_dst[shared]):
        shared += 1
    steps = list(to_src[shared:])
    steps.append((src, edge, dst))
    for a, e, b in reversed(to_dst[shared:]):
        steps.append((b, (e[1], e[0]), a))
    start_index = steps[0][0] if steps else src
    witness = Path(Config(form.sites, space.decode(start_index)),
                   tuple(e for _, e, _ in steps))
    integral = (potential[src] - potential[dst]
                + form.edge_value(edge, space.decode(src)))
    return NotClosed("form has a cycle with nonzero integral",
                     witness=witness, integral=integral,
                     cycle_length=len(steps))


# ---------------------------------------------------------------------------
# kernel of the differential
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelBasis:
    sites: SiteSet
    n_components: int
    component_labels: tuple[int, ...]
    indicators: tuple[FnTable, ...]
    mean_zero: tuple[FnTable, ...]


def kernel_basis(sites: SiteSet, interaction: Interaction, locale: Locale,
                 mu: Measure, state_cap: int = DEFAULT_STATE_CAP) -> KernelBasis:
    """Component indicators span the kernel of the differential; dropping
    the last and centering by measure spans its mean-zero part."""
    graph = transition_graph(sites, interaction, locale, state_cap)
    labels = graph.component_labels
    m = graph.n_components
    n_states = interaction.n_states
    indicators = []
    for comp in range(m):
        values = tuple(Fraction(1) if labels[i] == comp else Fraction(0)
                       for i in range(graph.space.size))
        indicators.append(FnTable(sites, n_states, values))
    win = materialize(mu, sites, state_cap)
    mean_zero = []
    for ind in indicators[:-1]:
        mass = expectation(ind, win)
        mean_zero.append(ind - fn_constant(sites, n_states, mass))
    return KernelBasis(sites, m, labels, tuple(indicators), tuple(mean_zero))


def closed_form_space_dimension(sites: SiteSet, interaction: Interaction,
                                locale: Locale,
                                state_cap: int = DEFAULT_STATE_CAP) -> int:
    """Brute-force dimension of the space of closed forms: one degree of
    freedom per unordered transition pair, minus the rank of the
    fundamental-cycle constraints of a spanning forest."""
    graph = transition_graph(sites, interaction, locale, state_cap)
    pairs = sorted({(min(s, d), max(s, d)) for s, _, d in graph.records})
    dof = {p: k for k, p in enumerate(pairs)}
    adjacency: dict[int, list[int]] = {}
    for a, b in pairs:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)

    parent: dict[int, int] = {}
    visited: set[int] = set()
    tree_pairs = set()
    for start in sorted(adjacency):
        if start in visited:
            continue
        visited.add(start)
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in sorted(adjacency[u]):
                    if v not in visited:
                        visited.add(v)
                        parent[v] = u
                        tree_pairs.add((min(u, v), max(u, v)))
                        nxt.append(v)
            frontier = nxt

    def steps_to_root(x):
        out = []
        while x in parent:
            out.append((parent[x], x))
            x = parent[x]
        out.reverse()
        return out

    rows = []
    for a, b in pairs:
        if (a, b) in tree_pairs:
            continue
        pa, pb = steps_to_root(a), steps_to_root(b)
        shared = 0
        while shared < len(pa) and shared < len(pb) and pa[shared] == pb[shared]:
            shared += 1
        row = [Fraction(0)] * len(pairs)
        for u, v in pa[shared:]:
            row[dof[(min(u, v), max(u, v))]] += 1 if u < v else -1
        row[dof[(a, b)]] += 1 if a < b else -1
        for u, v in reversed(pb[shared:]):
            row[dof[(min(u, v), max(u, v))]] += -1 if u < v else 1
        rows.append(row)
    return len(pairs) - (linalg.rank(rows) if rows else 0)


# ---------------------------------------------------------------------------
# projection of forms
# ---------------------------------------------------------------------------

def project_form(form: Form, sub: SiteSet, mu: Measure,
                 locale: Optional[Locale] = None, *,
                 check_ordinary: bool = True, validate: bool = True,
                 tol: float | None = None,
                 state_cap: int = DEFAULT_STATE_CAP) -> Form:
    """Project every edge table onto the smaller window.  The measure must
    satisfy the edge-compatibility identity for the result to be a form
    again; product measures always do, window measures are checked."""
    if not sub.is_subset_of(form.sites):
        raise NotSubset("projection target is not a subset of the window")
    if check_ordinary and isinstance(mu, WindowMeasure):
        if locale is None:
            raise ValueError("locale required to check the measure")
        report = is_ordinary(sub, form.sites, mu, form.interaction, locale,
                             tol=tol, state_cap=state_cap)
        if not report.ok:
            v = report.violations[0]
            raise NotOrdinary(
                "measure fails edge compatibility; projection would not "
                "preserve forms",
                edge=v.edge, assignment=v.sup_assignment,
                lhs=str(v.lhs), rhs=str(v.rhs),
                n_violations=len(report.violations))
    sub_pairs = tuple(e for e in form.edges
                      if e[0] in sub and e[1] in sub)
    tables = {}
    for e in sub_pairs:
        dense = form.dense_table(e)
        tables[e] = conditional_expectation(dense, sub, mu)
    if validate:
        return make_form(sub, form.interaction, sub_pairs, tables,
                         validate=True, tol=tol, state_cap=state_cap)
    return Form(sub, form.interaction, sub_pairs, tables)
