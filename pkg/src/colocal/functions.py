"""Local-function embeddings, compatible chains, the orthogonal expansion
over subsets, and conserved quantities.

The expansion writes a function on ``S^Lambda`` as a sum of components
indexed by the subsets of Lambda, where the component at ``A`` is killed by
every projection onto a window not containing ``A``.  It exists and is
unique over a product measure; the recursion subtracts, from the projection
onto ``A``, the components of all proper subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import NonProductMeasure, NotSubset, TooManySubsets
from .measure import (
    Measure,
    ProductMeasure,
    StateMeasure,
    conditional_expectation,
)
from .statespace import (
    ConfigSpace,
    DEFAULT_STATE_CAP,
    DEFAULT_SUBSET_CAP,
    Interaction,
    Locale,
    SiteSet,
    site_diameter,
    siteset,
    transition_graph,
)
from .tables import FnTable, fn_constant, site_table

__all__ = [
    "FnTable",
    "CoLocalChain",
    "Expansion",
    "ConservedQuantity",
    "iota_restrict",
    "build_chain",
    "expand_martingale",
    "uniform_radius",
    "conserved_quantities",
    "conserved_colocal",
    "check_iq",
    "IqReport",
    "IqLocaleResult",
]


def iota_restrict(f: FnTable, sub: SiteSet, interaction: Interaction) -> FnTable:
    """Restrict by base-state extension: evaluate f with every site outside
    ``sub`` pinned at the base state."""
    if not sub.is_subset_of(f.sites):
        raise NotSubset("restriction target is not a subset of the domain")
    if sub == f.sites:
        return f
    base = interaction.base_index
    sub_space = ConfigSpace(sub, f.n_states)
    values = []
    for idx in range(sub_space.size):
        assignment = sub_space.decode(idx)
        full = tuple(assignment[sub.position(s)] if s in sub else base
                     for s in f.sites)
        values.append(f.value_at(full))
    return FnTable(sub, f.n_states, tuple(values))


# ---------------------------------------------------------------------------
# compatible chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoLocalChain:
    """Finite truncation of a projective family: nested windows with tables
    related by conditional expectation."""

    windows: tuple[SiteSet, ...]
    tables: tuple[FnTable, ...]
    mu: Measure

    def verify_compatibility(self, tol: float | None = None) -> bool:
        for i in range(len(self.windows) - 1):
            projected = conditional_expectation(self.tables[i + 1],
                                                self.windows[i], self.mu)
            if not projected.equals(self.tables[i], tol):
                return False
        return True


def build_chain(f: FnTable, windows: Sequence[SiteSet], mu: Measure) -> CoLocalChain:
    """Chain of projections of ``f`` onto a nested family of windows; the
    largest window must be the domain of ``f``."""
    windows = tuple(windows)
    for i in range(len(windows) - 1):
        if not windows[i].is_subset_of(windows[i + 1]):
            raise NotSubset(f"windows {i} and {i + 1} are not nested")
    if not windows or windows[-1] != f.sites:
        raise NotSubset("last window must equal the function's site set")
    tables = tuple(conditional_expectation(f, w, mu) for w in windows)
    return CoLocalChain(windows, tables, mu)


# ---------------------------------------------------------------------------
# expansion over subsets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Expansion:
    sites: SiteSet
    n_states: int
    nu: ProductMeasure
    components: dict[tuple[int, ...], FnTable]  # keyed by sorted site tuples

    def component(self, sub) -> FnTable:
        return self.components[tuple(sorted(sub))]

    def reconstruct(self) -> FnTable:
        total = fn_constant(self.sites, self.n_states, Fraction(0))
        for table in self.components.values():
            total = total + table.embed(self.sites)
        return total

    def nonzero_subsets(self, tol: float | None = None):
        return [sub for sub, table in sorted(self.components.items())
                if not table.is_zero(tol)]

    def subset_bitmask(self, sub: tuple[int, ...]) -> int:
        mask = 0
        for s in sub:
            mask |= 1 << self.sites.position(s)
        return mask


def expand_martingale(f: FnTable, nu: Measure,
                      subset_cap: int = DEFAULT_SUBSET_CAP) -> Expansion:
    """Unique expansion of ``f`` into subset components over a product
    measure.  Requires a state or product measure; window measures that are
    not declared products are rejected."""
    if isinstance(nu, StateMeasure):
        prod = ProductMeasure(nu)
    elif isinstance(nu, ProductMeasure):
        prod = nu
    else:
        raise NonProductMeasure(
            "expansion requires a product measure; got a window measure")
    if len(f.sites) > subset_cap:
        raise TooManySubsets(
            f"|Lambda|={len(f.sites)} exceeds the subset cap {subset_cap}",
            size=len(f.sites), cap=subset_cap)

    components: dict[tuple[int, ...], FnTable] = {}
    sites = list(f.sites)
    for size in range(len(sites) + 1):
        for sub in itertools.combinations(sites, size):
            sub_set = SiteSet(sub)
            projected = conditional_expectation(f, sub_set, prod)
            acc = projected
            for smaller in _proper_subsets(sub):
                acc = acc - components[smaller].embed(sub_set)
            components[sub] = acc
    return Expansion(f.sites, f.n_states, prod, components)


def _proper_subsets(sub: tuple[int, ...]):
    for size in range(len(sub)):
        yield from itertools.combinations(sub, size)


def uniform_radius(expansion: Expansion, locale: Locale,
                   tol: float | None = None) -> int:
    """Smallest R such that every component on a subset of diameter > R
    vanishes; the bound witnessed by the nonzero components."""
    radius = 0
    for sub, table in expansion.components.items():
        if not sub or table.is_zero(tol):
            continue
        diam = site_diameter(siteset(sub), locale)
        if diam > radius:
            radius = diam
    return radius


# ---------------------------------------------------------------------------
# conserved quantities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConservedQuantity:
    """Per-state scalar with zero nu-mean whose site sum is preserved by
    every transition."""

    xi: tuple[Fraction, ...]

    @property
    def n_states(self) -> int:
        return len(self.xi)

    def total(self, assignment: Sequence[int]) -> Fraction:
        return sum((self.xi[a] for a in assignment), Fraction(0))


def conserved_quantities(interaction: Interaction,
                         nu: StateMeasure) -> list[ConservedQuantity]:
    """Deterministic basis of the conserved quantities, normalized to zero
    nu-mean.

    The pair constraints ``xi(s1') + xi(s2') = xi(s1) + xi(s2)`` are solved
    together with ``xi(base) = 0`` by exact elimination (each free state set
    to 1 in turn), then each basis vector is centered by its nu-mean.  The
    centering is a bijection between the base-normalized and mean-normalized
    solution spaces, so the result is a basis.
    """
    n = interaction.n_states
    rows = []
    for (i, j), (i2, j2) in interaction.changed_pairs():
        row = [Fraction(0)] * n
        row[i2] += 1
        row[j2] += 1
        row[i] -= 1
        row[j] -= 1
        if any(v != 0 for v in row):
            rows.append(row)
    base_row = [Fraction(0)] * n
    base_row[interaction.base_index] = Fraction(1)
    rows.append(base_row)

    basis = []
    for vec in linalg.nullspace(rows, n):
        mean = nu.mean(vec)
        basis.append(ConservedQuantity(tuple(v - mean for v in vec)))
    return basis


def conserved_colocal(xi: ConservedQuantity, sites: SiteSet,
                      state_cap: int = DEFAULT_STATE_CAP) -> FnTable:
    """The window sum: eta -> sum over sites of xi(eta_x)."""
    space = ConfigSpace(sites, xi.n_states)
    if space.size > state_cap:
        raise TooManySubsets(f"window of {len(sites)} sites exceeds cap",
                             size=space.size, cap=state_cap)
    total = fn_constant(sites, xi.n_states, Fraction(0))
    for s in sites:
        total = total + site_table(sites, xi.n_states, s, xi.xi)
    return total


# ---------------------------------------------------------------------------
# irreducible quantification checker
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IqLocaleResult:
    locale: Locale
    ok: bool
    # (totals, assignment in one component, assignment in another)
    witnesses: tuple[tuple[tuple[Fraction, ...], tuple[int, ...], tuple[int, ...]], ...]


@dataclass(frozen=True)
class IqReport:
    basis: tuple[ConservedQuantity, ...]
    results: tuple[IqLocaleResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)


def check_iq(interaction: Interaction, nu: StateMeasure,
             locales: Sequence[Locale],
             state_cap: int = DEFAULT_STATE_CAP) -> IqReport:
    """Refute irreducible quantification on the given locales.

    For each locale, configurations are grouped by their conserved totals and
    the groups are compared with the connected components of the transition
    graph; a group meeting two components yields a witness pair.
    """
    basis = conserved_quantities(interaction, nu)
    results = []
    for locale in locales:
        sites = siteset(locale.sites)
        graph = transition_graph(sites, interaction, locale, state_cap)
        labels = graph.component_labels
        groups: dict[tuple[Fraction, ...], dict[int, int]] = {}
        for idx in range(graph.space.size):
            assignment = graph.space.decode(idx)
            totals = tuple(xi.total(assignment) for xi in basis)
            groups.setdefault(totals, {}).setdefault(labels[idx], idx)
        witnesses = []
        for totals, per_component in sorted(groups.items()):
            if len(per_component) > 1:
                first, second = sorted(per_component.values())[:2]
                witnesses.append((totals, graph.space.decode(first),
                                  graph.space.decode(second)))
        results.append(IqLocaleResult(locale, not witnesses, tuple(witnesses)))
    return IqReport(tuple(basis), tuple(results))
