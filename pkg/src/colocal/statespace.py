"""Sites, interactions, configurations, and transitions.

The underlying space is a finite simple symmetric directed graph over integer
site ids.  Lattice windows and tori come with coordinate metadata: in one
dimension a site id is the coordinate itself; in higher dimensions the id is
the row-major rank of the coordinate inside the box (most negative corner
first), so that sorting ids coincides with lexicographic coordinate order.

Configurations over a finite site set are indexed by mixed-radix encoding:
sites ascending, the state index at a site is one digit, and the smallest
site is the least significant digit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    ActionLeavesWindow,
    EdgeOutsideSiteSet,
    EmptySet,
    NotConnected,
    NotSimple,
    NotSymmetric,
    SizeTooSmall,
    SpaceTooLarge,
)

#: default cap on the number of configurations enumerated at once
DEFAULT_STATE_CAP = 1 << 20

#: default cap on |site set| for subset-indexed expansions
DEFAULT_SUBSET_CAP = 16

Edge = tuple[int, int]


# ---------------------------------------------------------------------------
# lattice metadata
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeMeta:
    """Coordinate chart for a lattice-generated locale.

    ``kind`` is "window" (box ``{-r..r}^d``) or "torus" (``prod Z/L_i``).
    """

    dim: int
    kind: str
    radius: Optional[int] = None
    sizes: Optional[tuple[int, ...]] = None

    def in_window(self, coord: tuple[int, ...]) -> bool:
        if self.kind == "window":
            return all(abs(c) <= self.radius for c in coord)
        return all(0 <= c < s for c, s in zip(coord, self.sizes))

    def coord_to_site(self, coord: Sequence[int]) -> Optional[int]:
        coord = tuple(coord)
        if len(coord) != self.dim or not self.in_window(coord):
            return None
        if self.kind == "window":
            if self.dim == 1:
                return coord[0]
            width = 2 * self.radius + 1
            site = 0
            for c in coord:
                site = site * width + (c + self.radius)
            return site
        site = 0
        for c, s in zip(coord, self.sizes):
            site = site * s + c
        return site

    def site_to_coord(self, site: int) -> tuple[int, ...]:
        if self.kind == "window":
            if self.dim == 1:
                return (site,)
            width = 2 * self.radius + 1
            digits = []
            for _ in range(self.dim):
                digits.append(site % width - self.radius)
                site //= width
            return tuple(reversed(digits))
        digits = []
        for s in reversed(self.sizes):
            digits.append(site % s)
            site //= s
        return tuple(reversed(digits))

    def translate_coord(self, coord: tuple[int, ...], vector: Sequence[int]):
        moved = tuple(c + v for c, v in zip(coord, vector))
        if self.kind == "torus":
            moved = tuple(c % s for c, s in zip(moved, self.sizes))
        return moved

    def all_coords(self):
        if self.kind == "window":
            rng = range(-self.radius, self.radius + 1)
            return itertools.product(rng, repeat=self.dim)
        return itertools.product(*(range(s) for s in self.sizes))


# ---------------------------------------------------------------------------
# locale
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Locale:
    """Finite simple symmetric directed site graph, optionally with lattice
    coordinates."""

    sites: tuple[int, ...]
    edges: frozenset[Edge]
    lattice: Optional[LatticeMeta] = None

    @cached_property
    def _adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {s: [] for s in self.sites}
        for o, t in self.edges:
            adj[o].append(t)
        return {s: tuple(sorted(n)) for s, n in adj.items()}

    def neighbors(self, site: int) -> tuple[int, ...]:
        return self._adjacency[site]

    def distances_from(self, source: int) -> dict[int, int]:
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for s in frontier:
                for n in self.neighbors(s):
                    if n not in dist:
                        dist[n] = dist[s] + 1
                        nxt.append(n)
            frontier = nxt
        return dist

    def distance(self, a: int, b: int) -> int:
        return self.distances_from(a)[b]

    def coord_of(self, site: int) -> tuple[int, ...]:
        if self.lattice is None:
            raise ValueError("locale has no lattice metadata")
        return self.lattice.site_to_coord(site)

    def site_at(self, coord: Sequence[int]) -> Optional[int]:
        if self.lattice is None:
            raise ValueError("locale has no lattice metadata")
        return self.lattice.coord_to_site(coord)


def build_locale(sites: Iterable[int], edges: Iterable[Edge],
                 lattice: Optional[LatticeMeta] = None) -> Locale:
    """Validate and build a locale.

    Raises NotSimple / NotSymmetric / NotConnected.
    """
    site_list = list(sites)
    if len(set(site_list)) != len(site_list):
        raise ValueError("duplicate site ids")
    site_set = set(site_list)
    edge_list = [tuple(e) for e in edges]
    seen = set()
    for e in edge_list:
        if len(e) != 2 or e[0] not in site_set or e[1] not in site_set:
            raise ValueError(f"edge {e} has an endpoint outside the site list")
        if e[0] == e[1]:
            raise NotSimple(f"self-loop at site {e[0]}", edge=e)
        if e in seen:
            raise NotSimple(f"duplicate edge {e}", edge=e)
        seen.add(e)
    for o, t in seen:
        if (t, o) not in seen:
            raise NotSymmetric(f"edge ({o}, {t}) has no reverse", edge=(o, t))
    locale = Locale(tuple(sorted(site_list)), frozenset(seen), lattice)
    if site_list:
        reached = locale.distances_from(locale.sites[0])
        if len(reached) != len(site_list):
            missing = sorted(site_set - set(reached))
            raise NotConnected("site graph is not connected", missing=missing)
    return locale


def lattice_window(dim: int, radius: Optional[int] = None,
                   sizes: Optional[Sequence[int]] = None) -> Locale:
    """Box window ``{-r..r}^dim`` or torus with the given sizes, with
    nearest-neighbor edges (L1 distance 1, wrapped on the torus)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if (radius is None) == (sizes is None):
        raise ValueError("give exactly one of radius or sizes")
    if radius is not None:
        if radius < 0:
            raise ValueError("radius must be >= 0")
        meta = LatticeMeta(dim, "window", radius=radius)
    else:
        sizes = tuple(sizes)
        if len(sizes) != dim:
            raise ValueError("need one size per dimension")
        small = [s for s in sizes if s < 3]
        if small:
            raise SizeTooSmall(
                f"torus sizes {sizes} too small: wrap-around edges collide",
                sizes=list(sizes))
        meta = LatticeMeta(dim, "torus", sizes=sizes)

    coords = list(meta.all_coords())
    sites = [meta.coord_to_site(c) for c in coords]
    edges = set()
    for c in coords:
        s = meta.coord_to_site(c)
        for axis in range(dim):
            for step in (-1, 1):
                nb = meta.translate_coord(c, tuple(step if i == axis else 0
                                                   for i in range(dim)))
                if meta.kind == "window" and not meta.in_window(nb):
                    continue
                edges.add((s, meta.coord_to_site(nb)))
    return build_locale(sites, edges, meta)


# ---------------------------------------------------------------------------
# interaction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interaction:
    """Finite state set with a designated base state and a pair map phi on
    state-index pairs."""

    states: tuple
    base: object
    phi: tuple[tuple[tuple[int, int], ...], ...]  # phi[i][j] = (i', j')

    @property
    def n_states(self) -> int:
        return len(self.states)

    @cached_property
    def base_index(self) -> int:
        return self.states.index(self.base)

    def phi_pair(self, i: int, j: int) -> tuple[int, int]:
        return self.phi[i][j]

    def changed_pairs(self):
        for i in range(self.n_states):
            for j in range(self.n_states):
                if self.phi[i][j] != (i, j):
                    yield (i, j), self.phi[i][j]


def make_interaction(states: Sequence, base,
                     phi_map: Optional[Mapping] = None) -> Interaction:
    """Build an interaction from a map of changed pairs (identity elsewhere).

    ``phi_map`` keys and values are pairs of state labels.
    """
    states = tuple(states)
    if base not in states:
        raise ValueError(f"base state {base!r} not among states")
    index = {s: k for k, s in enumerate(states)}
    n = len(states)
    table = [[(i, j) for j in range(n)] for i in range(n)]
    for (a, b), (c, d) in (phi_map or {}).items():
        table[index[a]][index[b]] = (index[c], index[d])
    return Interaction(states, base, tuple(tuple(row) for row in table))


def exclusion_interaction(n_states: int = 2) -> Interaction:
    """phi swaps the two sides of every edge (simple exclusion for two
    states, multi-color exclusion beyond)."""
    states = tuple(range(n_states))
    phi = {(i, j): (j, i) for i in states for j in states if i != j}
    return make_interaction(states, 0, phi)


def identity_interaction(n_states: int = 2) -> Interaction:
    return make_interaction(tuple(range(n_states)), 0, {})


@dataclass(frozen=True)
class InteractionReport:
    violations: tuple  # ((i, j), orbit) per failing changed pair

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_interaction(interaction: Interaction) -> InteractionReport:
    """Check the reversibility condition: on every changed pair,
    swap-then-phi applied twice returns the original pair."""
    bad = []
    for (i, j), _ in interaction.changed_pairs():
        a, b = interaction.phi_pair(i, j)
        c, d = interaction.phi_pair(b, a)  # hat-i then phi
        final = (d, c)  # trailing hat-i
        if final != (i, j):
            bad.append(((i, j), final))
    return InteractionReport(tuple(bad))


# ---------------------------------------------------------------------------
# site sets and configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SiteSet:
    sites: tuple[int, ...]

    def __post_init__(self):
        if list(self.sites) != sorted(set(self.sites)):
            raise ValueError("sites must be sorted and duplicate-free")

    def __len__(self):
        return len(self.sites)

    def __iter__(self):
        return iter(self.sites)

    def __contains__(self, site):
        return site in self._positions

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {s: k for k, s in enumerate(self.sites)}

    def position(self, site: int) -> int:
        return self._positions[site]

    def is_subset_of(self, other: "SiteSet") -> bool:
        return set(self.sites) <= set(other.sites)

    def union(self, other: "SiteSet") -> "SiteSet":
        return SiteSet(tuple(sorted(set(self.sites) | set(other.sites))))

    def intersection(self, other: "SiteSet") -> "SiteSet":
        return SiteSet(tuple(sorted(set(self.sites) & set(other.sites))))

    def difference(self, other: "SiteSet") -> "SiteSet":
        return SiteSet(tuple(sorted(set(self.sites) - set(other.sites))))


def siteset(sites: Iterable[int], locale: Optional[Locale] = None) -> SiteSet:
    ss = SiteSet(tuple(sorted(set(sites))))
    if locale is not None and not set(ss.sites) <= set(locale.sites):
        raise ValueError("site set not contained in the locale")
    return ss


@dataclass(frozen=True)
class Config:
    sites: SiteSet
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != len(self.sites):
            raise ValueError("assignment length != number of sites")

    def state_at(self, site: int) -> int:
        return self.assignment[self.sites.position(site)]


@dataclass(frozen=True)
class ConfigSpace:
    """Mixed-radix index <-> configuration bijection over S^Lambda."""

    sites: SiteSet
    n_states: int

    @cached_property
    def size(self) -> int:
        return self.n_states ** len(self.sites)

    def encode(self, assignment: Sequence[int]) -> int:
        idx = 0
        for digit in reversed(assignment):
            idx = idx * self.n_states + digit
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        digits = []
        for _ in range(len(self.sites)):
            digits.append(index % self.n_states)
            index //= self.n_states
        return tuple(digits)

    def assignments(self):
        return (self.decode(i) for i in range(self.size))

    def config(self, index: int) -> Config:
        return Config(self.sites, self.decode(index))


def enumerate_configs(sites: SiteSet, interaction: Interaction,
                      state_cap: int = DEFAULT_STATE_CAP) -> ConfigSpace:
    space = ConfigSpace(sites, interaction.n_states)
    guard_space(space.size, state_cap, what=f"S^Lambda with |Lambda|={len(sites)}")
    return space


def guard_space(size: int, state_cap: int, what: str = "configuration space"):
    if size > state_cap:
        raise SpaceTooLarge(f"{what} has {size} configurations (cap {state_cap})",
                            size=size, cap=state_cap)


def apply_transition(eta: Config, edge: Edge, interaction: Interaction) -> Config:
    """Apply phi across ``edge``; all other sites unchanged."""
    o, t = edge
    if o not in eta.sites or t not in eta.sites:
        raise EdgeOutsideSiteSet(f"edge {edge} leaves the site set", edge=edge)
    po, pt = eta.sites.position(o), eta.sites.position(t)
    new_o, new_t = interaction.phi_pair(eta.assignment[po], eta.assignment[pt])
    assignment = list(eta.assignment)
    assignment[po], assignment[pt] = new_o, new_t
    return Config(eta.sites, tuple(assignment))


# ---------------------------------------------------------------------------
# transition graph
# ---------------------------------------------------------------------------

def edges_within(locale: Locale, sites: SiteSet) -> tuple[Edge, ...]:
    """E_Lambda: locale edges with both endpoints in the site set."""
    inside = set(sites.sites)
    return tuple(sorted(e for e in locale.edges
                        if e[0] in inside and e[1] in inside))


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class TransitionGraph:
    """All transitions (eta, eta^e) with eta^e != eta over a site set.

    One record is kept per (configuration, edge) pair even when several edges
    produce the same target, so that per-edge consistency stays checkable;
    ``pairs`` deduplicates to the underlying graph on configurations.
    """

    space: ConfigSpace
    edges: tuple[Edge, ...]
    records: tuple[tuple[int, Edge, int], ...]  # (src index, edge, dst index)

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({(s, d) for s, _, d in self.records}))

    @cached_property
    def component_labels(self) -> tuple[int, ...]:
        uf = UnionFind(self.space.size)
        for s, _, d in self.records:
            uf.union(s, d)
        roots = [uf.find(i) for i in range(self.space.size)]
        order: dict[int, int] = {}
        for r in roots:
            if r not in order:
                order[r] = len(order)
        return tuple(order[r] for r in roots)

    @property
    def n_components(self) -> int:
        return max(self.component_labels, default=-1) + 1


def transition_graph(sites: SiteSet, interaction: Interaction, locale: Locale,
                     state_cap: int = DEFAULT_STATE_CAP) -> TransitionGraph:
    space = enumerate_configs(sites, interaction, state_cap)
    lam_edges = edges_within(locale, sites)
    n = interaction.n_states
    # strides for in-place digit surgery on indices
    stride = {site: n ** k for k, site in enumerate(sites.sites)}
    records = []
    for idx in range(space.size):
        assignment = space.decode(idx)
        for e in lam_edges:
            po, pt = sites.position(e[0]), sites.position(e[1])
            a, b = assignment[po], assignment[pt]
            a2, b2 = interaction.phi_pair(a, b)
            if (a2, b2) == (a, b):
                continue
            dst = idx + (a2 - a) * stride[e[0]] + (b2 - b) * stride[e[1]]
            records.append((idx, e, dst))
    return TransitionGraph(space, lam_edges, tuple(records))


# ---------------------------------------------------------------------------
# group elements (partial site bijections)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SiteMap:
    """Partial injective site map; ``None`` marks images outside the window."""

    pairs: tuple[tuple[int, int], ...]
    label: str = ""

    @cached_property
    def _map(self) -> dict[int, int]:
        return dict(self.pairs)

    def apply(self, site: int) -> Optional[int]:
        return self._map.get(site)

    def apply_or_raise(self, site: int) -> int:
        image = self._map.get(site)
        if image is None:
            raise ActionLeavesWindow(
                f"{self.label or 'group element'} maps site {site} outside the window",
                site=site)
        return image

    def inverse(self) -> "SiteMap":
        return SiteMap(tuple(sorted((b, a) for a, b in self.pairs)),
                       label=f"{self.label}^-1" if self.label else "")

    def map_siteset(self, sites: SiteSet) -> SiteSet:
        return SiteSet(tuple(sorted(self.apply_or_raise(s) for s in sites)))


def translation_map(locale: Locale, vector: Sequence[int]) -> SiteMap:
    """Lattice translation as a site map (partial on windows, total on tori)."""
    if locale.lattice is None:
        raise ValueError("locale has no lattice metadata")
    meta = locale.lattice
    vector = tuple(vector)
    pairs = []
    for s in locale.sites:
        moved = meta.translate_coord(meta.site_to_coord(s), vector)
        image = meta.coord_to_site(moved)
        if image is not None:
            pairs.append((s, image))
    return SiteMap(tuple(pairs), label=f"shift{vector}")


def identity_map(locale: Locale) -> SiteMap:
    return SiteMap(tuple((s, s) for s in locale.sites), label="id")


def permutation_map(mapping: Mapping[int, int], label: str = "") -> SiteMap:
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("site map must be injective")
    return SiteMap(tuple(sorted(mapping.items())), label=label)


@dataclass(frozen=True)
class GroupAction:
    """Generators of a group acting by (partial) automorphisms."""

    generators: tuple[SiteMap, ...]


def lattice_translations(locale: Locale) -> GroupAction:
    """Unit translations along each axis."""
    if locale.lattice is None:
        raise ValueError("locale has no lattice metadata")
    d = locale.lattice.dim
    gens = tuple(translation_map(locale, tuple(1 if i == axis else 0
                                               for i in range(d)))
                 for axis in range(d))
    return GroupAction(gens)


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def site_diameter(sites: SiteSet, locale: Locale) -> int:
    """Max over pairs in the site set of the graph distance in the locale."""
    if len(sites) == 0:
        raise EmptySet("diameter of the empty site set")
    best = 0
    for s in sites:
        dist = locale.distances_from(s)
        for t in sites:
            if dist[t] > best:
                best = dist[t]
    return best
