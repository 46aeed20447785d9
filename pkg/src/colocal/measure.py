"""Probability measures on states and windows, expectations, and the
conditional-expectation projection.

``StateMeasure`` is a strictly positive measure on the state set,
``ProductMeasure`` a symbolic product of state measures (materialized per
window on demand), and ``WindowMeasure`` an explicit strictly positive
measure on ``S^Lambda``.  Strict positivity is required at construction: the
projection divides by marginal weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import NotSubset, SiteSetMismatch
from .scalars import Scalar, scalar_eq
from .statespace import (
    ConfigSpace,
    DEFAULT_STATE_CAP,
    Edge,
    Interaction,
    Locale,
    SiteSet,
    edges_within,
    guard_space,
)
from .tables import FnTable


@dataclass(frozen=True)
class StateMeasure:
    weights: tuple[Scalar, ...]

    def __post_init__(self):
        if any(not w > 0 for w in self.weights):
            raise ValueError("state weights must be strictly positive")
        total = sum(self.weights)
        if not scalar_eq(total, 1, None if isinstance(total, Fraction) else 1e-9):
            raise ValueError(f"state weights sum to {total}, expected 1")

    @property
    def n_states(self) -> int:
        return len(self.weights)

    def mean(self, per_state: Sequence[Scalar]) -> Scalar:
        return sum(w * v for w, v in zip(self.weights, per_state))


def state_measure(weights: Sequence[Scalar]) -> StateMeasure:
    return StateMeasure(tuple(Fraction(w) if not isinstance(w, float) else w
                              for w in weights))


def bernoulli(p: Scalar = Fraction(1, 2)) -> StateMeasure:
    p = Fraction(p) if not isinstance(p, float) else p
    return StateMeasure((1 - p, p))


def uniform_states(n_states: int) -> StateMeasure:
    return StateMeasure(tuple([Fraction(1, n_states)] * n_states))


@dataclass(frozen=True)
class ProductMeasure:
    """Product of per-site state measures; homogeneous unless ``per_site``
    overrides individual sites."""

    base: StateMeasure
    per_site: Optional[Mapping[int, StateMeasure]] = None

    @property
    def n_states(self) -> int:
        return self.base.n_states

    def factor(self, site: int) -> StateMeasure:
        if self.per_site and site in self.per_site:
            return self.per_site[site]
        return self.base

    def config_weight(self, sites: SiteSet, assignment: Sequence[int]) -> Scalar:
        w = Fraction(1)
        for s, digit in zip(sites, assignment):
            w = w * self.factor(s).weights[digit]
        return w

    def materialize(self, sites: SiteSet,
                    state_cap: int = DEFAULT_STATE_CAP) -> "WindowMeasure":
        space = ConfigSpace(sites, self.n_states)
        guard_space(space.size, state_cap)
        values = tuple(self.config_weight(sites, space.decode(i))
                       for i in range(space.size))
        return WindowMeasure(sites, self.n_states, values)


def product_measure(nu: StateMeasure,
                    per_site: Optional[Mapping[int, StateMeasure]] = None) -> ProductMeasure:
    return ProductMeasure(nu, dict(per_site) if per_site else None)


@dataclass(frozen=True)
class WindowMeasure:
    sites: SiteSet
    n_states: int
    weights: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.weights) != self.n_states ** len(self.sites):
            raise ValueError("weight count != n_states ** n_sites")
        if any(not w > 0 for w in self.weights):
            raise ValueError("window weights must be strictly positive")
        total = sum(self.weights)
        exact = all(not isinstance(w, float) for w in self.weights)
        if not scalar_eq(total, 1, None if exact else 1e-9):
            raise ValueError(f"window weights sum to {total}, expected 1")

    @property
    def space(self) -> ConfigSpace:
        return ConfigSpace(self.sites, self.n_states)

    def weight_of(self, assignment: Sequence[int]) -> Scalar:
        return self.weights[self.space.encode(assignment)]


Measure = Union[StateMeasure, ProductMeasure, WindowMeasure]


def window_measure_from_raw(sites: SiteSet, n_states: int,
                            raw: Sequence[Scalar]) -> WindowMeasure:
    """Normalize strictly positive raw weights into a window measure."""
    total = sum(Fraction(w) if not isinstance(w, float) else w for w in raw)
    return WindowMeasure(sites, n_states, tuple(w / total for w in raw))


def _as_product(mu: Measure) -> Optional[ProductMeasure]:
    if isinstance(mu, StateMeasure):
        return ProductMeasure(mu)
    if isinstance(mu, ProductMeasure):
        return mu
    return None


def materialize(mu: Measure, sites: SiteSet,
                state_cap: int = DEFAULT_STATE_CAP) -> WindowMeasure:
    """Window measure on ``sites`` from any measure description."""
    prod = _as_product(mu)
    if prod is not None:
        return prod.materialize(sites, state_cap)
    if mu.sites == sites:
        return mu
    return pushforward(mu, sites)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def pushforward(mu: WindowMeasure, sub: SiteSet) -> WindowMeasure:
    """Marginal of a window measure on a subset of its sites."""
    if not sub.is_subset_of(mu.sites):
        raise NotSubset("pushforward target is not a subset")
    if sub == mu.sites:
        return mu
    sub_space = ConfigSpace(sub, mu.n_states)
    positions = [mu.sites.position(s) for s in sub]
    out = [Fraction(0)] * sub_space.size
    for idx in range(mu.space.size):
        assignment = mu.space.decode(idx)
        j = sub_space.encode(tuple(assignment[p] for p in positions))
        out[j] = out[j] + mu.weights[idx]
    return WindowMeasure(sub, mu.n_states, tuple(out))


def expectation(f: FnTable, mu: Measure) -> Scalar:
    win = materialize(mu, f.sites)
    if win.sites != f.sites or win.n_states != f.n_states:
        raise SiteSetMismatch("function and measure site sets differ")
    return sum(v * w for v, w in zip(f.values, win.weights))


def inner(f: FnTable, g: FnTable, mu: Measure) -> Scalar:
    """<f, g>_mu = E_mu[f g]."""
    if f.sites != g.sites or f.n_states != g.n_states:
        raise SiteSetMismatch("inner product operands on different site sets")
    win = materialize(mu, f.sites)
    return sum(a * b * w for a, b, w in zip(f.values, g.values, win.weights))


def conditional_expectation(f: FnTable, sub: SiteSet, mu: Measure) -> FnTable:
    """Project f onto C(S^sub): average f over the fibers of the projection,
    weighted by mu and renormalized per fiber.

    For product measures the fiber weight factorizes over the sites being
    integrated out, so no division is needed.
    """
    if not sub.is_subset_of(f.sites):
        raise NotSubset("projection target is not a subset of the domain")
    if sub == f.sites:
        return f
    sub_space = ConfigSpace(sub, f.n_states)
    positions = [f.sites.position(s) for s in sub]

    prod = _as_product(mu)
    if prod is not None:
        off = [(k, s) for k, s in enumerate(f.sites) if s not in sub]
        out = [Fraction(0)] * sub_space.size
        for idx in range(f.space.size):
            assignment = f.space.decode(idx)
            w = Fraction(1)
            for k, s in off:
                w = w * prod.factor(s).weights[assignment[k]]
            j = sub_space.encode(tuple(assignment[p] for p in positions))
            out[j] = out[j] + f.values[idx] * w
        return FnTable(sub, f.n_states, tuple(out))

    win = mu if mu.sites == f.sites else pushforward(mu, f.sites)
    if win.n_states != f.n_states:
        raise SiteSetMismatch("measure and function state counts differ")
    marginal = pushforward(win, sub)
    out = [Fraction(0)] * sub_space.size
    for idx in range(f.space.size):
        assignment = f.space.decode(idx)
        j = sub_space.encode(tuple(assignment[p] for p in positions))
        out[j] = out[j] + f.values[idx] * win.weights[idx]
    return FnTable(sub, f.n_states,
                   tuple(v / w for v, w in zip(out, marginal.weights)))


# ---------------------------------------------------------------------------
# the edge-compatibility ("ordinary") property
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrdinaryViolation:
    sup_assignment: tuple[int, ...]
    edge: Edge
    lhs: Scalar  # mu(eta^e) * mu(eta')
    rhs: Scalar  # mu(eta) * mu(eta'^e)


@dataclass(frozen=True)
class OrdinaryReport:
    sub: SiteSet
    sup: SiteSet
    violations: tuple[OrdinaryViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def is_ordinary(sub: SiteSet, sup: SiteSet, mu: Measure,
                interaction: Interaction, locale: Locale,
                tol: float | None = None,
                state_cap: int = DEFAULT_STATE_CAP) -> OrdinaryReport:
    """Check mu(eta^e) mu(eta') == mu(eta) mu(eta'^e) for every configuration
    eta' on the larger window and every edge inside the smaller one, where
    eta is the projection of eta'.  Product measures satisfy this identity.
    """
    if not sub.is_subset_of(sup):
        raise NotSubset("chain must be nested")
    if _as_product(mu) is not None:
        return OrdinaryReport(sub, sup, ())

    sup_mu = mu if mu.sites == sup else pushforward(mu, sup)
    sub_mu = pushforward(sup_mu, sub)
    sub_space = ConfigSpace(sub, sup_mu.n_states)
    sup_space = sup_mu.space
    positions = [sup.position(s) for s in sub]
    lam_edges = edges_within(locale, sub)
    n = sup_mu.n_states

    violations = []
    for idx in range(sup_space.size):
        assignment = sup_space.decode(idx)
        sub_assignment = tuple(assignment[p] for p in positions)
        for e in lam_edges:
            po, pt = sup.position(e[0]), sup.position(e[1])
            a, b = assignment[po], assignment[pt]
            a2, b2 = interaction.phi_pair(a, b)
            if (a2, b2) == (a, b):
                continue
            moved = list(assignment)
            moved[po], moved[pt] = a2, b2
            sub_moved = list(sub_assignment)
            sub_moved[sub.position(e[0])] = a2
            sub_moved[sub.position(e[1])] = b2
            lhs = sub_mu.weight_of(tuple(sub_moved)) * sup_mu.weights[idx]
            rhs = sub_mu.weight_of(sub_assignment) * sup_mu.weight_of(tuple(moved))
            if not scalar_eq(lhs, rhs, tol):
                violations.append(OrdinaryViolation(assignment, e, lhs, rhs))
    return OrdinaryReport(sub, sup, tuple(violations))
