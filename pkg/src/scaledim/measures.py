"""Frostman-type measures and the mass distribution principle.

The constructive direction: build an atomic measure on a model's skeleton
by seeding mass b^{-ms} on the finest-level cubes of a b-adic hierarchy
and capping upward so no cube at any chain level carries more than its
share.  The checking direction: verify ball-mass growth of any atomic
measure exactly, and turn a verified constant into a certified lower
bound on window cover costs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .covers import ScaleWindow
from .errors import BudgetError, DomainError, InputError
from .estimator import critical_exponent
from .scalefun import ScaleFunction
from .setmodels import CantorSchedule, skeleton

#: Default branching base of the cube hierarchy.
DEFAULT_BASE = 20

#: Hard cap on the number of seeded atoms.
ATOM_CAP = 2_000_000


@dataclass(frozen=True, eq=False)
class FrostmanMeta:
    """Construction record attached to a built measure.

    ``cube_indices`` are the level-``level_fine`` cube indices of the
    atoms, in atom order.  Coarser ancestors follow by exact integer
    division, avoiding float boundary drift for atoms sitting exactly on
    cube edges.
    """

    base: int
    level_fine: int
    chain_length: int
    cube_indices: np.ndarray

    def ancestors(self, level: int) -> np.ndarray:
        """Cube index of each atom at a coarser level."""
        if not 0 <= level <= self.level_fine:
            raise InputError(f"level must lie in [0, {self.level_fine}], got {level}")
        return self.cube_indices // self.base ** (self.level_fine - level)


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """A finitely supported measure on the line.

    Locations are sorted ascending; masses are positive.  After
    normalization the masses sum to 1 and ``pre_normalization_total``
    records the raw total, which is the quantitative content of the
    construction (a vanishing raw total means the exponent was too big).
    """

    locations: np.ndarray
    masses: np.ndarray
    pre_normalization_total: float = 1.0
    meta: Optional[FrostmanMeta] = None

    def __post_init__(self) -> None:
        loc = np.asarray(self.locations, dtype=float)
        mas = np.asarray(self.masses, dtype=float)
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "masses", mas)
        if loc.ndim != 1 or mas.shape != loc.shape:
            raise InputError("locations and masses must be 1-D arrays of equal length")
        if loc.size == 0:
            raise InputError("measure must have at least one atom")
        if np.any(np.diff(loc) < 0.0):
            raise InputError("locations must be sorted ascending")
        if not np.all(mas > 0.0):
            raise InputError("masses must be positive")

    @classmethod
    def from_atoms(
        cls, atoms: Sequence[tuple[float, float]], pre_normalization_total: float = 1.0
    ) -> "AtomicMeasure":
        arr = sorted((float(x), float(w)) for x, w in atoms)
        loc = np.array([x for x, _ in arr])
        mas = np.array([w for _, w in arr])
        return cls(loc, mas, pre_normalization_total)

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    def prefix_masses(self) -> np.ndarray:
        """Cumulative masses with a leading 0, for interval queries."""
        out = np.empty(self.masses.size + 1)
        out[0] = 0.0
        np.cumsum(self.masses, out=out[1:])
        return out

    def to_rows(self) -> list[tuple[float, float]]:
        return [(float(x), float(w)) for x, w in zip(self.locations, self.masses)]


class CubeTree:
    """Occupied b-adic intervals of an atom set, per level.

    Level-k cubes are [a*b^-k, (a+1)*b^-k]; the parent of index a is
    a // b.  Only cubes containing at least one atom are stored; coarser
    levels come from the finest indices by integer division, so children
    always partition their parents exactly.
    """

    def __init__(self, base: int, level_fine: int, fine_indices: np.ndarray):
        if base < 2:
            raise InputError(f"base must be >= 2, got {base}")
        if level_fine < 0:
            raise InputError(f"level_fine must be >= 0, got {level_fine}")
        self.base = base
        self.level_fine = level_fine
        self._fine = np.asarray(fine_indices, dtype=np.int64)

    @classmethod
    def from_measure(cls, mu: "AtomicMeasure", base: int, level_fine: int) -> "CubeTree":
        if mu.meta is not None and mu.meta.base == base:
            if level_fine == mu.meta.level_fine:
                return cls(base, level_fine, mu.meta.cube_indices)
            if level_fine < mu.meta.level_fine:
                return cls(base, level_fine, mu.meta.ancestors(level_fine))
        return cls(base, level_fine, cube_indices(mu.locations, base, level_fine))

    @staticmethod
    def parent(index: int, base: int) -> int:
        return index // base

    def atom_cubes(self, level: int) -> np.ndarray:
        """Per-atom cube index at one level (atom order)."""
        if not 0 <= level <= self.level_fine:
            raise InputError(f"level must lie in [0, {self.level_fine}], got {level}")
        return self._fine // self.base ** (self.level_fine - level)

    def occupied(self, level: int) -> np.ndarray:
        """Sorted unique indices of occupied cubes at one level."""
        return np.unique(self.atom_cubes(level))

    def interval(self, level: int, index: int) -> tuple[float, float]:
        u = float(self.base) ** (-level)
        return index * u, (index + 1) * u


def cube_indices(locations: np.ndarray, base: int, level: int) -> np.ndarray:
    """b-adic cube index of each location at the given level."""
    scale = float(base) ** level
    return np.floor(np.asarray(locations, dtype=float) * scale).astype(np.int64)


def frostman_levels(
    phi: ScaleFunction, log_delta: float, base: int = DEFAULT_BASE
) -> tuple[int, int]:
    """Hierarchy depth (m) and cap-chain length (l) for one window.

    m is the largest integer with phi(delta) <= b^-m / 2, so the seeded
    cubes sit just below the window bottom; l is the largest integer with
    8 * b^-(m-l) <= delta, so the coarsest capped level stays comfortably
    inside the window.  A window too narrow for the hierarchy (l < 0) is
    rejected.
    """
    log_b = math.log(base)
    log_phi = phi.eval_phi_log(log_delta)
    m = math.floor(-(math.log(2.0) + log_phi) / log_b + 1e-12)
    le = math.floor(m - (math.log(8.0) - log_delta) / log_b + 1e-12)
    if m < 0 or le < 0:
        raise DomainError(
            "window too narrow for the cube hierarchy: need "
            f"phi(delta) <= delta/16 with room to spare (m={m}, l={le})"
        )
    return m, le


def build_frostman_measure(
    model,
    s: float,
    log_delta: float,
    phi: ScaleFunction,
    *,
    base: int = DEFAULT_BASE,
) -> AtomicMeasure:
    """Seed-and-cap measure adapted to the window [phi(delta), delta].

    One atom of mass b^-ms is placed at the leftmost skeleton point of
    each level-m cube meeting the model; then, from the finest chain
    level upward, the mass of every level-(m-k-1) cube is scaled down to
    at most b^-(m-k-1)s.  The result is normalized, with the
    pre-normalization total kept on the measure.
    """
    if not 0.0 <= s <= 1.0:
        raise InputError(f"s must lie in [0, 1], got {s}")
    m, le = frostman_levels(phi, log_delta, base)
    resolution = float(base) ** (-m)
    items = skeleton(model, resolution)
    if not items:
        raise InputError("model skeleton is empty")

    scale = float(base) ** m
    seen: dict[int, float] = {}
    for a, b_ in items:
        q_first = math.floor(a * scale)
        q_last = math.floor(b_ * scale)
        if q_last - q_first + len(seen) > ATOM_CAP:
            raise BudgetError(
                f"more than {ATOM_CAP} seeded cubes at level {m}; "
                "use a finer-grained route or a coarser delta"
            )
        for q in range(q_first, q_last + 1):
            if q not in seen:
                seen[q] = max(a, q / scale)
    cubes = np.array(sorted(seen), dtype=np.int64)
    locations = np.array([seen[q] for q in cubes])
    masses = np.full(locations.size, float(base) ** (-m * s))

    # cap chain, finest to coarsest; ancestors by exact integer division
    for k in range(le):
        level = m - k - 1
        idx = cubes // base ** (k + 1)
        uniq, inverse = np.unique(idx, return_inverse=True)
        sums = np.bincount(inverse, weights=masses)
        cap = float(base) ** (-level * s)
        factors = np.minimum(1.0, cap / sums)
        masses = masses * factors[inverse]

    raw_total = float(masses.sum())
    if raw_total <= 0.0:
        raise DomainError("construction produced zero total mass")
    meta = FrostmanMeta(base=base, level_fine=m, chain_length=le, cube_indices=cubes)
    return AtomicMeasure(locations, masses / raw_total, raw_total, meta)


def natural_cantor_measure(model: CantorSchedule, level: int) -> AtomicMeasure:
    """Equal mass 2^-level on each level interval's left endpoint."""
    starts, _ = model.materialize(level)
    mass = 0.5**level
    return AtomicMeasure(
        np.asarray(starts, dtype=float),
        np.full(len(starts), mass),
        pre_normalization_total=1.0,
    )


@dataclass(frozen=True)
class BallMassReport:
    """Exact maximum of ball mass over radius^s across a radius grid."""

    c_observed: float
    witness_center: float
    witness_radius: float
    witness_mass: float
    radii: tuple[float, ...]


def verify_ball_mass(
    mu: AtomicMeasure,
    window: ScaleWindow,
    s: float,
    *,
    radii: Optional[Sequence[float]] = None,
    centers: Optional[Sequence[float]] = None,
) -> BallMassReport:
    """Smallest c with mu(B(x, r)) <= c r^s over the scanned radii.

    Balls are open.  For each radius the maximization over centers is
    exact: the heaviest ball's leftmost atom starts a contiguous run of
    atoms of diameter < 2r, so sweeping run starts finds the maximum.
    An explicit center grid restricts the scan instead.
    """
    if radii is None:
        n_r = 33
        radii = [
            math.exp(window.log_lo + t * (window.log_hi - window.log_lo))
            for t in np.linspace(0.0, 1.0, n_r)[1:-1]
        ]
        radii += [window.lo, window.hi]
    radii = sorted(float(r) for r in radii)
    if not radii:
        raise InputError("radius scan is empty")
    if radii[0] < window.lo * (1.0 - 1e-9) or radii[-1] > window.hi * (1.0 + 1e-9):
        raise InputError("scan radii must lie within the window")
    locs = mu.locations
    prefix = mu.prefix_masses()
    best = -math.inf
    witness = (0.0, radii[0], 0.0)
    for r in radii:
        if centers is None:
            ends = np.searchsorted(locs, locs + 2.0 * r, side="left")
            run_masses = prefix[ends] - prefix[: locs.size]
            i = int(np.argmax(run_masses))
            mass = float(run_masses[i])
            center = 0.5 * (locs[i] + locs[ends[i] - 1]) if mass > 0.0 else locs[i]
        else:
            cg = np.asarray(centers, dtype=float)
            lo_idx = np.searchsorted(locs, cg - r, side="right")
            hi_idx = np.searchsorted(locs, cg + r, side="left")
            run_masses = prefix[hi_idx] - prefix[lo_idx]
            i = int(np.argmax(run_masses))
            mass = float(run_masses[i])
            center = float(cg[i])
        ratio = mass / r**s
        if ratio > best:
            best = ratio
            witness = (center, r, mass)
    return BallMassReport(
        c_observed=best,
        witness_center=witness[0],
        witness_radius=witness[1],
        witness_mass=witness[2],
        radii=tuple(radii),
    )


def ball_to_set_constant(c_ball: float, s: float) -> float:
    """Convert a ball-mass constant to one for sets by diameter.

    A set of diameter L lies in a ball of radius L, so the set constant
    2^s * c_ball is always sound for the same exponent.
    """
    return 2.0**s * c_ball


@dataclass(frozen=True)
class MassCertificate:
    """Outcome of a mass-distribution lower-bound check.

    When ``holds``, every cover of the support by sets with diameters in
    the window has cost at least a/c (log value recorded), because each
    cover element absorbs at most c * |U|^s of the total mass a.
    """

    holds: bool
    s: float
    a: float
    c: float
    log_cost_floor: float
    worst_ratio: float
    worst_span: float


def mass_lower_bound(
    mu: AtomicMeasure,
    window: ScaleWindow,
    s: float,
    a: float,
    c: float,
    *,
    pair_budget: int = 50_000_000,
) -> MassCertificate:
    """Check mu(U) <= c|U|^s exactly for all window-sized intervals U.

    The worst interval has both endpoints at atoms (shrinking to the atom
    hull preserves mass and lowers the diameter), so scanning atom pairs
    whose span fits the window is exhaustive.  With the check passed, a/c
    is a certified lower bound for every window cover cost.
    """
    if not 0.0 <= a <= mu.total * (1.0 + 1e-12):
        raise InputError(f"a must lie in [0, total mass {mu.total:g}], got {a}")
    if not c > 0.0:
        raise InputError(f"c must be positive, got {c}")
    if not window.linear_representable():
        raise InputError("window too deep for linear mass checks")
    locs = mu.locations
    prefix = mu.prefix_masses()
    lo, hi = window.lo, window.hi
    ends = np.searchsorted(locs, locs + hi * (1.0 + 1e-15), side="right")
    if int(np.sum(ends - np.arange(locs.size))) > pair_budget:
        raise BudgetError(
            "too many atom pairs for the exact mass check; "
            "use the schedule-based constant instead"
        )
    worst_ratio = 0.0
    worst_span = lo
    for i in range(locs.size):
        j_end = ends[i]
        spans = locs[i:j_end] - locs[i]
        eff = np.maximum(spans, lo)
        keep = spans <= hi
        if not np.any(keep):
            continue
        ratios = (prefix[i + 1 : j_end + 1] - prefix[i])[keep] / eff[keep] ** s
        k = int(np.argmax(ratios))
        if ratios[k] > worst_ratio:
            worst_ratio = float(ratios[k])
            worst_span = float(eff[keep][k])
    holds = worst_ratio <= c * (1.0 + 1e-12)
    floor = math.log(a) - math.log(c) if a > 0.0 else -math.inf
    return MassCertificate(
        holds=holds,
        s=s,
        a=a,
        c=c,
        log_cost_floor=floor,
        worst_ratio=worst_ratio,
        worst_span=worst_span,
    )


@dataclass(frozen=True)
class RoundtripRow:
    """Growth diagnostics of the constructed measures at one exponent."""

    s: float
    slope: float
    c_values: tuple[float, ...]
    raw_totals: tuple[float, ...]
    built: bool


@dataclass(frozen=True)
class RoundtripReport:
    """Measure-based dimension estimate versus the cover-based bracket."""

    estimate: float
    beta0: float
    rows: tuple[RoundtripRow, ...]
    bracket_lower: float
    bracket_upper: float

    @property
    def consistent(self) -> bool:
        return (
            self.bracket_lower - 0.05 <= self.estimate <= self.bracket_upper + 0.05
        )


def massfrostman_roundtrip(
    model,
    phi: ScaleFunction,
    s_grid: Sequence[float],
    log_deltas: Sequence[float],
    *,
    base: int = DEFAULT_BASE,
    beta0: float = 0.02,
    oracle: str = "auto",
) -> RoundtripReport:
    """Estimate the dimension from measure growth and cross-check covers.

    For each s a measure is built at every scale and its ball-mass
    constant recorded.  Below the dimension the constants stay bounded;
    above it they grow like a power of 1/delta.  The estimate is the
    largest s whose log-constant slope (against -log delta) stays within
    beta0.  The cover-based bracket at the finest scale is attached for
    comparison.
    """
    grid = sorted(set(float(x) for x in log_deltas), reverse=True)
    if len(grid) < 2:
        raise InputError("need at least two scales for a growth diagnostic")
    estimate = 0.0
    rows = []
    for s in sorted(float(v) for v in s_grid):
        c_vals = []
        totals = []
        built = True
        for ld in grid:
            try:
                mu = build_frostman_measure(model, s, ld, phi, base=base)
            except (DomainError, InputError, BudgetError):
                built = False
                break
            window = ScaleWindow(phi.eval_phi_log(ld), ld)
            rep = verify_ball_mass(mu, window, s)
            c_vals.append(rep.c_observed)
            totals.append(mu.pre_normalization_total)
        if not built:
            rows.append(RoundtripRow(s, math.inf, tuple(c_vals), tuple(totals), False))
            continue
        slope = (math.log(c_vals[-1]) - math.log(c_vals[0])) / (grid[0] - grid[-1])
        rows.append(RoundtripRow(s, slope, tuple(c_vals), tuple(totals), True))
        if slope <= beta0:
            estimate = max(estimate, s)
    ce = critical_exponent(model, phi, grid[-1], oracle=oracle)
    return RoundtripReport(
        estimate=estimate,
        beta0=beta0,
        rows=tuple(rows),
        bracket_lower=ce.s_lower,
        bracket_upper=ce.s_upper,
    )
