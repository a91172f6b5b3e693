"""Weighted word lengths on Cayley graphs and the counting bounds they support.

The central object is a truncated length table: a uniform-cost search from the
identity assigns each reachable element the cheapest total generator weight
that produces it.  Weights are exact rationals; the search runs on integers
after clearing denominators, so priority ordering never suffers float ties.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .groups import Element, GeneratorSet, Group

DEFAULT_RADIUS = Fraction(14)
DEFAULT_ELEMENT_CAP = 10**6

# base ratio of the geometric series behind the summability bounds
SERIES_RATIO = 2.0 / math.e


class UnexploredError(LookupError):
    """Raised when a value is requested outside the settled search region."""


@dataclass(frozen=True)
class WeightFunction:
    """Positive rational weights, one per generator (index-aligned)."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        for w in self.values:
            if w < 0:
                raise ValueError(f"weight {w} is negative")

    @classmethod
    def constant(cls, count: int, value=1) -> "WeightFunction":
        return cls(tuple(Fraction(value) for _ in range(count)))

    @classmethod
    def enumerated(cls, count: int) -> "WeightFunction":
        """Weight k on the k-th generator (1-based): the canonical injective mode."""
        return cls(tuple(Fraction(k) for k in range(1, count + 1)))

    @classmethod
    def of(cls, values: Sequence) -> "WeightFunction":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def is_integer(self) -> bool:
        return all(w.denominator == 1 for w in self.values)

    @property
    def is_injective_integer(self) -> bool:
        """Distinct positive integer weights: what the sphere bound requires."""
        if not self.is_integer:
            return False
        ints = [int(w) for w in self.values]
        return all(v >= 1 for v in ints) and len(set(ints)) == len(ints)

    def shifted_by_index(self) -> "WeightFunction":
        """The companion weights w_k + k used by the nuclearity witness."""
        return WeightFunction(tuple(w + k for k, w in enumerate(self.values, start=1)))


@dataclass
class LengthReport:
    """Result of one ball exploration.

    ``lengths`` maps each settled element to its exact length, in (length,
    element) order.  ``boundary`` is the cheapest cost left unexpanded when the
    search stopped; a recorded value is final exactly when it lies strictly
    below it.  ``boundary`` is None when the frontier drained completely, in
    which case everything recorded is final and every sphere up to the radius
    is complete.
    """

    group: Group
    generators: GeneratorSet
    weights: WeightFunction
    radius: Fraction
    element_cap: int
    lengths: dict[Element, Fraction]
    truncated: bool
    boundary: Fraction | None
    _spheres: dict | None = field(default=None, repr=False)

    def __contains__(self, x) -> bool:
        return self.group.check(x) in self.lengths

    def length(self, x) -> Fraction:
        x = self.group.check(x)
        try:
            return self.lengths[x]
        except KeyError:
            raise UnexploredError(f"{self.group.format(x)} lies outside the explored ball") from None

    def is_final(self, x) -> bool:
        x = self.group.check(x)
        if x not in self.lengths:
            return False
        return self.boundary is None or self.lengths[x] < self.boundary

    def final_length(self, x) -> Fraction:
        """Length of x, raising unless the value can no longer improve."""
        value = self.length(x)
        if self.boundary is not None and value >= self.boundary:
            raise UnexploredError(f"length of {self.group.format(x)} is not settled (truncated search)")
        return value

    def final_items(self) -> list[tuple[Element, Fraction]]:
        if self.boundary is None:
            return list(self.lengths.items())
        return [(x, v) for x, v in self.lengths.items() if v < self.boundary]

    def spheres(self) -> dict[Fraction, tuple[Element, ...]]:
        """Level sets of the length, keyed by exact level, elements sorted."""
        if self._spheres is None:
            acc: dict[Fraction, list[Element]] = {}
            for x, v in self.lengths.items():
                acc.setdefault(v, []).append(x)
            self._spheres = {v: tuple(xs) for v, xs in sorted(acc.items())}
        return self._spheres

    def sphere_complete(self, level) -> bool:
        """True when every group element of this length appears in the table."""
        level = Fraction(level)
        if level > self.radius:
            return False
        return self.boundary is None or level < self.boundary

    def max_complete_integer_level(self) -> int:
        """Largest n with all spheres at integer levels <= n complete."""
        n = int(self.radius)  # floor for nonnegative radius
        if self.boundary is not None:
            while n >= 0 and not self.sphere_complete(n):
                n -= 1
        return n


def explore_ball(
    group: Group,
    generators: GeneratorSet,
    weights: WeightFunction,
    radius=DEFAULT_RADIUS,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> LengthReport:
    """Uniform-cost search of the weighted Cayley ball around the identity.

    Every element whose length is at most ``radius`` is settled, unless the
    element cap fires first; in that case the report is marked truncated and
    the boundary records where certainty ends.
    """
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    if element_cap < 1:
        raise ValueError(f"element cap must be positive, got {element_cap}")
    gens = generators.elements
    if len(gens) != len(weights.values):
        raise ValueError(
            f"{len(gens)} generators but {len(weights.values)} weights"
        )
    scale = 1
    for w in weights.values:
        scale = scale // _gcd(scale, w.denominator) * w.denominator
    int_weights = [int(w * scale) for w in weights.values]
    int_radius = radius * scale  # Fraction; compared exactly against int costs

    identity = group.identity
    settled: dict[Element, int] = {}
    best: dict[Element, int] = {identity: 0}
    heap: list[tuple[int, Element]] = [(0, identity)]
    truncated = False
    boundary_int: int | None = None

    while heap:
        cost, x = heapq.heappop(heap)
        if x in settled:
            continue
        if cost > int_radius:
            boundary_int = cost
            break
        if len(settled) >= element_cap:
            truncated = True
            boundary_int = cost
            break
        settled[x] = cost
        for a, w in zip(gens, int_weights):
            y = group.mul(x, a)
            c = cost + w
            if c <= int_radius and (y not in settled) and c < best.get(y, c + 1):
                best[y] = c
                heapq.heappush(heap, (c, y))

    lengths = {
        x: Fraction(c, scale)
        for x, c in sorted(settled.items(), key=lambda item: (item[1], item[0]))
    }
    boundary = None if boundary_int is None else Fraction(boundary_int, scale)
    return LengthReport(
        group=group,
        generators=generators,
        weights=weights,
        radius=radius,
        element_cap=element_cap,
        lengths=lengths,
        truncated=truncated,
        boundary=boundary,
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class SubadditivityReport:
    checked: int
    skipped: int
    violations: tuple[tuple[Element, Element], ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def subadditivity_check(report: LengthReport, samples: int = 500, seed: int = 0) -> SubadditivityReport:
    """Sample settled pairs and verify len(x*y) <= len(x) + len(y).

    Pairs whose product falls outside the settled region are skipped and
    counted; the inequality is checked exactly on rationals.
    """
    rng = random.Random(seed)
    items = report.final_items()
    if not items:
        return SubadditivityReport(checked=0, skipped=0, violations=())
    checked = skipped = 0
    violations = []
    for _ in range(samples):
        x, lx = items[rng.randrange(len(items))]
        y, ly = items[rng.randrange(len(items))]
        z = report.group.mul(x, y)
        if not report.is_final(z):
            skipped += 1
            continue
        checked += 1
        if report.lengths[z] > lx + ly:
            violations.append((x, y))
    return SubadditivityReport(checked=checked, skipped=skipped, violations=tuple(violations))


# ---------------------------------------------------------------------------
# compositions and the sphere-counting bounds


def enumerate_compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All ordered tuples of ``parts`` positive integers summing to ``total``.

    Lexicographically ascending.  The count is binomial(total-1, parts-1).
    """
    if parts < 1 or total < 1:
        raise ValueError(f"need total >= 1 and parts >= 1, got {total}, {parts}")
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for first in range(1, remaining - slots + 2):
            rec(prefix + [first], remaining - first, slots - 1)

    if total >= parts:
        rec([], total, parts)
    return out


def composition_count(total: int, parts: int) -> int:
    if parts < 1 or total < 1:
        raise ValueError(f"need total >= 1 and parts >= 1, got {total}, {parts}")
    return math.comb(total - 1, parts - 1)


@dataclass(frozen=True)
class SphereRow:
    level: int
    count: int
    bound: int
    cumulative: float


@dataclass(frozen=True)
class SphereBoundReport:
    rows: tuple[SphereRow, ...]
    max_level: int

    @property
    def passed(self) -> bool:
        return all(r.count <= r.bound for r in self.rows)


def sphere_bound_check(report: LengthReport) -> SphereBoundReport:
    """Check card{x : len(x) = n} <= 2^(n-1) on every complete integer level.

    Requires injective positive-integer weights; with those, an element of
    length n is pinned down by the composition of n into its letter weights,
    so the level sets obey the composition bound.
    """
    if not report.weights.is_injective_integer:
        raise ValueError("sphere bound needs distinct positive integer weights")
    top = report.max_complete_integer_level()
    spheres = report.spheres()
    rows = []
    cumulative = 0.0
    for n in range(1, top + 1):
        count = len(spheres.get(Fraction(n), ()))
        cumulative += count * math.exp(-n)
        rows.append(SphereRow(level=n, count=count, bound=2 ** (n - 1), cumulative=cumulative))
    return SphereBoundReport(rows=tuple(rows), max_level=top)


@dataclass(frozen=True)
class SummabilityReport:
    partial: float
    finite_bound: float
    closed_form: float
    max_level: int

    @property
    def passed(self) -> bool:
        return _leq(self.partial, self.finite_bound) and _leq(self.partial, self.closed_form)


def summability_partial_sums(report: LengthReport) -> SummabilityReport:
    """Partial sums of exp(-length) against the geometric closed form.

    With injective integer weights the level-n sphere holds at most 2^(n-1)
    elements, so the full series is bounded by 1 + r / (2 (1 - r)) with
    r = 2/e.  Truncated reports are rejected; the partial sum runs over the
    whole settled ball.
    """
    if report.truncated:
        raise ValueError("summability needs a non-truncated exploration")
    if not report.weights.is_injective_integer:
        raise ValueError("summability bound needs distinct positive integer weights")
    partial = math.fsum(math.exp(-float(v)) for v in report.lengths.values())
    top = report.max_complete_integer_level()
    finite = 1.0 + math.fsum(2 ** (n - 1) * math.exp(-n) for n in range(1, top + 1))
    r = SERIES_RATIO
    closed = 1.0 + r / (2.0 * (1.0 - r))
    return SummabilityReport(partial=partial, finite_bound=finite, closed_form=closed, max_level=top)


def _leq(a: float, b: float, rtol: float = 1e-12) -> bool:
    return a <= b + rtol * max(abs(a), abs(b), 1.0)


# ---------------------------------------------------------------------------
# nuclearity witness: comparing a length against its index-shifted companion


@dataclass(frozen=True)
class DifferenceRow:
    level: int
    count: int
    bound: int


@dataclass(frozen=True)
class NuclearityReport:
    rows: tuple[DifferenceRow, ...]
    partial: float
    closed_form: float
    region_size: int
    excluded: int

    @property
    def counts_pass(self) -> bool:
        return all(r.count <= r.bound for r in self.rows)

    @property
    def partial_pass(self) -> bool:
        return _leq(self.partial, self.closed_form)

    @property
    def passed(self) -> bool:
        return self.counts_pass and self.partial_pass


def nuclearity_witness(
    group: Group,
    generators: GeneratorSet,
    weights: WeightFunction,
    radius=DEFAULT_RADIUS,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> NuclearityReport:
    """Grow the weights by the generator index and measure the length gap.

    With integer weights w and the companion w_k + k, the gap
    d(x) = len_companion(x) - len(x) is a positive integer away from the
    identity, each gap-n level holds at most n * 2^(n-1) elements, and the
    partial sums of exp(-d) stay below 1 + r / (2 (1 - r)^2), r = 2/e.
    The check runs on the region where both lengths are settled.
    """
    if not weights.is_integer:
        raise ValueError("nuclearity witness needs integer base weights")
    base = explore_ball(group, generators, weights, radius, element_cap)
    shifted = explore_ball(group, generators, weights.shifted_by_index(), radius, element_cap)
    counts: dict[int, int] = {}
    partial_terms = []
    region = 0
    excluded = 0
    for x, lf in base.final_items():
        if not shifted.is_final(x):
            excluded += 1
            continue
        d = shifted.lengths[x] - lf
        if d.denominator != 1:
            raise ValueError(f"non-integer gap {d} at {group.format(x)}")
        region += 1
        counts[int(d)] = counts.get(int(d), 0) + 1
        partial_terms.append(math.exp(-float(d)))
    rows = tuple(
        DifferenceRow(level=n, count=c, bound=(n * 2 ** (n - 1) if n >= 1 else 1))
        for n, c in sorted(counts.items())
    )
    r = SERIES_RATIO
    closed = 1.0 + r / (2.0 * (1.0 - r) ** 2)
    return NuclearityReport(
        rows=rows,
        partial=math.fsum(partial_terms),
        closed_form=closed,
        region_size=region,
        excluded=excluded,
    )


# ---------------------------------------------------------------------------
# the discrete Heisenberg witness


@dataclass(frozen=True)
class WitnessRow:
    n: int
    product: Element
    expected: Element
    growth_log: float       # log of 2^(n^2)
    envelope_log: float     # log of exp(4 n C)
    violated: bool

    @property
    def product_ok(self) -> bool:
        return self.product == self.expected


@dataclass(frozen=True)
class HeisenbergWitnessReport:
    rows: tuple[WitnessRow, ...]
    constant: Fraction
    first_violation: int | None

    @property
    def products_pass(self) -> bool:
        return all(r.product_ok for r in self.rows)


def heisenberg_witness(group: Group, n_max: int, constant=1) -> HeisenbergWitnessReport:
    """Pit doubly exponential central growth against a linear-exponent envelope.

    For each n, the chain b^-n * a^n * b^n * a^-n is evaluated by group
    multiplication and must land on the central element (0, 0, n^2).  Under a
    constant weight C on the four generators that chain has length at most
    4 n C, so any submultiplicative function dominated by exp(length) is at
    most exp(4 n C) there; the witness locates the first n where the central
    growth 2^(n^2) exceeds that envelope.  The comparison reduces to
    n * ln 2 > 4 C, which cannot tie (ln 2 is irrational, C rational), so the
    float comparison is decisive.
    """
    if group.kind != "heisenberg":
        raise ValueError(f"witness needs the Heisenberg group, got kind {group.kind!r}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    constant = Fraction(constant)
    if constant < 0:
        raise ValueError(f"constant must be nonnegative, got {constant}")
    a, b = (1, 0, 0), (0, 1, 0)
    rows = []
    for n in range(1, n_max + 1):
        chain = group.mul(
            group.mul(group.power(b, -n), group.power(a, n)),
            group.mul(group.power(b, n), group.power(a, -n)),
        )
        expected = (0, 0, n * n)
        growth_log = (n * n) * math.log(2.0)
        envelope_log = 4.0 * n * float(constant)
        rows.append(
            WitnessRow(
                n=n,
                product=chain,
                expected=expected,
                growth_log=growth_log,
                envelope_log=envelope_log,
                violated=n * math.log(2.0) > 4.0 * float(constant),
            )
        )
    # least n with n ln 2 > 4C, independent of n_max; the scan always terminates
    first = 1
    while not (first * math.log(2.0) > 4.0 * float(constant)):
        first += 1
    return HeisenbergWitnessReport(rows=tuple(rows), constant=constant, first_violation=first)
