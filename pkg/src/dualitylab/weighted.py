"""Finitely supported convolution vectors, weighted seminorms, polar certificates.

Coefficients are complex doubles and every seminorm value is a real double,
whatever scalar backend the Hopf layer uses; comparisons therefore run at a
relative tolerance of 1e-12.  Weights come from the semicharacter grammar, so
submultiplicativity of the underlying weight is available by construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .groups import Element, Group
from .length import LengthReport
from .reports import CheckResult
from .semichar import Semicharacter

REL_TOL = 1e-12


def leq(a: float, b: float, rtol: float = REL_TOL) -> bool:
    """a <= b up to relative slack; the module-wide comparison policy."""
    return a <= b + rtol * max(abs(a), abs(b), 1.0)


@dataclass(frozen=True)
class WeightedVector:
    """A finitely supported vector over a group; zero coefficients are dropped."""

    group: Group
    coeffs: Mapping[Element, complex]

    @classmethod
    def from_items(cls, group: Group, items) -> "WeightedVector":
        acc: dict[Element, complex] = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for x, c in pairs:
            x = group.check(x)
            c = complex(c)
            if c != 0:
                acc[x] = acc.get(x, 0j) + c
        return cls(group=group, coeffs={x: c for x, c in acc.items() if c != 0})

    @classmethod
    def basis(cls, group: Group, x, c=1) -> "WeightedVector":
        return cls.from_items(group, [(x, c)])

    @classmethod
    def zero(cls, group: Group) -> "WeightedVector":
        return cls(group=group, coeffs={})

    @property
    def support(self) -> tuple[Element, ...]:
        return tuple(sorted(self.coeffs))

    def __add__(self, other: "WeightedVector") -> "WeightedVector":
        if other.group is not self.group:
            raise ValueError("vectors live over different groups")
        acc = dict(self.coeffs)
        for x, c in other.coeffs.items():
            acc[x] = acc.get(x, 0j) + c
        return WeightedVector(self.group, {x: c for x, c in acc.items() if c != 0})

    def scaled(self, c) -> "WeightedVector":
        c = complex(c)
        if c == 0:
            return WeightedVector.zero(self.group)
        return WeightedVector(self.group, {x: v * c for x, v in self.coeffs.items()})

    def max_abs_diff(self, other: "WeightedVector") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self.coeffs.get(k, 0j) - other.coeffs.get(k, 0j)) for k in keys), default=0.0)


def seminorm(alpha: WeightedVector, f: Semicharacter) -> float:
    """The weighted absolute-sum seminorm: sum of |coefficient| * weight."""
    return math.fsum(abs(c) * f.value(x) for x, c in alpha.coeffs.items())


def convolve(alpha: WeightedVector, beta: WeightedVector) -> WeightedVector:
    """Group convolution: coefficients multiply along the group law."""
    if alpha.group is not beta.group:
        raise ValueError("vectors live over different groups")
    g = alpha.group
    acc: dict[Element, complex] = {}
    for x, a in alpha.coeffs.items():
        for y, b in beta.coeffs.items():
            z = g.mul(x, y)
            acc[z] = acc.get(z, 0j) + a * b
    return WeightedVector(g, {x: c for x, c in acc.items() if c != 0})


def project(alpha: WeightedVector, region: Iterable[Element]) -> WeightedVector:
    """Keep only the coefficients supported inside ``region``."""
    keep = {alpha.group.check(x) for x in region}
    return WeightedVector(alpha.group, {x: c for x, c in alpha.coeffs.items() if x in keep})


def pairing(alpha: WeightedVector, table: Mapping[Element, complex]) -> complex:
    """Bilinear pairing with a function table: sum of coefficient * value."""
    return sum((c * complex(table.get(x, 0j)) for x, c in alpha.coeffs.items()), 0j)


def dual_norm_extremizer(alpha: WeightedVector, f: Semicharacter) -> dict[Element, complex]:
    """The rectangle member pairing to exactly the seminorm of alpha.

    At each support point the value is the weight times the unit phase of the
    conjugated coefficient, so the pairing telescopes to |c| * f pointwise.
    """
    out: dict[Element, complex] = {}
    for x, c in alpha.coeffs.items():
        out[x] = f.value(x) * (c.conjugate() / abs(c))
    return out


def rectangle_polar_contains(alpha: WeightedVector, f: Semicharacter, rtol: float = REL_TOL) -> bool:
    """Membership of alpha in the polar of the rectangle of f: seminorm <= 1."""
    return leq(seminorm(alpha, f), 1.0, rtol)


def rectangle_bipolar_contains(table: Mapping[Element, complex], f: Semicharacter, rtol: float = REL_TOL) -> bool:
    """Membership of a table in the bipolar: pointwise |value| <= weight."""
    return all(leq(abs(complex(v)), f.value(x), rtol) for x, v in table.items())


def bipolar_pairing_audit(
    table: Mapping[Element, complex],
    f: Semicharacter,
    group: Group,
    members: Iterable[WeightedVector],
) -> tuple[bool, bool, float]:
    """Compare the pointwise bipolar test against the pairing route.

    Returns (pointwise verdict, pairing verdict, worst pairing magnitude).
    The pairing route tests the sampled polar members plus, for every support
    point, the single-point polar member that exposes any pointwise excess;
    the two verdicts must agree.
    """
    pointwise = rectangle_bipolar_contains(table, f)
    worst = 0.0
    for alpha in members:
        if not rectangle_polar_contains(alpha, f):
            raise ValueError("audit members must lie in the polar")
        worst = max(worst, abs(pairing(alpha, table)))
    for x, v in table.items():
        v = complex(v)
        if v == 0:
            continue
        phase = v.conjugate() / abs(v)
        alpha = WeightedVector.basis(group, x, phase / f.value(x))
        worst = max(worst, abs(pairing(alpha, table)))
    return pointwise, leq(worst, 1.0), worst


def random_rectangle_member(
    f: Semicharacter,
    region: list[Element],
    rng: np.random.Generator,
    margin: float = 1.0,
) -> dict[Element, complex]:
    """A random table with |value| <= margin * weight on a random subregion."""
    size = int(rng.integers(1, len(region) + 1))
    picks = rng.choice(len(region), size=size, replace=False)
    out: dict[Element, complex] = {}
    for i in picks:
        x = region[int(i)]
        r = float(rng.uniform(0.0, margin))
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        out[x] = f.value(x) * r * cmath.exp(1j * theta)
    return out


@dataclass(frozen=True)
class Decomposition:
    """Certificate for membership in the polar of a rectangle intersection."""

    feasible: bool
    min_norm: float
    lam: float = 0.0
    beta: WeightedVector | None = None
    gamma: WeightedVector | None = None

    def verify(self, alpha: WeightedVector, f: Semicharacter, g: Semicharacter, rtol: float = REL_TOL) -> bool:
        if not self.feasible:
            return not leq(self.min_norm, 1.0, rtol)
        recombined = self.beta.scaled(self.lam) + self.gamma.scaled(1.0 - self.lam)
        if recombined.max_abs_diff(alpha) > rtol * max(1.0, *(abs(c) for c in alpha.coeffs.values()), 0.0):
            return False
        return (
            0.0 <= self.lam <= 1.0
            and leq(seminorm(self.beta, f), 1.0, rtol)
            and leq(seminorm(self.gamma, g), 1.0, rtol)
        )


def absconv_decompose(alpha: WeightedVector, f: Semicharacter, g: Semicharacter) -> Decomposition:
    """Split alpha into rectangle-polar members of f and g.

    The pointwise minimum of two submultiplicative weights has the rectangle
    of the intersection, so alpha lies in its polar exactly when the
    min-weighted seminorm is at most one; in that case splitting the support
    by which weight attains the minimum yields the convex certificate.  When
    the min-weighted seminorm exceeds one the result is marked infeasible.
    """
    parts_f: dict[Element, complex] = {}
    parts_g: dict[Element, complex] = {}
    for x, c in alpha.coeffs.items():
        if f.value(x) <= g.value(x):
            parts_f[x] = c
        else:
            parts_g[x] = c
    vf = WeightedVector(alpha.group, parts_f)
    vg = WeightedVector(alpha.group, parts_g)
    a = seminorm(vf, f)
    b = seminorm(vg, g)
    total = a + b
    if not leq(total, 1.0):
        return Decomposition(feasible=False, min_norm=total)
    lam = 0.5 * (1.0 + a - b)
    lam = min(1.0, max(0.0, lam))
    beta = vf.scaled(1.0 / lam) if lam > 0 else WeightedVector.zero(alpha.group)
    gamma = vg.scaled(1.0 / (1.0 - lam)) if lam < 1 else WeightedVector.zero(alpha.group)
    return Decomposition(feasible=True, min_norm=total, lam=lam, beta=beta, gamma=gamma)


# ---------------------------------------------------------------------------
# max-type seminorms with finite support


@dataclass(frozen=True)
class SubmultiplicativeSeminorm:
    """q(u) = scale * max over the support of weight * |u|.

    With scale >= 1 and weights >= 1 the seminorm is submultiplicative for
    pointwise products and each indicator gets q(1_x) = scale * weight(x) >= 1,
    consistent with idempotence of indicators.
    """

    support: tuple[Element, ...]
    weights: Mapping[Element, float]
    scale: float = 1.0

    def __post_init__(self):
        if not self.support:
            raise ValueError("support must be non-empty")
        if self.scale < 1.0:
            raise ValueError(f"scale must be >= 1, got {self.scale}")
        for x in self.support:
            w = self.weights.get(x)
            if w is None:
                raise ValueError(f"missing weight at {x!r}")
            if w < 1.0:
                raise ValueError(f"weight {w} < 1 at {x!r}")

    def __call__(self, table: Mapping[Element, complex]) -> float:
        best = 0.0
        for x in self.support:
            v = abs(complex(table.get(x, 0j)))
            best = max(best, self.weights[x] * v)
        return self.scale * best

    def indicator_value(self, x) -> float:
        if x not in self.weights or x not in self.support:
            return 0.0
        return self.scale * self.weights[x]


def random_table(support, rng: np.random.Generator, spread: float = 2.0) -> dict:
    out = {}
    for x in support:
        re, im = rng.normal(0.0, spread, size=2)
        out[x] = complex(float(re), float(im))
    return out


def seminorm_support_check(
    q: SubmultiplicativeSeminorm,
    rng: np.random.Generator,
    trials: int = 200,
) -> list[CheckResult]:
    """Audit support, indicator lower bounds, and sampled submultiplicativity."""
    results = []
    ok = all(q.indicator_value(x) >= 1.0 for x in q.support)
    worst = min((q.indicator_value(x) for x in q.support), default=1.0)
    results.append(CheckResult(name="indicator-floor", passed=ok, residual=float(1.0 - min(worst, 1.0))))
    # idempotent indicators force q(1_x) <= q(1_x)^2
    ok = all(leq(q.indicator_value(x), q.indicator_value(x) ** 2) for x in q.support)
    results.append(CheckResult(name="idempotent-consistency", passed=ok))
    worst = 0.0
    ok = True
    for _ in range(trials):
        u = random_table(q.support, rng)
        v = random_table(q.support, rng)
        uv = {x: u[x] * v[x] for x in q.support}
        lhs, rhs = q(uv), q(u) * q(v)
        worst = max(worst, lhs - rhs)
        ok = ok and leq(lhs, rhs)
    results.append(CheckResult(name="submultiplicative", passed=ok, residual=max(worst, 0.0)))
    return results


def domination_check(
    q: SubmultiplicativeSeminorm,
    rng: np.random.Generator,
    trials: int = 200,
) -> CheckResult:
    """q(u) <= (sum of indicator values) * sup |u| on the support, sampled."""
    total = math.fsum(q.indicator_value(x) for x in q.support)
    worst = 0.0
    ok = True
    for _ in range(trials):
        u = random_table(q.support, rng)
        sup = max(abs(u[x]) for x in q.support)
        lhs = q(u)
        worst = max(worst, lhs - total * sup)
        ok = ok and leq(lhs, total * sup)
    return CheckResult(name="domination", passed=ok, residual=max(worst, 0.0))


def summability_check(
    q: SubmultiplicativeSeminorm,
    f: Semicharacter,
    report: LengthReport,
) -> CheckResult:
    """Weighted mass of the support against the enveloped tail bound.

    Writes f(x) q(1_x) = [f(x) exp(len x) q(1_x)] exp(-len x) pointwise, takes
    B as the sup of the bracket over the support, and checks the summed mass
    against B times the partial sums of exp(-len) over the settled ball.
    """
    mass = 0.0
    envelope = 0.0
    for x in q.support:
        ell = float(report.final_length(x))
        term = f.value(x) * q.indicator_value(x)
        mass += term
        envelope = max(envelope, term * math.exp(ell))
    partial = math.fsum(math.exp(-float(v)) for _, v in report.final_items())
    ok = leq(mass, envelope * partial)
    return CheckResult(
        name="summability",
        passed=ok,
        residual=max(mass - envelope * partial, 0.0),
        detail=f"mass {mass:.6g} envelope {envelope:.6g} partial {partial:.6g}",
    )


# ---------------------------------------------------------------------------
# randomized property suites (shared by tests and the command line)


class MinWeight:
    """Pointwise minimum of two weights, for the intersection rectangle.

    Not a semicharacter: minima of submultiplicative weights need not stay
    submultiplicative, but the seminorm only reads pointwise values.
    """

    def __init__(self, f: Semicharacter, g: Semicharacter):
        self.f, self.g = f, g
        self.group = f.group or g.group

    def value(self, x) -> float:
        return min(self.f.value(x), self.g.value(x))


def _random_vector(group, region, rng: np.random.Generator, max_support: int = 6) -> WeightedVector:
    size = int(rng.integers(1, max_support + 1))
    picks = rng.choice(len(region), size=min(size, len(region)), replace=False)
    items = []
    for i in picks:
        re, im = rng.normal(0.0, 1.0, size=2)
        items.append((region[int(i)], complex(float(re), float(im))))
    return WeightedVector.from_items(group, items)


def weighted_property_trials(
    f: Semicharacter,
    g: Semicharacter,
    region: list[Element],
    trials: int = 1000,
    seed: int = 0,
) -> list[CheckResult]:
    """Seeded randomized audit of the convolution-seminorm toolkit.

    The caller guarantees that products of region elements stay evaluable
    under f (sample supports from a half-radius ball).  Five properties are
    exercised per trial set; each reports its worst margin.
    """
    group = f.group
    rng = np.random.default_rng(seed)
    region = [group.check(x) for x in region]
    results = []

    worst = 0.0
    ok = True
    for _ in range(trials):
        alpha = _random_vector(group, region, rng)
        beta = _random_vector(group, region, rng)
        lhs = seminorm(convolve(alpha, beta), f)
        rhs = seminorm(alpha, f) * seminorm(beta, f)
        worst = max(worst, lhs - rhs)
        ok = ok and leq(lhs, rhs, 1e-9)
    results.append(CheckResult(name="convolution-submultiplicative", passed=ok, residual=max(worst, 0.0)))

    worst = 0.0
    ok = True
    for _ in range(trials):
        alpha = _random_vector(group, region, rng)
        size = int(rng.integers(0, len(region) + 1))
        keep = [region[int(i)] for i in rng.choice(len(region), size=size, replace=False)]
        lhs = seminorm(project(alpha, keep), f)
        rhs = seminorm(alpha, f)
        worst = max(worst, lhs - rhs)
        ok = ok and leq(lhs, rhs)
    results.append(CheckResult(name="projection-contraction", passed=ok, residual=max(worst, 0.0)))

    worst = 0.0
    ok = True
    for _ in range(trials):
        alpha = _random_vector(group, region, rng)
        u = dual_norm_extremizer(alpha, f)
        value = pairing(alpha, u)
        target = seminorm(alpha, f)
        err = abs(value - target)
        rel = err / max(target, 1.0)
        worst = max(worst, rel)
        ok = ok and rel <= REL_TOL
        member = random_rectangle_member(f, region, rng)
        ok = ok and leq(abs(pairing(alpha, member)), target)
    results.append(CheckResult(name="extremizer-optimal", passed=ok, residual=worst))

    ok = True
    agreements = 0
    for _ in range(trials):
        margin = 0.5 if rng.uniform() < 0.5 else 1.5
        table = random_rectangle_member(f, region, rng, margin=margin)
        members = [
            _random_vector(group, region, rng).scaled(0.0),  # zero member
        ]
        alpha = _random_vector(group, region, rng)
        n = seminorm(alpha, f)
        if n > 0:
            members.append(alpha.scaled(1.0 / (n * (1.0 + 1e-9))))
        pointwise, paired, _ = bipolar_pairing_audit(table, f, group, members)
        if pointwise == paired:
            agreements += 1
        else:
            ok = False
    results.append(
        CheckResult(
            name="bipolar-agreement",
            passed=ok,
            detail=f"{agreements}/{trials} agreed",
        )
    )

    ok = True
    worst = 0.0
    for _ in range(trials):
        alpha = _random_vector(group, region, rng)
        norm = seminorm(alpha, MinWeight(f, g))
        if norm == 0.0:
            continue
        target = float(rng.uniform(0.2, 1.2))
        alpha = alpha.scaled(target / norm)
        dec = absconv_decompose(alpha, f, g)
        expected_feasible = leq(dec.min_norm, 1.0)
        ok = ok and (dec.feasible == expected_feasible) and dec.verify(alpha, f, g)
        if dec.feasible:
            recombined = dec.beta.scaled(dec.lam) + dec.gamma.scaled(1.0 - dec.lam)
            worst = max(worst, recombined.max_abs_diff(alpha))
    results.append(CheckResult(name="decomposition-sound", passed=ok, residual=worst))
    return results
