"""
Weighted convolution seminorms and their polar geometry
=======================================================

Finitely supported vectors over the integers form a convolution algebra;
an exponential-length weight makes the weighted absolute sum
submultiplicative. Extremizers, polars, and the two-weight decomposition
are all small enough here to inspect by hand.
"""

import math

from dualitylab import (
    Constant,
    ExpLength,
    GroupSpec,
    WeightFunction,
    WeightedVector,
    absconv_decompose,
    convolve,
    dual_norm_extremizer,
    explore_ball,
    make_group,
    pairing,
    rectangle_polar_contains,
    seminorm,
    standard_generators,
    weighted_property_trials,
)

z = make_group(GroupSpec.free_abelian(1))
report = explore_ball(z, standard_generators(z), WeightFunction.enumerated(2), radius=14)
f = ExpLength(report)  # weight e^length, with length(+1) = 1 and length(-1) = 2

# a vector is a finite table of complex coefficients
alpha = WeightedVector.from_items(z, [((0,), 1.0), ((1,), -2.0)])
print(f"seminorm of delta_0 - 2 delta_1: {seminorm(alpha, f):.6f} = 1 + 2e")

# convolution multiplies like polynomials in the shift
beta = WeightedVector.from_items(z, [((1,), 0.5), ((2,), 0.25j)])
gamma = convolve(alpha, beta)
print("convolution support:", [z.format(x) for x in gamma.support])
print(f"submultiplicative: {seminorm(gamma, f):.4f} <= "
      f"{seminorm(alpha, f) * seminorm(beta, f):.4f}")

# the extremizer is the rectangle member that attains the dual pairing
u = dual_norm_extremizer(alpha, f)
print(f"extremizer pairing {pairing(alpha, u).real:.12f} vs seminorm {seminorm(alpha, f):.12f}")

# polar membership is just the unit ball of the seminorm
small = alpha.scaled(1.0 / (seminorm(alpha, f) * 1.0000001))
print("alpha in the polar?", rectangle_polar_contains(alpha, f),
      "| rescaled copy?", rectangle_polar_contains(small, f))

# two weights, one vector: splitting the support by the cheaper weight
# certifies membership in the polar of the intersection rectangle
g = Constant(3)
mixed = WeightedVector.from_items(z, [((0,), 0.3), ((-2,), 0.05)])
dec = absconv_decompose(mixed, f, g)
print(f"decomposition feasible={dec.feasible} lambda={dec.lam:.4f} "
      f"min-norm={dec.min_norm:.4f} verified={dec.verify(mixed, f, g)}")

heavy = mixed.scaled(10)
print("10x heavier vector feasible?", absconv_decompose(heavy, f, g).feasible)

# the randomized audit drives all five properties at once
half = [x for x, v in report.lengths.items() if 2 * v <= 14]
for check in weighted_property_trials(f, g, half, trials=300, seed=7):
    print(f"  {check.name:30s} passed={check.passed} residual={check.residual:.3g}")
