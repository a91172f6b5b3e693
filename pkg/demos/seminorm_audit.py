"""
Semicharacters, majorization, and max-type seminorm audits
==========================================================

Weights built from the closed combinator grammar are submultiplicative by
construction; raw tables are audited by sampling. Majorization recovers
generator weights whose exponential length dominates a given weight.
"""

import numpy as np

from dualitylab import (
    Constant,
    ExpLength,
    GroupSpec,
    Scale,
    SubmultiplicativeSeminorm,
    WeightFunction,
    build_semicharacter,
    domination_check,
    explore_ball,
    majorization_check,
    majorize,
    make_group,
    sampled_submultiplicativity,
    seminorm_support_check,
    standard_generators,
    summability_check,
)

z = make_group(GroupSpec.free_abelian(1))
report = explore_ball(z, standard_generators(z), WeightFunction.enumerated(2), radius=14)

# recipes nest the grammar: max(2 e^length, 1 + const 3)
recipe = {
    "kind": "max",
    "args": [
        {"kind": "scale", "value": 2, "arg": {"kind": "expLength"}},
        {"kind": "sum", "args": [{"kind": "const", "value": 1}, {"kind": "const", "value": 3}]},
    ],
}
weight = build_semicharacter(recipe, report)
half = [x for x, v in report.lengths.items() if 2 * v <= 14]
audit = sampled_submultiplicativity(weight, half, group=z, samples=500, seed=0)
print(f"recipe weight: {audit.checked} sampled products, violations {len(audit.violations)}")

# majorization: round log f up on each generator, then the exponential of
# the explored length dominates f at every product of one or more generators.
# The identity is the lone exception here: a scaled weight has f(e) = 2.7,
# while every word length assigns the identity the value 1.
f = Scale(2.7, ExpLength(report))
weights = majorize(f, report.generators)
print("majorizing generator weights:", [str(w) for w in weights.values])
checked, violations = majorization_check(f, explore_ball(
    z, report.generators, weights, radius=16))
print(f"domination checked on {checked} elements, "
      f"violations {list(violations)} (the identity, as expected)")

# max-type seminorms with finite support: the three structural checks plus
# domination by the indicator sum and the enveloped summability bound
rng = np.random.default_rng(5)
support = ((0,), (1,), (-1,), (2,))
q = SubmultiplicativeSeminorm(
    support=support,
    weights={(0,): 1.0, (1,): 2.0, (-1,): 3.5, (2,): 1.25},
    scale=1.5,
)
for check in seminorm_support_check(q, rng, trials=200):
    print(f"  {check.name:24s} passed={check.passed}")
dom = domination_check(q, rng, trials=200)
print(f"  {dom.name:24s} passed={dom.passed}")
summ = summability_check(q, Constant(1), report)
print(f"  {summ.name:24s} passed={summ.passed} ({summ.detail})")
