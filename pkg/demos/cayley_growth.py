"""
Weighted word lengths and sphere growth on Cayley graphs
========================================================

Explore weighted balls in the free group, the integer lattice, and the
discrete Heisenberg group; count spheres against the 2^(n-1) composition
bound and sum the exponential tail.
"""

from dualitylab import (
    GroupSpec,
    WeightFunction,
    explore_ball,
    make_group,
    sphere_bound_check,
    standard_generators,
    subadditivity_check,
    summability_partial_sums,
)

RADIUS = 10

for spec in (GroupSpec.free(2), GroupSpec.free_abelian(2), GroupSpec.heisenberg()):
    group = make_group(spec)
    generators = standard_generators(group)
    # enumerated weights assign cost k to the k-th generator, so every
    # weight is a distinct positive integer and the sphere bound applies
    weights = WeightFunction.enumerated(len(generators.elements))
    report = explore_ball(group, generators, weights, radius=RADIUS)
    print(f"\n{group.label}: {len(report.lengths)} elements settled within radius {RADIUS}")

    # lengths are genuine lengths: sampled subadditivity never fails
    sub = subadditivity_check(report, samples=300, seed=1)
    print(f"  subadditivity sampled on {sub.checked} pairs, violations: {len(sub.violations)}")

    # sphere cardinalities against the composition-counting bound
    spheres = sphere_bound_check(report)
    print("  level  count  bound")
    for row in spheres.rows:
        print(f"  {row.level:5d}  {row.count:5d}  {row.bound:5d}")

    # with weights >= 1 the exponential series over the ball stays under
    # the closed form 1 + r/(2(1-r)) with r = 2/e
    summ = summability_partial_sums(report)
    print(f"  partial sum {summ.partial:.6f} <= closed form {summ.closed_form:.6f}: {summ.passed}")
