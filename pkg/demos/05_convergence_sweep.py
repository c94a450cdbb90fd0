#!/usr/bin/env python3
# Convergence-order measurement: halve lambda repeatedly and watch the
# deviation between a short-time route and the spectral reference.  A ratio
# of 2 per halving is first order, 4 is second order.
#
# The same sweeps are available from the command line, e.g.
#   boxkernel sweep --nu 2 --methods spectral,pathsum-nu2 \
#       --lambda-chain 0.4,0.2,0.1,0.05 --theta 1.0 --theta-p 1.0 --output csv
from boxkernel import EvalConfig, compare_methods

CHAIN = [0.4, 0.2, 0.1, 0.05]


def sweep(nu, method_b, point, chain=CHAIN):
    rep = compare_methods(nu, [point], chain, "spectral", method_b, EvalConfig())
    devs = list(rep.rel_dev)
    print(f"  nu={nu:4}, {method_b:16} at {point}: ", end="")
    print("  ".join(f"{d:.3e}" for d in devs), end="")
    if rep.convergence_ratios:
        print("   ratios: " + ", ".join(f"{r:.2f}" for r in rep.convergence_ratios))
    if rep.im_over_re is not None:
        print("    |Im/Re| along the chain: " + "  ".join(f"{x:.1e}" for x in rep.im_over_re))


print("closed form (first order in lambda; ratios -> 2):")
sweep(1.0, "closed_form", (0.7, 0.7))
sweep(2.0, "closed_form", (1.2, 1.2))

print("\nnu = 2 reflection decomposition:")
sweep(2.0, "path_sum_nu2", (1.0, 1.0))

print("\ngeneral-coupling decomposition (real part), with imaginary diagnostic:")
sweep(1.3, "path_sum_general", (1.0, 1.0))
sweep(2.5, "path_sum_general", (0.8, 1.1))

print(
    "\nThe imaginary residue falls much faster than the real-part deviation:"
    "\nthe phase bookkeeping of the decomposition is consistent long before"
    "\nthe Gaussian saddle approximation itself has converged."
)
