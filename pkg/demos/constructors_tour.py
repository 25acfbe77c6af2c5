"""Splices equivalent to a base function with prescribed or widened exponents.

1. A splice equivalent to t^2 whose exponents are exactly (1.5, 3).
2. POWER_LOG_SHIFT widened past (1.5, 3) without leaving its equivalence class.
3. POWER_SUM(2, 3) approximated by equivalent splices whose exponent gap
   shrinks as the construction parameter n grows.

Run: python demos/constructors_tour.py
"""

from orlicz import (
    construct_epsilon_tight,
    construct_target_exponents,
    construct_widened,
    equivalence_scan,
    lebesgue_exponents,
    parse_young,
    render,
)
from orlicz.constructors import exponent_gap

if __name__ == "__main__":
    psi, params = construct_target_exponents(1.5, 2, 3, 1.2, 4)
    print("target construction")
    print("   ", render(psi))
    print("    measured exponents = (%.10g, %.10g)" % lebesgue_exponents(psi))
    print("    knots gamma = %.6g, delta = %.6g" % (params.gamma, params.delta))

    base = parse_young("catalog(power_log_shift)")
    wide, _ = construct_widened(base, 1.5, 3, 1.2, 4)
    print("\nwidened POWER_LOG_SHIFT")
    print("    base exponents     = (%.6g, %.6g)" % lebesgue_exponents(base))
    print("    widened exponents  = (%.6g, %.6g)" % lebesgue_exponents(wide))
    print("    equivalence scan   =", equivalence_scan(wide, base).bounded)

    target = parse_young("catalog(power_sum, 2, 3)")
    q, p = lebesgue_exponents(target)
    print("\nepsilon-tight approximations of t^2 + t^3, r = 2.5")
    for n in (1e2, 1e3, 1e4):
        psi, _ = construct_epsilon_tight(target, 2.5, n)
        print("    n = %-6g gap = %.3g   scan constant = %.4g" % (n, exponent_gap(psi, q, p), equivalence_scan(psi, target).c_scan))
