"""Equivalence scans, class exponents and multiplicativity.

Class exponents are the tightest exponents over an equivalence class;
they come from the end limits of t*phi'(t)/phi(t) and are unchanged by the
constructors, while the plain Lebesgue exponents move.

Run: python demos/equivalence_tour.py
"""

from orlicz import (
    class_exponents,
    construct_widened,
    equivalence_scan,
    inclusion_report,
    lebesgue_exponents,
    multiplicativity_scan,
    parse_young,
)

PAIRS = [
    ("catalog(power_log, 2, 1)", "catalog(power_sum, 2, 3)"),
    ("catalog(flat_origin)", "catalog(exp_minus_one)"),
    ("splice([(0,1): power(0.5,2,0)], [(1,2): power(1,1,-0.5)], [(2,inf): power(0.25,2,0.5)])", "catalog(power, 2)"),
]

if __name__ == "__main__":
    for a, b in PAIRS:
        rep = equivalence_scan(parse_young(a), parse_young(b))
        print(f"{a[:40]:40s} vs {b:26s} -> {rep.bounded}, c = {rep.c_scan:.4g}")

    base = parse_young("catalog(power_log_shift)")
    wide, _ = construct_widened(base, 1.5, 3, 1.2, 4)
    print("\nLebesgue exponents: base (%.4g, %.4g), widened (%.4g, %.4g)" % (*lebesgue_exponents(base), *lebesgue_exponents(wide)))
    print("class exponents:    base (%.4g, %.4g), widened (%.4g, %.4g)" % (*class_exponents(base), *class_exponents(wide)))

    print("\ninclusions for t^2 ln(1+t):")
    for line in inclusion_report(parse_young("catalog(power_log, 2, 1)")).lines():
        print("   ", line)

    print("\nmultiplicativity:")
    for text in ("catalog(power, 2.5)", "catalog(power_sum, 2, 3)"):
        rep = multiplicativity_scan(parse_young(text))
        print("   ", text)
        for line in rep.lines():
            print("       ", line)
