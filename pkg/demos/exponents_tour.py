"""Lebesgue exponents of the catalog forms and of the two worked splices.

For each function the script prints the exact exponents (q, p), the limits
of t*phi'(t)/phi(t) at both ends, and whether Delta_2 holds.  For t^2 ln(1+t) the
ratio tends to 3 at the origin and to 2 at infinity, so the exponents are
(2, 3) with the upper one reached only in the limit at 0.

Run: python demos/exponents_tour.py
"""

from orlicz import exponent_report, item3_splice, item4_splice, parse_young

FORMS = {
    "t^2": "catalog(power, 2)",
    "t^2 + t^3": "catalog(power_sum, 2, 3)",
    "t^2 ln(1+t)": "catalog(power_log, 2, 1)",
    "t^2 ln(2+t)": "catalog(power_log_shift)",
    "t e^t": "catalog(power_exp, 1)",
}


def show(name, phi):
    rep = exponent_report(phi)
    print(f"{name}")
    for line in rep.lines():
        print(f"    {line}")


if __name__ == "__main__":
    for name, text in FORMS.items():
        show(name, parse_young(text))
    show("item3 splice (expect 4/3, 2)", item3_splice())
    show("item4 splice (expect 2, 48/17)", item4_splice())
