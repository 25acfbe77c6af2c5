"""Luxemburg norms: closed form, quadrature and the modular trichotomy.

The witness f(x) = (1 + x^2)^(-1/2) on the half-line has moments
int f^2 = pi/2 and int f^3 = 1, so under t^2 + t^3 its norm solves
(pi/2) / s^2 + 1 / s^3 = 1.  The script solves that cubic in closed form,
then recovers the same value by quadrature plus bisection.

Run: python demos/norms_tour.py
"""

import math

from orlicz import luxemburg_norm, modular, parse_integrand, parse_young, power_sum_norm_closed_form, trichotomy_check

if __name__ == "__main__":
    phi = parse_young("catalog(power_sum, 2, 3)")
    f = parse_integrand("cauchy(0.5, half)")

    closed = power_sum_norm_closed_form(math.pi / 2, 1, 2, 3)
    numeric = luxemburg_norm(f, phi)
    print("closed form norm     = %.15g" % closed)
    print("quadrature norm      = %.15g  (%d bisection steps)" % (numeric.norm, numeric.iterations))
    print("modular              = %.15g  (1 + pi/2 = %.15g)" % (modular(f, phi), 1 + math.pi / 2))
    v = trichotomy_check(f, phi)
    print("trichotomy case      = %d  (norm > 1 and modular > 1)" % v.case)

    print("\nCauchy(1/4) separates t^2 ln(1+t) from t^2 + t^3:")
    g = parse_integrand("cauchy(0.25)")
    for text in ("catalog(power_log, 2, 1)", "catalog(power_sum, 2, 3)"):
        res = luxemburg_norm(g, parse_young(text))
        print("    %-28s norm = %s" % (text, "inf" if not res.finite else "%.10g" % res.norm))
