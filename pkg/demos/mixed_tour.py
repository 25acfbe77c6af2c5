"""Mixed norms on the plane and the Gaussian counterexample family.

The functions f_n(x, y) = exp(-(x^2 n^2 + y^2 / n^2)) all have the same
L^1 + L^2 size, yet their L^{2,1} norms grow like n^(1/4).  Summing
rescaled copies gives a function whose Phi mixed-norm bound stays
bounded while the L^{2,1} lower bound grows logarithmically.

Run: python demos/mixed_tour.py
"""

from orlicz import counterexample_partial_sums, gaussian_family_values, mixed_norm, parse_integrand, parse_young
from orlicz.mixed import gaussian_family_numeric

if __name__ == "__main__":
    print("Gaussian family: closed form vs quadrature")
    for n in (2, 3, 4):
        s, l21 = gaussian_family_values(n)
        ns, nl21 = gaussian_family_numeric(n)
        print("    n=%d  L1+L2 = %.10f / %.10f   L21 = %.10f / %.10f" % (n, s, ns, l21, nl21))

    print("\npartial sums of the counterexample")
    for N in (1e2, 1e3, 1e4, 1e6):
        bound, lower = counterexample_partial_sums(int(N))
        print("    N=%-8g phi bound = %.6f   L21 lower bound = %.6f" % (N, bound, lower))

    f = parse_integrand("separable(indicator(1, 2), indicator(1, 1))")
    res = mixed_norm(f, parse_young("catalog(power_sum, 1, 2)"))
    print("\nmixed norm of a separable indicator under t + t^2 = %.10g" % res.norm)
    print("    components: L11 = %.6g, L21 = %.6g" % (res.l11, res.l21))
