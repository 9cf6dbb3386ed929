"""High-precision reference values frozen into the Rust test suites.

Run with `python3 tools/oracle_values.py`; requires mpmath.
"""
from mpmath import mp, mpf, exp, sqrt, asin, atan, pi, cos, sin, log, gammainc, findroot

mp.dps = 50


def los(a, b, theta_rad):
    deg = theta_rad * 180 / pi
    return 1 / (1 + a * exp(-b * (deg - a)))


def link_gain(a, b, xi_los, d_w, theta_w, L):
    d_b = sqrt(L**2 + d_w**2 - 2 * d_w * L * cos(theta_w))
    theta_b = asin(d_w * sin(theta_w) / d_b)
    return d_b**xi_los * los(a, b, theta_b)


def kl(n, x):
    return mpf(n) / 2 * (log(1 + x) - x / (1 + x))


def h_dagger(a, b, xi_los, L):
    g = lambda h: h + 180 * b * L / (pi * xi_los) * (1 - los(a, b, atan(h / L)))
    return findroot(g, (mpf(1), mpf(L)), solver="bisect", tol=mpf(10) ** -40)


a, b = mpf("4.88"), mpf("0.429")
print("los(10deg)          ", mp.nstr(los(a, b, pi / 18), 20))
print("los(90deg) 1-p      ", mp.nstr(1 - los(a, b, pi / 2), 20))
print("link_gain           ", mp.nstr(link_gain(a, b, -2, mpf(3000), pi / 6, mpf(10000)), 20))
print("kl n=200 x=2e-3     ", mp.nstr(kl(200, mpf("2e-3")), 20))
print("kl n=2 x=1          ", mp.nstr(kl(2, mpf(1)), 20))
print("h_dagger L=1000 xi=-3", mp.nstr(h_dagger(a, b, -3, mpf(1000)), 20))
for (s, x) in [(5, 3.5), (100, 95), (500, 520.25)]:
    print("P(%s,%s)" % (s, x), mp.nstr(gammainc(s, 0, x, regularized=True), 25))
