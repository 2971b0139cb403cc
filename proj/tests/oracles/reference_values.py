"""Regenerates the reference values frozen in the unit tests (mpmath, 30 digits)."""
from mpmath import mp, mpf, mpc, airyai, airyaizero, pi, sqrt, exp, quad, re, cbrt, expj, gamma, beta

mp.dps = 30
I = mpc(0, 1)
C13 = cbrt(2)

N = 40
c = [mpf(1)]
for n in range(1, N + 1):
    c.append(-mpf(1) / 16 * (2 * n - 3) * (2 * n + 1) / (n * n * (2 * n - 1)) * c[-1])
a = [mpf(1)]
b = [mpf(0), mpf(2) / 3]
for n in range(1, N + 1):
    if n >= 2:
        b.append(sum(1 / (gamma(k + 1) * (-2) ** (k + 1)) * a[n - k - 1] * beta(3 * n - 2 * k - 2, k + mpf(3) / 2)
                     for k in range(n)))
    a.append(c[n] - sum(1 / (pi * gamma(k + 1) * (-2) ** k) * b[n - k] * beta(3 * n - 2 * k - mpf(1) / 2, k + mpf(3) / 2)
                        for k in range(n)))

zs = [airyaizero(k) for k in range(1, 80)]
zd = [airyai(z, 1) for z in zs]


def p_tilde(t):
    return -sqrt(pi / 2) * sum(a[k] * t ** (3 * k) for k in range(N + 1)) + \
        sum(b[k] * t ** (3 * k - mpf(3) / 2) for k in range(1, N + 1))


def p(u):
    u = mpf(u)
    if u <= 1:
        return exp(u ** 3 / 6) * (p_tilde(u) + u ** (-mpf(3) / 2)) / sqrt(2 * pi)
    return 2 * sum(exp(C13 * z * u) for z in zs)


def g(x):
    x = mpf(x)
    if x <= -1:
        return mpf(4) ** (mpf(1) / 3) * sum(exp(C13 * z * abs(x)) / d for z, d in zip(zs, zd))
    return 2 / (mpf(2) ** (mpf(2) / 3) * pi) * quad(lambda u: re(expj(-u * x) / airyai(I * u / C13)), [0, 2, 5, 10, 15, 25])


def u2(x):
    return exp(mpf(2) / 3 * mpf(x) ** 3) * g(x)


k1 = -(mpf(2) ** (mpf(7) / 3) / (6 * pi)) * 2 * quad(lambda u: re(I * u / airyai(I * u) ** 2), [0, 2, 5, 10, 20])

print("coeff c1 a1 b2", c[1], a[1], b[2])
print("Ai(1+i)", airyai(mpc(1, 1)), airyai(mpc(1, 1), 1))
print("a1 a2 Ai'(a1)", zs[0], zs[1], zd[0])
for x in [-3, -2, -1, 0, 1, 2]:
    print("g", x, g(x))
for x in [-1, 0, 1, 2]:
    print("u2", x, u2(x))
for u in ["0.5", "1", "2"]:
    print("p", u, p(u))
print("k1", k1, "ev0_sq", k1 / 8, "e_max", 3 * k1 / 8)
