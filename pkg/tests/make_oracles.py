"""Regenerate tests/oracles.py from mpmath at 30 significant digits.

Run as ``python tests/make_oracles.py > tests/oracles.py``.  Nothing here
imports ellhyp: each value is computed from its defining formula.
"""

import mpmath as mp

mp.mp.dps = 30


def c(z):
    z = mp.mpc(z)
    return f"complex({mp.nstr(z.real, 25)}, {mp.nstr(z.imag, 25)})"


def lit(zs):
    return "(" + ", ".join(repr(complex(z)) for z in zs) + ")"


def cgamma(x, n):
    x = mp.mpc(x)
    return mp.gamma((n + 1j * x) / 2) / mp.gamma(1 + (n - 1j * x) / 2)


def hgamma_int_rep(u, w1, w2, height=1):
    """exp(-pi i B22 / 2 - int e^{ux} / ((1 - e^{w1 x})(1 - e^{w2 x})) dx / x), over Im x = height."""
    u, w1, w2 = mp.mpc(u), mp.mpc(w1), mp.mpc(w2)

    def f(t):
        x = mp.mpc(t, height)
        return mp.exp(u * x) / ((1 - mp.exp(w1 * x)) * (1 - mp.exp(w2 * x)) * x)

    b22 = ((u - (w1 + w2) / 2) ** 2 - (w1**2 + w2**2) / 12) / (w1 * w2)
    return mp.exp(-1j * mp.pi * b22 / 2 - mp.quad(f, [-mp.inf, -5, 0, 5, mp.inf]))


def egamma(z, p, q, K=60):
    z, p, q = mp.mpc(z), mp.mpc(p), mp.mpc(q)
    out = mp.mpc(1)
    for j in range(K):
        for k in range(K):
            pq = p**j * q**k
            out *= (1 - p * q * pq / z) / (1 - z * pq)
    return out


def theta(z, q):
    return mp.qp(z, q) * mp.qp(q / z, q)


def jr_line(beta, gamma, c0):
    """Vertical-line J_r at Re u = c0:
    int prod Gamma(beta_i - u) Gamma(gamma_3,4 + u) / Gamma(1 - gamma_1,2 - u) du, upward."""
    def f(t):
        u = mp.mpc(c0, t)
        num = mp.fprod(mp.gamma(b - u) for b in beta) * mp.gamma(gamma[2] + u) * mp.gamma(gamma[3] + u)
        return num * mp.rgamma(1 - gamma[0] - u) * mp.rgamma(1 - gamma[1] - u) * 1j

    return mp.quad(f, [-mp.inf, -10, 0, 10, mp.inf])


def er_line(alpha):
    """(1 / 4 pi i) int prod Gamma(alpha_k +- u) / Gamma(+-2u) du on the imaginary axis."""
    def f(t):
        u = mp.mpc(0, t)
        num = mp.fprod(mp.gamma(a + u) * mp.gamma(a - u) for a in alpha)
        return num * mp.rgamma(2 * u) * mp.rgamma(-2 * u) * 1j

    return mp.quad(f, [-mp.inf, -5, 0, 5, mp.inf]) / (4j * mp.pi)


def main():
    lines = ['"""Frozen high-precision reference values; regenerate with make_oracles.py."""', ""]

    def put(name, val):
        lines.append(f"{name} = {val}")

    put("LOGGAMMA_3_4I", c(mp.loggamma(3 + 4j)))
    put("CGAMMA_07_02I_N2", c(cgamma(0.7 + 0.2j, 2)))
    put("HGAMMA_04_W11", c(hgamma_int_rep(0.4, 1, 1)))
    w2 = mp.exp(1j * mp.pi / 7)
    put("HGAMMA_03_02I_WPI7", c(hgamma_int_rep(0.3 + 0.2j, 1, w2)))
    put("EGAMMA_Z_P_Q", c(egamma(0.7 + 0.3j, 0.2 + 0.1j, -0.15 + 0.25j)))
    put("THETA_Z_Q", c(theta(0.8 - 0.4j, 0.3 + 0.2j)))
    beta = [0.6 + 0.1j, 0.5 - 0.2j, 0.45 + 0.3j, 0.4 + 0j]
    gamma = [0.1 + 0j, 0.2j, -0.2j, -0.05 - 0.2j]
    put("JR_BETA", lit(beta))
    put("JR_GAMMA", lit(gamma))
    put("JR_VALUE", c(jr_line(beta, gamma, 0.25)))
    alpha = [0.3 + 0.1j, 0.5 - 0.2j, 0.4 + 0.25j, 0.7 + 0j, 0.35 - 0.1j, 0.6 + 0.3j]
    put("ER_ALPHA", lit(alpha))
    put("ER_VALUE", c(er_line(alpha)))
    print("\n".join(lines))


if __name__ == "__main__":
    main()
