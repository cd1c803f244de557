"""Independent reference computations used by the tests.

Nothing here imports the package: RK4 integration, arbitrary-precision
evaluation of the closed forms, and Gauss-Hermite expectations.
"""

import math

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def rk4(f, y0, duration, h):
    n = int(round(duration / h))
    h = duration / n
    y = float(y0)
    for _ in range(n):
        k1 = f(y)
        k2 = f(y + h / 2 * k1)
        k3 = f(y + h / 2 * k2)
        k4 = f(y + h * k3)
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def mp_stage2(y_entry, y_frozen, a1, a4, sigma, r, rho, delta, dW, linear=0):
    y, yf = mp.mpf(y_entry), mp.mpf(y_frozen)
    a1, a4, sigma, r, rho = map(mp.mpf, (a1, a4, sigma, r, rho))
    delta, dW, linear = mp.mpf(delta), mp.mpf(dW), mp.mpf(linear)
    expo = -delta * (sigma**2 * yf ** (rho - 1) + a4 * yf ** ((r - 1) / 2) - linear)
    expo += 2 * sigma * yf ** ((rho - 1) / 2) * dW
    return (a1 * delta + y) * mp.e**expo


def mp_sqrt_flow(y, a, a2, delta):
    y, a, a2, delta = map(mp.mpf, (y, a, a2, delta))
    c = a2 / a
    return (c + (mp.sqrt(y) - c) * mp.e ** (a * delta / 2)) ** 2


def mp_gen_step(y_n, a1, a2, a3, a4, b1, b2, b3, sigma, r, rho, delta, dW):
    y_n, b1, b2, b3, d = map(mp.mpf, (y_n, b1, b2, b3, delta))
    y1 = max(mp.sqrt(y_n) - b3 * mp.log(1 + y_n) * d / 2, 0) ** 2
    y2 = y1 * mp.e ** (-b2 * y_n ** mp.mpf("0.25") * d)
    y3 = max(y2 ** mp.mpf("0.25") - b1 * d / 4, 0) ** 4
    y4 = mp_sqrt_flow(y3, a3, a2, delta)
    return mp_stage2(y4, y_n, a1, a4, sigma, r, rho, delta, dW)


def mp_cir_step(y_n, k, l, d, sigma, delta, dW):
    y_n, k, l, d, sigma, delta, dW = map(mp.mpf, (y_n, k, l, d, sigma, delta, dW))
    y1 = y_n * mp.e ** (-(k + d * y_n) * delta)
    root = mp.sqrt(max(y1 + (k * l - sigma**2 / 4) * delta, 0)) + sigma / 2 * dW
    return root**2


def gaussian_mean(fn, delta, nodes=40):
    """``E[fn(dW)]`` for ``dW ~ N(0, delta)`` by Gauss-Hermite quadrature."""
    x, w = np.polynomial.hermite_e.hermegauss(nodes)
    return float(np.sum(w * np.array([fn(math.sqrt(delta) * xi) for xi in x])) / math.sqrt(2 * math.pi))


def richardson_slope(g, h=1e-4):
    """d/dt g(t) at t = 0 from one-sided differences, extrapolated twice."""
    g0 = g(0.0)
    d1 = (g(h) - g0) / h
    d2 = (g(h / 2) - g0) / (h / 2)
    d4 = (g(h / 4) - g0) / (h / 4)
    e1 = 2 * d2 - d1
    e2 = 2 * d4 - d2
    return (4 * e2 - e1) / 3
