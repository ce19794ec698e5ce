"""Shared independent oracles for the test suite.

Everything here is deliberately primitive (composite Simpson, dense
scans) and shares no code with the package's adaptive engine or spline
caches, so agreement between the two routes is meaningful.
"""

import numpy as np


def simpson(f, a, b, n=2**15):
    """Composite Simpson on [a, b] with n panels (n even)."""
    x = np.linspace(a, b, n + 1)
    w = np.ones_like(x)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return (b - a) / n / 3.0 * float(w @ f(x))


def simpson_log(f, hi=1.0, n=2**16, u_max=40.0):
    """Composite Simpson for int_0^hi f(x) dx under u = -log(x).

    Covers x down to exp(-u_max); fine for integrands vanishing at 0.
    """
    u = np.linspace(-np.log(hi), u_max, n + 1)
    x = np.exp(-u)
    return simpson_weights_apply(u, f(x) * x)


def simpson_weights_apply(u, g):
    w = np.ones_like(u)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return (u[-1] - u[0]) / (len(u) - 1) / 3.0 * float(w @ g)
