"""Arithmetic backend selection and Gauss-Legendre rules.

Formulas in this package are written once and evaluated either with numpy
(float64 scalars or arrays) or with mpmath (extended precision scalars).  The
verification pipeline uses the latter to keep finite-difference round-off far
below truncation error.
"""

from __future__ import annotations

import functools

import mpmath
import numpy as np


class _NumpyLib:
    sqrt = staticmethod(np.sqrt)
    exp = staticmethod(np.exp)
    log = staticmethod(np.log)
    sin = staticmethod(np.sin)
    cos = staticmethod(np.cos)
    sinh = staticmethod(np.sinh)
    cosh = staticmethod(np.cosh)


class _MpLib:
    sqrt = staticmethod(mpmath.sqrt)
    exp = staticmethod(mpmath.exp)
    log = staticmethod(mpmath.log)
    sin = staticmethod(mpmath.sin)
    cos = staticmethod(mpmath.cos)
    sinh = staticmethod(mpmath.sinh)
    cosh = staticmethod(mpmath.cosh)


NP = _NumpyLib()
MP = _MpLib()


def is_mp(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def lib(x):
    return MP if is_mp(x) else NP


def is_scalar(x) -> bool:
    return is_mp(x) or np.ndim(x) == 0


@functools.lru_cache(maxsize=None)
def _leggauss_float(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


@functools.lru_cache(maxsize=None)
def _leggauss_mp(n: int, dps: int):
    # Newton-polish the float64 nodes in the working precision.
    with mpmath.workdps(dps + 10):
        x0, _ = _leggauss_float(n)
        nodes, weights = [], []
        def p_and_dp(x):
            p = mpmath.legendre(n, x)
            return p, n * (x * p - mpmath.legendre(n - 1, x)) / (x**2 - 1)

        for guess in x0:
            x = mpmath.mpf(guess)
            for _ in range(100):
                p, dp = p_and_dp(x)
                step = p / dp
                x -= step
                if abs(step) < mpmath.mpf(10) ** (-(dps + 5)):
                    break
            _, dp = p_and_dp(x)
            nodes.append(x)
            weights.append(2 / ((1 - x**2) * dp**2))
    return tuple(+x for x in nodes), tuple(+w for w in weights)


def gauss_legendre(f, a, b, n: int = 12):
    """Fixed n-point Gauss-Legendre rule on [a, b].

    With mpmath endpoints the nodes are computed at the current precision and
    ``f`` is called once per node; otherwise ``f`` receives a node array.
    """
    half = (b - a) / 2
    mid = (a + b) / 2
    if is_mp(a) or is_mp(b):
        nodes, weights = _leggauss_mp(n, mpmath.mp.dps)
        return half * mpmath.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))
    x, w = _leggauss_float(n)
    return half * float(np.dot(w, f(mid + half * x)))
