"""Airy function and the Tracy-Widom GUE distribution F2.

F2(r) = det(I - K_Ai) on L^2(r, oo), with the Airy kernel
K(x,y) = (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y), evaluated by Nystrom
discretization with Gauss-Legendre nodes.

Airy evaluation, chosen per argument:

* ``-8 <= x < 2``: Maclaurin series (cancellation costs at most ~1e-11
  absolute at the left end);
* ``x >= 2``: Ai(x) = e^{-zeta}/pi * int_0^oo exp(-sqrt(x) t^2) cos(t^3/3) dt,
  whose integrand is smooth and Gaussian-damped, so Gauss-Legendre gives
  full relative accuracy;
* ``x < -8``: the oscillatory asymptotic expansion, truncated at its
  smallest term (zeta >= 15 there).
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

AI0 = 0.355028053887817239260     # Ai(0)
AIP0 = -0.258819403792806798405   # Ai'(0)

MACLAURIN_LO = -8.0
MACLAURIN_HI = 2.0


def _maclaurin(x):
    x3 = x ** 3
    f = np.ones_like(x); g = x.copy()
    fp = np.zeros_like(x); gp = np.ones_like(x)
    tf, tg = np.ones_like(x), x.copy()
    tfp, tgp = 0.5 * x * x, np.ones_like(x)
    fp += tfp
    for k in range(200):
        tf = tf * x3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * x3 / ((3 * k + 3) * (3 * k + 4))
        tfp = tfp * x3 / ((3 * k + 3) * (3 * k + 5))
        tgp = tgp * x3 / ((3 * k + 1) * (3 * k + 3))
        f += tf; g += tg; fp += tfp; gp += tgp
        if np.all(np.abs(tf) + np.abs(tg) + np.abs(tfp) + np.abs(tgp) < 1e-18):
            break
    return AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp


@lru_cache(maxsize=None)
def _legendre(m: int):
    return np.polynomial.legendre.leggauss(m)


def _integral_rep(x):
    # t-range where exp(-sqrt(x) t^2) > 1e-20
    s = np.sqrt(x)
    tmax = np.sqrt(46.0 / s)
    t0, w0 = _legendre(80)
    t = 0.5 * (t0[None, :] + 1) * tmax[:, None]
    w = 0.5 * w0[None, :] * tmax[:, None]
    damp = np.exp(-s[:, None] * t * t) * np.cos(t ** 3 / 3)
    zeta = 2.0 / 3.0 * x * s
    e = np.exp(-zeta) / math.pi
    i0 = (w * damp).sum(1)
    i2 = (w * damp * t * t).sum(1)
    ai = e * i0
    # d/dx of e^{-zeta} I0(x): -sqrt(x) e^{-zeta} I0 - e^{-zeta} I2 / (2 sqrt(x))
    aip = -s * ai - e * i2 / (2 * s)
    return ai, aip


def _asym_coeffs(kmax: int):
    u = [1.0]
    for k in range(1, kmax + 1):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    v = [-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(kmax + 1)]
    return np.array(u), np.array(v)


def _negative_asym(x):
    a = -x
    zeta = 2.0 / 3.0 * a ** 1.5
    u, v = _asym_coeffs(30)
    ai = np.empty_like(x); aip = np.empty_like(x)
    for idx, z in enumerate(zeta):
        pw = z ** -np.arange(len(u), dtype=float)
        # truncate just before the smallest term
        terms = np.abs(u * pw)
        K = int(np.argmin(terms))
        sgn = np.array([(-1) ** (k // 2) for k in range(K)], dtype=float)
        even = np.arange(K) % 2 == 0
        pe = np.sum((sgn * u[:K] * pw[:K])[even]); qe = np.sum((sgn * u[:K] * pw[:K])[~even])
        pv = np.sum((sgn * v[:K] * pw[:K])[even]); qv = np.sum((sgn * v[:K] * pw[:K])[~even])
        th = z + math.pi / 4
        ai[idx] = (math.sin(th) * pe - math.cos(th) * qe) / (math.sqrt(math.pi) * a[idx] ** 0.25)
        aip[idx] = -a[idx] ** 0.25 / math.sqrt(math.pi) * (math.cos(th) * pv + math.sin(th) * qv)
    return ai, aip


def airy(x):
    """Return (Ai(x), Ai'(x)) for scalar or array x."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    ai = np.empty_like(x); aip = np.empty_like(x)
    lo = x < MACLAURIN_LO
    hi = x >= MACLAURIN_HI
    mid = ~(lo | hi)
    for mask, fn in ((lo, _negative_asym), (mid, _maclaurin), (hi, _integral_rep)):
        if mask.any():
            ai[mask], aip[mask] = fn(x[mask])
    if scalar:
        return float(ai[0]), float(aip[0])
    return ai, aip


class TWQuadrature:
    """Nystrom discretization of the Airy kernel on (r, oo).

    The half-line is truncated at max(r, 0) + span, where the kernel is
    below double precision, and mapped onto Gauss-Legendre nodes."""

    def __init__(self, nodes: int = 80, span: float = 16.0):
        self.nodes = nodes
        self.span = span

    def kernel_matrix(self, r: float) -> np.ndarray:
        upper = max(r, 0.0) + self.span
        t, w = _legendre(self.nodes)
        x = r + 0.5 * (t + 1) * (upper - r)
        w = 0.5 * w * (upper - r)
        ai, aip = airy(x)
        dx = x[:, None] - x[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            K = (ai[:, None] * aip[None, :] - aip[:, None] * ai[None, :]) / dx
        K[np.diag_indices_from(K)] = aip * aip - x * ai * ai
        sw = np.sqrt(w)
        return sw[:, None] * K * sw[None, :]

    def cdf(self, r: float) -> float:
        m = self.kernel_matrix(float(r))
        return float(np.clip(np.linalg.det(np.eye(len(m)) - m), 0.0, 1.0))


_DEFAULT = TWQuadrature()


def tw2_cdf(r, quad: TWQuadrature | None = None):
    """Tracy-Widom GUE distribution function F2(r); vectorized over r."""
    quad = quad or _DEFAULT
    r = np.asarray(r, dtype=float)
    out = np.array([quad.cdf(v) for v in r.ravel()]).reshape(r.shape)
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=8)
def tw2_moments(nodes: int = 80, lo: float = -12.0, hi: float = 8.0,
                m: int = 120) -> tuple[float, float]:
    """Mean and standard deviation of F2 from tail integrals of the cdf.

    E X = int_0^oo (1-F) - int_-oo^0 F and
    E X^2 = 2 int_0^oo r (1 - F(r)) dr + 2 int_-oo^0 |r| F(r) dr."""
    quad = TWQuadrature(nodes)
    t, w = _legendre(m)
    neg = 0.5 * (t + 1) * lo        # nodes in (lo, 0)
    wn = 0.5 * w * (-lo)
    pos = 0.5 * (t + 1) * hi
    wp = 0.5 * w * hi
    Fn = tw2_cdf(neg, quad)
    Fp = tw2_cdf(pos, quad)
    mean = np.sum(wp * (1 - Fp)) - np.sum(wn * Fn)
    second = 2 * np.sum(wp * pos * (1 - Fp)) + 2 * np.sum(wn * (-neg) * Fn)
    return float(mean), float(math.sqrt(second - mean ** 2))
