"""Numerical evaluation of the discrete tacnode kernel.

The r-fold W-integrals Theta_r, Theta^+_{r-1}, Theta^-_{r+1} all have the form
int prod f(W_a) Delta(W)^2, so Andreief's identity turns them into r! times a
Hankel determinant of one-dimensional moments.  The identity holds for any
measure, in particular for the discrete quadrature measure, so it agrees with
direct r-fold tensor summation up to rounding (``theta_tensor`` keeps that
route as a check for r <= 2).

Vertical lines W = a + i t use the trapezoid rule (dW/2 pi i = dt/2 pi) and
the circle about 0 uses the equispaced rule.  The parts of each term that do
not depend on (tau, theta) are cached as matrices over the quadrature nodes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class TacParams:
    r: int
    rho: int
    beta: float = 0.0

    def __post_init__(self):
        if self.r < 0 or self.rho < 0:
            raise ValueError("r and rho must be nonnegative")


@dataclass(frozen=True)
class QuadConfig:
    a: float = 0.5
    eps: float = 0.25
    T: float = 8.0
    h: float = 1 / 64
    n_circle: int = 64
    max_r: int = 4
    imag_tol: float = 1e-8

    def __post_init__(self):
        if not self.a > self.eps > 0:
            raise ValueError("need line abscissa a > circle radius eps > 0")
        if self.h <= 0 or self.T <= 0 or self.n_circle < 8:
            raise ValueError("bad quadrature sizes")

    def line(self):
        n = int(round(self.T / self.h))
        t = np.arange(-n, n + 1) * self.h
        w = np.full(t.shape, self.h / (2 * np.pi))
        w[0] *= 0.5
        w[-1] *= 0.5
        return self.a + 1j * t, w.astype(complex)

    def circle(self, radius=None):
        rad = self.eps if radius is None else radius
        z = rad * np.exp(2j * np.pi * np.arange(self.n_circle) / self.n_circle)
        return z, z / self.n_circle


def heaviside(m: int, z: float) -> float:
    """H^m(z) = z^{m-1}/(m-1)! for z >= 0 and m >= 1, else 0."""
    if m < 1 or z < 0:
        return 0.0
    return z ** (m - 1) / factorial(m - 1)


def _hankel_det(mom, size):
    """det[mom[..., i+j]]_{i,j<size} for a stack of moment vectors."""
    if size == 0:
        return np.ones(mom.shape[:-1], dtype=complex)
    idx = np.add.outer(np.arange(size), np.arange(size))
    return np.linalg.det(mom[..., idx])


class _Engine:
    def __init__(self, p: TacParams, qc: QuadConfig):
        if p.r > qc.max_r:
            raise ValueError(f"r = {p.r} exceeds the configured cap {qc.max_r}")
        self.p, self.qc = p, qc
        W, wW = qc.line()
        self.W = W
        self.fw = wW * np.exp(2 * W * W + p.beta * W) * W ** (-p.rho)
        self.Wl, self.wl = W, wW
        self.Vc, self.wc = qc.circle()
        kmax = 2 * p.r + 2
        self.pows = np.stack([W ** k for k in range(kmax + 1)])  # (k, nW)
        self.m = self.pows @ self.fw  # moments m_k
        self.theta00 = factorial(p.r) * _hankel_det(self.m, p.r)
        if abs(self.theta00) == 0:
            raise QuadratureError("Theta_r(0,0) vanishes")
        self._g1 = self._g3 = self._g4 = None

    def theta(self, V, Z):
        """Theta_r(V, Z) for broadcastable arrays V, Z (V off the W-line)."""
        r = self.p.r
        V = np.asarray(V, dtype=complex)
        Z = np.asarray(Z, dtype=complex)
        if r == 0:
            return np.ones(np.broadcast(V, Z).shape, dtype=complex)
        inv = 1.0 / (V[..., None] - self.W)  # (..., nW)
        J = np.einsum("...w,kw->...k", inv * self.fw, self.pows[: 2 * r - 1])
        M = self.m[: 2 * r - 1] + (Z - V)[..., None] * J
        return factorial(r) * _hankel_det(M, r)

    def theta_plus(self, V, Z):
        """Theta^+_{r-1}(V, Z): weight (Z-W)(V-W), polynomial in V and Z."""
        s = self.p.r - 1
        V = np.asarray(V, dtype=complex)
        Z = np.asarray(Z, dtype=complex)
        if s < 0:
            return np.zeros(np.broadcast(V, Z).shape, dtype=complex)
        m = self.m
        k = np.arange(2 * s + 1) if s else np.arange(1)
        M = ((Z * V)[..., None] * m[k] - (Z + V)[..., None] * m[k + 1] + m[k + 2])
        return factorial(s) * _hankel_det(M, s)

    def theta_minus(self, V, Z):
        """Theta^-_{r+1}(V, Z): weight 1/((Z-W)(V-W)), V and Z off the W-line."""
        s = self.p.r + 1
        V = np.asarray(V, dtype=complex)
        Z = np.asarray(Z, dtype=complex)
        g = self.fw / ((V[..., None] - self.W) * (Z[..., None] - self.W))
        M = np.einsum("...w,kw->...k", g, self.pows[: 2 * s - 1])
        return factorial(s) * _hankel_det(M, s)

    # node matrices
    def G1(self):
        if self._g1 is None:
            V = self.Vc[:, None]
            Z = self.Wl[None, :]
            self._g1 = self.theta(V, Z) / (Z - V) / self.theta00
        return self._g1

    def G3(self):
        if self._g3 is None:
            V = self.Wl[:, None]
            Z = self.Wl[None, :]
            self._g3 = self.theta_plus(V, Z) / self.theta00
        return self._g3

    def G4(self):
        if self._g4 is None:
            V = self.Vc[:, None]
            Z = self.Vc[None, :]
            self._g4 = self.theta_minus(V, Z) / self.theta00
        return self._g4

    def terms(self, t1, th1, t2, th2):
        p = self.p
        rho, beta, r = p.rho, p.beta, p.r
        Vc, wc, Wl, wl = self.Vc, self.wc, self.Wl, self.wl
        out = {"H": -heaviside(t1 - t2, th2 - th1)}
        a = wc * Vc ** (rho - t1) * np.exp(-Vc * Vc - th1 * Vc)
        b = wl * Wl ** (t2 - rho) * np.exp(Wl * Wl + th2 * Wl)
        out["L1"] = a @ self.G1() @ b
        a = wc * Vc ** t2 * np.exp(-Vc * Vc + (th2 - beta) * Vc)
        b = wl * Wl ** (-t1) * np.exp(Wl * Wl - (th1 - beta) * Wl)
        out["L2"] = a @ self.G1() @ b
        if r:
            a = wl * Wl ** (-t1) * np.exp(Wl * Wl - (th1 - beta) * Wl)
            b = wl * Wl ** (t2 - rho) * np.exp(Wl * Wl + th2 * Wl)
            out["L3"] = r * (a @ self.G3() @ b)
        else:
            out["L3"] = 0j
        a = wc * Vc ** (rho - t1) * np.exp(-Vc * Vc - th1 * Vc)
        b = wc * Vc ** t2 * np.exp(-Vc * Vc + (th2 - beta) * Vc)
        out["L4"] = -(a @ self.G4() @ b) / (r + 1)
        return out


@lru_cache(maxsize=16)
def _engine(p: TacParams, qc: QuadConfig) -> _Engine:
    return _Engine(p, qc)


def theta(p: TacParams, V, Z, qc: QuadConfig = QuadConfig()):
    return complex(_engine(p, qc).theta(V, Z))


def theta_plus(p: TacParams, V, Z, qc: QuadConfig = QuadConfig()):
    return complex(_engine(p, qc).theta_plus(V, Z))


def theta_minus(p: TacParams, V, Z, qc: QuadConfig = QuadConfig()):
    return complex(_engine(p, qc).theta_minus(V, Z))


def theta_tensor(p: TacParams, V, Z, kind: str = "theta", qc: QuadConfig = QuadConfig()):
    """Direct tensor-product summation of the W-integral (r-fold, r <= 2)."""
    e = _engine(p, qc)
    size = {"theta": p.r, "plus": p.r - 1, "minus": p.r + 1}[kind]
    if size > 2:
        raise ValueError("tensor summation is limited to at most 2 variables")
    if size < 0:
        return 0j  # Theta^+_{-1}: no term, matching the engine
    if size == 0:
        return 1.0 + 0j  # empty integral
    W = e.W
    if kind == "theta":
        g = e.fw * (Z - W) / (V - W)
    elif kind == "plus":
        g = e.fw * (Z - W) * (V - W)
    else:
        g = e.fw / ((Z - W) * (V - W))
    if size == 1:
        return complex(np.sum(g))
    D = (W[:, None] - W[None, :]) ** 2
    return complex(g @ D @ g)


def L_dtac_terms(t1: int, th1: float, t2: int, th2: float, p: TacParams, qc: QuadConfig = QuadConfig()):
    """The five pieces -H, L1, L2, L3, L4 (complex) of the kernel."""
    return _engine(p, qc).terms(t1, th1, t2, th2)


def L_dtac(t1: int, th1: float, t2: int, th2: float, p: TacParams, qc: QuadConfig = QuadConfig()) -> float:
    parts = L_dtac_terms(t1, th1, t2, th2, p, qc)
    total = sum(parts.values())
    if abs(total.imag) > qc.imag_tol * max(1.0, abs(total.real)):
        raise QuadratureError(f"imaginary part {total.imag:.3e} above tolerance")
    return float(total.real)


def involution_residual(t1, th1, t2, th2, p: TacParams, qc: QuadConfig = QuadConfig()) -> dict:
    """|L(args) - L(involuted args)| plus the term-level exchange L1<->L2, L3, L4."""
    a = L_dtac_terms(t1, th1, t2, th2, p, qc)
    b = L_dtac_terms(p.rho - t2, p.beta - th2, p.rho - t1, p.beta - th1, p, qc)
    return {
        "total": abs(sum(a.values()) - sum(b.values())),
        "L1_L2": abs(a["L1"] - b["L2"]),
        "L2_L1": abs(a["L2"] - b["L1"]),
        "L3": abs(a["L3"] - b["L3"]),
        "L4": abs(a["L4"] - b["L4"]),
    }


def support_violation(t1, th1, t2, th2, p: TacParams, qc: QuadConfig = QuadConfig()) -> float:
    """Largest |L_k| among the terms that must vanish at this point."""
    parts = L_dtac_terms(t1, th1, t2, th2, p, qc)
    worst = 0.0
    if t1 <= p.rho:
        worst = max(worst, abs(parts["L1"]), abs(parts["L4"]))
    if t2 >= 0:
        worst = max(worst, abs(parts["L2"]), abs(parts["L4"]))
    return worst
