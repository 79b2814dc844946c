"""Shear construction: solve h - eta*g = phi, g'/h' = omega, h(0) = g(0) = 0.

Eliminating g' gives h' = phi' / (1 - eta*omega); the denominator never
vanishes on the disk because |eta*omega| < 1 there.  Values of h and g are
recovered as radial antiderivatives; their first and second derivatives are
closed-form:

    h'' = (phi''*(1 - eta*omega) + eta*omega'*phi') / (1 - eta*omega)^2
    g'  = omega * h'
    g'' = omega' * h' + omega * h''

so boundary tangents downstream never touch quadrature.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .functions import AnalyticFunction, SchwarzFunction, require_unimodular
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, antiderivative_many

S_NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class ShearSystem:
    """Shear datum (phi, omega, eta) with eta = e^{2i theta} stored directly."""

    phi: AnalyticFunction
    omega: SchwarzFunction
    eta: complex

    def __post_init__(self):
        object.__setattr__(self, "eta", require_unimodular(self.eta, "eta"))
        v0, d10, _ = self.phi.eval(0.0 + 0.0j)
        if abs(v0) > S_NORMALIZATION_TOL or abs(d10 - 1.0) > S_NORMALIZATION_TOL:
            raise ValueError(
                f"phi (= {self.phi.label}) must satisfy phi(0) = 0, phi'(0) = 1")

    @classmethod
    def from_theta(cls, phi: AnalyticFunction, omega: SchwarzFunction,
                   theta: float) -> "ShearSystem":
        return cls(phi, omega, np.exp(2j * float(theta)))

    @property
    def label(self) -> str:
        e = self.eta
        return f"shear(phi={self.phi.label},omega={self.omega.label},eta={e.real!r}{e.imag:+}j)"


class _QuadValue:
    """Evaluate an antiderivative on demand; scalar calls memoize by z.

    The cache is a plain dict: writes under concurrent evaluation are benign
    races (all writers store the identical deterministic value), so
    concurrent reads agree with serial ones.
    """

    def __init__(self, d1_fn: Callable, cfg: QuadratureConfig):
        self.d1_fn = d1_fn
        self.cfg = cfg
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __call__(self, z):
        if np.isscalar(z) or np.asarray(z).ndim == 0:
            key = complex(z)
            hit = self._cache.get(key)
            if hit is None:
                hit = complex(antiderivative_many(self.d1_fn, np.array([key]), self.cfg)[0])
                with self._lock:
                    self._cache[key] = hit
            return hit
        return antiderivative_many(self.d1_fn, z, self.cfg)


def antiderivative_function(label: str, d1_fn: Callable, d2_fn: Callable,
                            cfg: QuadratureConfig = DEFAULT_CONFIG) -> AnalyticFunction:
    """AnalyticFunction whose value channel integrates d1_fn from the origin."""
    return AnalyticFunction(label, _QuadValue(d1_fn, cfg), d1_fn, d2_fn)


@dataclass(frozen=True)
class HarmonicMap:
    """Harmonic f = h + conj(g) with analytic parts carrying derivatives."""

    h: AnalyticFunction
    g: AnalyticFunction
    provenance: Optional[ShearSystem] = None
    label: str = field(default="")

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", f"{self.h.label}+conj({self.g.label})")

    def f_eval(self, z):
        return self.h.value(z) + np.conj(self.g.value(z))

    __call__ = f_eval

    def map_points(self, zs) -> np.ndarray:
        """Vectorized image points f(zs)."""
        zs = np.asarray(zs, dtype=complex)
        return self.h.value(zs) + np.conj(self.g.value(zs))

    def derivatives(self, zs):
        """(h'(zs), g'(zs)); never touches the quadrature-backed value channel."""
        return self.h.d1(zs), self.g.d1(zs)


def shear_construct(sys: ShearSystem,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> HarmonicMap:
    """Solve the shear system; the result lies in S_H^0 by construction."""
    phi_d1, phi_d2 = sys.phi.d1_fn, sys.phi.d2_fn
    om_v, om_d1 = sys.omega.value_fn, sys.omega.d1_fn
    eta = sys.eta

    def hp(z):
        return phi_d1(z) / (1.0 - eta * om_v(z))

    def hpp(z):
        den = 1.0 - eta * om_v(z)
        return (phi_d2(z) * den + eta * om_d1(z) * phi_d1(z)) / den ** 2

    def gp(z):
        return om_v(z) * phi_d1(z) / (1.0 - eta * om_v(z))

    def gpp(z):
        return om_d1(z) * hp(z) + om_v(z) * hpp(z)

    h = antiderivative_function(f"h[{sys.label}]", hp, hpp, cfg)
    g = antiderivative_function(f"g[{sys.label}]", gp, gpp, cfg)
    return HarmonicMap(h, g, provenance=sys, label=sys.label)


def harmonic_from_analytic(phi: AnalyticFunction) -> HarmonicMap:
    """Wrap an analytic function as the harmonic map h = phi, g = 0."""
    zero = AnalyticFunction("0", lambda z: z * 0, lambda z: z * 0, lambda z: z * 0)
    return HarmonicMap(phi, zero, label=phi.label)


def rotate_harmonic(f: HarmonicMap, xi: complex) -> HarmonicMap:
    """Rotation f_xi(z) = conj(xi) f(xi z).

    Canonical parts transform as H(z) = conj(xi) h(xi z), G(z) = xi g(xi z);
    when f came from a shear (phi, omega0, eta) the result solves the system
    with datum (phi_xi, z -> xi^2 omega0(xi z), eta * conj(xi)^2).
    """
    xi = require_unimodular(xi, "xi")
    xib = np.conj(xi)
    h, g = f.h, f.g
    label = f"rot({f.label},xi={xi.real!r}{xi.imag:+}j)"
    h_rot = AnalyticFunction(f"rot.h[{label}]",
                             lambda z: xib * h.value_fn(xi * z),
                             lambda z: h.d1_fn(xi * z),
                             lambda z: xi * h.d2_fn(xi * z))
    g_rot = AnalyticFunction(f"rot.g[{label}]",
                             lambda z: xi * g.value_fn(xi * z),
                             lambda z: xi ** 2 * g.d1_fn(xi * z),
                             lambda z: xi ** 3 * g.d2_fn(xi * z))
    prov = None
    if f.provenance is not None:
        from .functions import rotate_analytic
        p = f.provenance
        om_v, om_d1 = p.omega.value_fn, p.omega.d1_fn
        omega_rot = SchwarzFunction(
            f"rot({p.omega.label},xi={xi.real!r}{xi.imag:+}j)", p.omega.spec,
            lambda z: xi ** 2 * om_v(xi * z),
            lambda z: xi ** 3 * om_d1(xi * z))
        prov = ShearSystem(rotate_analytic(p.phi, xi), omega_rot, p.eta * xib ** 2)
    return HarmonicMap(h_rot, g_rot, provenance=prov, label=label)


def normalize(f: HarmonicMap) -> HarmonicMap:
    """Renormalize an arbitrary orientation-preserving map into S_H^0.

    First F = (f - f(0))/h'(0), then the affine shear-out of the residual
    mixing tau(w) = (w - conj(a) conj(w))/(1 - |a|^2) with a = G'(0); on
    canonical parts both steps are exact affine combinations.
    """
    z0 = 0.0 + 0.0j
    h0, hp0 = complex(f.h.value(z0)), complex(f.h.d1(z0))
    g0, gp0 = complex(f.g.value(z0)), complex(f.g.d1(z0))
    if hp0 == 0:
        raise ValueError("normalize requires h'(0) != 0")
    a = gp0 / np.conj(hp0)
    if abs(a) >= 1.0:
        raise ValueError(f"map is not orientation-preserving at 0 (|a| = {abs(a)!r})")
    den = 1.0 - abs(a) ** 2
    ab = np.conj(a)
    c, cb = hp0, np.conj(hp0)
    h, g = f.h, f.g
    label = f"normalized({f.label})"
    h_new = AnalyticFunction(
        f"h[{label}]",
        lambda z: ((h.value_fn(z) - h0) / c - ab * (g.value_fn(z) - g0) / cb) / den,
        lambda z: (h.d1_fn(z) / c - ab * g.d1_fn(z) / cb) / den,
        lambda z: (h.d2_fn(z) / c - ab * g.d2_fn(z) / cb) / den)
    g_new = AnalyticFunction(
        f"g[{label}]",
        lambda z: ((g.value_fn(z) - g0) / cb - a * (h.value_fn(z) - h0) / c) / den,
        lambda z: (g.d1_fn(z) / cb - a * h.d1_fn(z) / c) / den,
        lambda z: (g.d2_fn(z) / cb - a * h.d2_fn(z) / c) / den)
    return HarmonicMap(h_new, g_new, label=label)


def analytic_combination(f: HarmonicMap, t: float) -> AnalyticFunction:
    """The analytic function h - e^{2it} g used by the directional criterion."""
    mu = np.exp(2j * float(t))
    h, g = f.h, f.g
    return AnalyticFunction(
        f"comb({f.label},t={float(t)!r})",
        lambda z: h.value_fn(z) - mu * g.value_fn(z),
        lambda z: h.d1_fn(z) - mu * g.d1_fn(z),
        lambda z: h.d2_fn(z) - mu * g.d2_fn(z))
