"""Evaluable analytic functions on the unit disk and Schwarz dilatations.

An :class:`AnalyticFunction` carries three evaluation channels (value, first
and second derivative), each vectorized over complex ndarrays.  Keeping the
channels separate matters: shear antiderivatives back the value channel with
quadrature, while tangent and curvature work downstream reads only the
derivative channels and must stay quadrature-free.

The catalog holds the maps used throughout the convexity suites, with exact
closed-form derivatives:

    H(z)        = z/(1-z)                         half-plane Re w > -1/2
    H_-1(z)     = z/(1+z)                         half-plane Re w < 1/2
    L_lam(z)    = log((1-conj(lam) z)/(1-lam z)) / (2i Im lam)   strip map
    koebe(z)    = z/(1-z)^2                       plane minus slit (-inf,-1/4]
    mobius_c(z) = z/(1-cz)                        rotated half-plane
    f0h, f0g    = (2z-z^2)/(2(1-z)^2), z^2/(2(1-z)^2)

``L_lam`` uses the principal logarithm; its argument is a Mobius map of the
disk into a half-plane whose boundary line passes through 0 and whose
interior contains 1, so the branch cut is never crossed.

Schwarz functions (analytic, fixing 0, mapping the disk into itself) come in
three shapes: the zero function, monomials ``lam * z^N``, and scaled
Blaschke-type products ``c * e^{i gamma} * z * prod (a_k - z)/(1 - conj(a_k) z)``.
The leading ``z`` factor pins the origin; every factor has modulus < 1 on the
open disk, so the product is structurally a Schwarz function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Tuple, Union

import numpy as np

UNIMODULAR_SLACK = 1e-9      # accepted deviation of |w| from 1 before rejection
LAMBDA_EXCLUSION = 1e-9      # L_lam rejects lam within this radius of +-1
BLASCHKE_ZERO_CAP = 0.95     # keeps evaluation conditioned near |z| = 0.999


def require_unimodular(w: complex, name: str = "parameter") -> complex:
    """Renormalize w to exact modulus 1; reject beyond the slack window."""
    w = complex(w)
    m = abs(w)
    if abs(m - 1.0) > UNIMODULAR_SLACK:
        raise ValueError(f"{name} must be unimodular, got |{name}| = {m!r}")
    return w / m


def _fmt(x: float) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class AnalyticFunction:
    """Analytic map on the unit disk with first and second derivatives."""

    label: str
    value_fn: Callable = field(repr=False)
    d1_fn: Callable = field(repr=False)
    d2_fn: Callable = field(repr=False)

    def eval(self, z) -> Tuple:
        return self.value_fn(z), self.d1_fn(z), self.d2_fn(z)

    def value(self, z):
        return self.value_fn(z)

    def d1(self, z):
        return self.d1_fn(z)

    def d2(self, z):
        return self.d2_fn(z)

    def __call__(self, z):
        return self.value_fn(z)


@dataclass(frozen=True)
class CatalogId:
    """Identifier of a catalog entry; `param` is lam for L_LAMBDA, c for MOBIUS."""

    kind: str
    param: complex | None = None

    KINDS = ("H", "H_ROT_MINUS1", "L_LAMBDA", "KOEBE", "MOBIUS_HALFPLANE",
             "IDENTITY", "F0_H_PART", "F0_G_PART")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown catalog kind {self.kind!r}")
        if self.kind in ("L_LAMBDA", "MOBIUS_HALFPLANE"):
            if self.param is None:
                raise ValueError(f"{self.kind} requires a unimodular parameter")
            p = require_unimodular(self.param, "lambda" if self.kind == "L_LAMBDA" else "c")
            if self.kind == "L_LAMBDA" and min(abs(p - 1.0), abs(p + 1.0)) < LAMBDA_EXCLUSION:
                raise ValueError("L_LAMBDA requires lambda away from {-1, 1}")
            object.__setattr__(self, "param", p)
        elif self.param is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    @property
    def text(self) -> str:
        if self.kind == "L_LAMBDA":
            return f"Llambda:re={_fmt(self.param.real)},im={_fmt(self.param.imag)}"
        if self.kind == "MOBIUS_HALFPLANE":
            return f"mobius:re={_fmt(self.param.real)},im={_fmt(self.param.imag)}"
        return {"H": "H", "H_ROT_MINUS1": "H-1", "KOEBE": "koebe",
                "IDENTITY": "identity", "F0_H_PART": "f0h", "F0_G_PART": "f0g"}[self.kind]


_CATALOG_CHANNELS = {
    "H": (lambda z: z / (1.0 - z),
          lambda z: 1.0 / (1.0 - z) ** 2,
          lambda z: 2.0 / (1.0 - z) ** 3),
    "H_ROT_MINUS1": (lambda z: z / (1.0 + z),
                     lambda z: 1.0 / (1.0 + z) ** 2,
                     lambda z: -2.0 / (1.0 + z) ** 3),
    "KOEBE": (lambda z: z / (1.0 - z) ** 2,
              lambda z: (1.0 + z) / (1.0 - z) ** 3,
              lambda z: (4.0 + 2.0 * z) / (1.0 - z) ** 4),
    "IDENTITY": (lambda z: z + 0j,
                 lambda z: 1.0 + z * 0,
                 lambda z: z * 0),
    "F0_H_PART": (lambda z: (2.0 * z - z ** 2) / (2.0 * (1.0 - z) ** 2),
                  lambda z: 1.0 / (1.0 - z) ** 3,
                  lambda z: 3.0 / (1.0 - z) ** 4),
    "F0_G_PART": (lambda z: z ** 2 / (2.0 * (1.0 - z) ** 2),
                  lambda z: z / (1.0 - z) ** 3,
                  lambda z: (1.0 + 2.0 * z) / (1.0 - z) ** 4),
}


def _l_lambda_channels(lam: complex):
    lamc = np.conj(lam)
    pref = 1.0 / (2j * lam.imag)
    return ((lambda z: pref * np.log((1.0 - lamc * z) / (1.0 - lam * z))),
            (lambda z: 1.0 / ((1.0 - lam * z) * (1.0 - lamc * z))),
            (lambda z: (2.0 * lam.real - 2.0 * z)
             / ((1.0 - lam * z) * (1.0 - lamc * z)) ** 2))


def _mobius_channels(c: complex):
    return ((lambda z: z / (1.0 - c * z)),
            (lambda z: 1.0 / (1.0 - c * z) ** 2),
            (lambda z: 2.0 * c / (1.0 - c * z) ** 3))


def catalog(cid: Union[CatalogId, str], param: complex | None = None) -> AnalyticFunction:
    """Build a catalog entry from a CatalogId (or bare kind string + param)."""
    if isinstance(cid, str):
        cid = CatalogId(cid, param)
    if cid.kind in _CATALOG_CHANNELS:
        return AnalyticFunction(cid.text, *_CATALOG_CHANNELS[cid.kind])
    if cid.kind == "L_LAMBDA":
        return AnalyticFunction(cid.text, *_l_lambda_channels(cid.param))
    if cid.kind == "MOBIUS_HALFPLANE":
        return AnalyticFunction(cid.text, *_mobius_channels(cid.param))
    raise ValueError(f"unhandled catalog kind {cid.kind!r}")


def rotate_analytic(phi: AnalyticFunction, xi: complex) -> AnalyticFunction:
    """Rotation phi_xi(z) = conj(xi) * phi(xi z); preserves S-normalization.

    Chain rule gives d1 -> phi'(xi z) (the conj(xi)*xi factors cancel) and
    d2 -> xi * phi''(xi z).
    """
    xi = require_unimodular(xi, "xi")
    xib = np.conj(xi)
    v, d1, d2 = phi.value_fn, phi.d1_fn, phi.d2_fn
    return AnalyticFunction(
        f"rot({phi.label},xi={_fmt(xi.real)}{xi.imag:+}j)",
        lambda z: xib * v(xi * z),
        lambda z: d1(xi * z),
        lambda z: xi * d2(xi * z))


# ---------------------------------------------------------------------------
# Schwarz functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroOmega:
    @property
    def text(self) -> str:
        return "zero"


@dataclass(frozen=True)
class MonomialOmega:
    lam: complex
    n: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lam", require_unimodular(self.lam, "lambda"))
        if int(self.n) < 1:
            raise ValueError("monomial degree N must be >= 1")
        object.__setattr__(self, "n", int(self.n))

    @property
    def text(self) -> str:
        return f"monomial:lam_re={_fmt(self.lam.real)},lam_im={_fmt(self.lam.imag)},N={self.n}"


@dataclass(frozen=True)
class BlaschkeOmega:
    """Origin-pinned scaled Blaschke product: c e^{i gamma} z prod (a_k - z)/(1 - conj(a_k) z)."""

    zeros: tuple
    phase: float = 0.0
    scale: complex = 1.0

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        for a in zs:
            if abs(a) > BLASCHKE_ZERO_CAP:
                raise ValueError(f"Blaschke zero |a| = {abs(a)!r} exceeds cap {BLASCHKE_ZERO_CAP}")
        if abs(complex(self.scale)) > 1.0 + 1e-12:
            raise ValueError("Blaschke scale must satisfy |c| <= 1")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "phase", float(self.phase))
        object.__setattr__(self, "scale", complex(self.scale))

    @property
    def text(self) -> str:
        zs = ";".join(f"{_fmt(a.real)}{a.imag:+}j" for a in self.zeros)
        return (f"blaschke-explicit:zeros={zs},phase={_fmt(self.phase)},"
                f"scale_re={_fmt(self.scale.real)},scale_im={_fmt(self.scale.imag)}")


OmegaSpec = Union[ZeroOmega, MonomialOmega, BlaschkeOmega]


@dataclass(frozen=True)
class SchwarzFunction:
    """Analytic omega with omega(0) = 0 and |omega| < 1 on the disk."""

    label: str
    spec: OmegaSpec
    value_fn: Callable = field(repr=False)
    d1_fn: Callable = field(repr=False)

    def eval(self, z) -> Tuple:
        return self.value_fn(z), self.d1_fn(z)

    def value(self, z):
        return self.value_fn(z)

    def d1(self, z):
        return self.d1_fn(z)

    def __call__(self, z):
        return self.value_fn(z)


def _blaschke_channels(spec: BlaschkeOmega):
    s = spec.scale * np.exp(1j * spec.phase)
    zeros = spec.zeros

    def product(z):
        B = 1.0 + z * 0
        for a in zeros:
            B = B * (a - z) / (1.0 - np.conj(a) * z)
        return B

    def value(z):
        return s * z * product(z)

    def d1(z):
        facs, dfacs = [], []
        for a in zeros:
            den = 1.0 - np.conj(a) * z
            facs.append((a - z) / den)
            # d/dz of a single factor collapses to (|a|^2 - 1)/den^2
            dfacs.append((abs(a) ** 2 - 1.0) / den ** 2)
        B = 1.0 + z * 0
        for f in facs:
            B = B * f
        Bp = z * 0
        for k in range(len(zeros)):
            term = dfacs[k]
            for j in range(len(zeros)):
                if j != k:
                    term = term * facs[j]
            Bp = Bp + term
        return s * (B + z * Bp)

    return value, d1


def make_schwarz(spec: OmegaSpec) -> SchwarzFunction:
    if isinstance(spec, ZeroOmega):
        return SchwarzFunction("zero", spec, lambda z: z * 0, lambda z: z * 0)
    if isinstance(spec, MonomialOmega):
        lam, n = spec.lam, spec.n
        if n == 1:
            return SchwarzFunction(spec.text, spec,
                                   lambda z: lam * z, lambda z: lam + z * 0)
        return SchwarzFunction(spec.text, spec,
                               lambda z: lam * z ** n,
                               lambda z: lam * n * z ** (n - 1))
    if isinstance(spec, BlaschkeOmega):
        return SchwarzFunction(spec.text, spec, *_blaschke_channels(spec))
    raise ValueError(f"unknown Schwarz spec {spec!r}")
