"""Canonical text forms for catalog maps, dilatations, eta, and families.

These little grammars are the CLI surface and the serialization format for
probe reports, so every generated object (including seeded random Blaschke
products) round-trips through an explicit text form.

    phi:    H | H-1 | koebe | identity | f0h | f0g
            | Llambda:re=..,im=..  | mobius:re=..,im=..
            optionally suffixed with @rot:re=..,im=..
    omega:  zero
            | monomial:lam_re=..,lam_im=..,N=..        (defaults 1, 0, 1)
            | blaschke:seed=..,deg=..,scale=..          (seeded generator)
            | blaschke-explicit:zeros=a;b;..,phase=..,scale_re=..,scale_im=..
    eta:    re,im | theta=..        (eta = e^{2 i theta})
    family: mixed:phases=..,nmax=..,count=..,deg=..,seed=..
            | monomial-grid:phases=..,nmax=..
            | blaschke-random:count=..,deg=..,seed=..
            | explicit:<omega>[+<omega>..]
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .functions import (AnalyticFunction, BlaschkeOmega, CatalogId,
                        MonomialOmega, SchwarzFunction, ZeroOmega, catalog,
                        make_schwarz, rotate_analytic, BLASCHKE_ZERO_CAP)


class SpecError(ValueError):
    pass


def _kv(body: str, what: str) -> dict:
    out = {}
    if not body:
        return out
    for part in body.split(","):
        if "=" not in part:
            raise SpecError(f"malformed {what} field {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _complex_kv(kv: dict, re_key: str, im_key: str, default=None) -> complex:
    if re_key not in kv and im_key not in kv:
        if default is None:
            raise SpecError(f"missing {re_key}/{im_key}")
        return default
    return complex(float(kv.get(re_key, 0.0)), float(kv.get(im_key, 0.0)))


_PLAIN_PHI = {"H": "H", "H-1": "H_ROT_MINUS1", "koebe": "KOEBE",
              "identity": "IDENTITY", "f0h": "F0_H_PART", "f0g": "F0_G_PART"}


def parse_phi(spec: str) -> AnalyticFunction:
    spec = spec.strip()
    rot = None
    if "@rot:" in spec:
        spec, rot_body = spec.split("@rot:", 1)
        kv = _kv(rot_body, "rotation")
        rot = _complex_kv(kv, "re", "im")
    if spec in _PLAIN_PHI:
        phi = catalog(CatalogId(_PLAIN_PHI[spec]))
    elif spec.startswith("Llambda:"):
        kv = _kv(spec[len("Llambda:"):], "Llambda")
        phi = catalog(CatalogId("L_LAMBDA", _complex_kv(kv, "re", "im")))
    elif spec.startswith("mobius:"):
        kv = _kv(spec[len("mobius:"):], "mobius")
        phi = catalog(CatalogId("MOBIUS_HALFPLANE", _complex_kv(kv, "re", "im")))
    else:
        raise SpecError(f"unknown phi spec {spec!r}")
    if rot is not None:
        phi = rotate_analytic(phi, rot)
    return phi


def blaschke_from_seed(seed: int, deg: int, scale: float) -> BlaschkeOmega:
    """One deterministic Blaschke dilatation: area-uniform zeros in the cap."""
    rng = np.random.default_rng(int(seed))
    zeros = tuple(BLASCHKE_ZERO_CAP * np.sqrt(rng.uniform())
                  * np.exp(2j * np.pi * rng.uniform()) for _ in range(int(deg)))
    phase = float(2.0 * np.pi * rng.uniform())
    return BlaschkeOmega(zeros=zeros, phase=phase, scale=complex(scale))


def parse_omega(spec: str) -> SchwarzFunction:
    spec = spec.strip()
    if spec == "zero":
        return make_schwarz(ZeroOmega())
    if spec.startswith("monomial"):
        kv = _kv(spec[len("monomial"):].lstrip(":"), "monomial")
        lam = _complex_kv(kv, "lam_re", "lam_im", default=1.0 + 0.0j)
        return make_schwarz(MonomialOmega(lam=lam, n=int(kv.get("N", 1))))
    if spec.startswith("blaschke-explicit:"):
        kv = _kv(spec[len("blaschke-explicit:"):], "blaschke-explicit")
        if "zeros" not in kv:
            raise SpecError("blaschke-explicit requires zeros=")
        zeros = tuple(complex(s) for s in kv["zeros"].split(";") if s)
        scale = complex(float(kv.get("scale_re", 1.0)), float(kv.get("scale_im", 0.0)))
        return make_schwarz(BlaschkeOmega(zeros=zeros, phase=float(kv.get("phase", 0.0)),
                                          scale=scale))
    if spec.startswith("blaschke:"):
        kv = _kv(spec[len("blaschke:"):], "blaschke")
        return make_schwarz(blaschke_from_seed(int(kv.get("seed", 0)),
                                               int(kv.get("deg", 1)),
                                               float(kv.get("scale", 1.0))))
    raise SpecError(f"unknown omega spec {spec!r}")


def parse_eta(spec: str) -> complex:
    spec = spec.strip()
    if spec.startswith("theta="):
        return complex(np.exp(2j * float(spec[len("theta="):])))
    try:
        re_s, im_s = spec.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError as exc:
        raise SpecError(f"eta spec must be 're,im' or 'theta=..', got {spec!r}") from exc


def format_eta(eta: complex) -> str:
    return f"{eta.real!r},{eta.imag!r}"


def family_from_spec(spec: str) -> List[SchwarzFunction]:
    """Expand a family spec into concrete dilatations, sorted by text form."""
    spec = spec.strip()
    if spec.startswith("explicit:"):
        omegas = [parse_omega(s) for s in spec[len("explicit:"):].split("+") if s]
        if not omegas:
            raise SpecError("explicit family is empty")
        return sorted(omegas, key=lambda w: w.spec.text)
    kv = _kv(spec.split(":", 1)[1] if ":" in spec else "", "family")
    head = spec.split(":", 1)[0]
    omegas: List[SchwarzFunction] = []
    if head in ("monomial-grid", "mixed"):
        phases = int(kv.get("phases", 8))
        nmax = int(kv.get("nmax", 3))
        for k in range(phases):
            lam = np.exp(2j * np.pi * k / phases)
            for n in range(1, nmax + 1):
                omegas.append(make_schwarz(MonomialOmega(lam=lam, n=n)))
    if head in ("blaschke-random", "mixed"):
        count = int(kv.get("count", 50))
        deg_max = int(kv.get("deg", 3))
        seed = int(kv.get("seed", 7))
        rng = np.random.default_rng(seed)
        for _ in range(count):
            deg = int(rng.integers(1, deg_max + 1))
            zeros = tuple(BLASCHKE_ZERO_CAP * np.sqrt(rng.uniform())
                          * np.exp(2j * np.pi * rng.uniform()) for _ in range(deg))
            phase = float(2.0 * np.pi * rng.uniform())
            scale = complex(rng.uniform(0.5, 1.0))
            omegas.append(make_schwarz(BlaschkeOmega(zeros=zeros, phase=phase, scale=scale)))
    if head not in ("monomial-grid", "blaschke-random", "mixed"):
        raise SpecError(f"unknown family spec {spec!r}")
    return sorted(omegas, key=lambda w: w.spec.text)


DEFAULT_FAMILY = "mixed:phases=8,nmax=3,count=50,deg=3,seed=7"


def parse_radii(spec: str) -> Tuple[float, ...]:
    radii = tuple(sorted(float(s) for s in spec.split(",") if s))
    if not radii or radii[0] <= 0 or radii[-1] >= 1:
        raise SpecError("radii must lie strictly between 0 and 1")
    return radii
