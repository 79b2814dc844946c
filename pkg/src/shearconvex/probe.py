"""Admissibility probing: search shear families for convexity failures.

A pair (eta, phi) is admissible when every shear of phi with a Schwarz
dilatation maps the whole disk onto a convex region.  The probe samples a
dilatation family and inspects boundary curves on a radius ladder, but a
per-radius back-turn is NOT yet evidence against admissibility: restrictions
of convex harmonic maps lose convexity beyond radius sqrt(2) - 1, so level
curves of perfectly admissible shears wobble at r = 0.9 and beyond.

A FAILURE therefore requires a *persistent* witness: from the worst
back-turn window the probe builds a midpoint certificate, two curve points
whose chord midpoint lies outside the sampled curve (winding number 0), and
the certificate must stay outside at every larger ladder radius and at
extension radii pushed toward |z| = 1.  Hereditary wobbles get absorbed as
r grows (their pockets shrink like 1 - r); genuine non-convexity of the full
image leaves a fixed pocket that never fills in.

NO_FAILURE_FOUND is a report about the family searched, never a proof of
admissibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .geometry import (ConvexityReport, convexity_check_resolved,
                       sample_boundary, DEFAULT_BACKTURN_TOL)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .shear import HarmonicMap, ShearSystem, shear_construct
from .specs import DEFAULT_FAMILY, family_from_spec, format_eta, parse_phi

DEFAULT_RADII = (0.9, 0.99, 0.999)
WINDING_SAMPLES = 2048
WINDING_SAMPLES_MAX = 131072
MAX_TRUSTED_ARG_STEP = 1.8       # rad subtended at the query point per curve step
BRACKETS = (1 / 64, 1 / 16, 1 / 8, 1 / 4, 3 / 8, 1 / 2)   # half-widths, fractions of pi


def _extension_radii(r_top: float) -> Tuple[float, float]:
    return (1.0 - (1.0 - r_top) / 2.0, 1.0 - (1.0 - r_top) / 10.0)


class _WindingCurves:
    """Adaptively refined image-curve samples per radius, shared across queries.

    Refinements accumulate: once a thin pocket forced extra samples at some
    radius, later queries reuse them.
    """

    def __init__(self, f: HarmonicMap, n0: int = WINDING_SAMPLES):
        self.f = f
        self.n0 = n0
        self._curves: dict = {}

    def _base(self, r: float):
        got = self._curves.get(r)
        if got is None:
            theta = np.linspace(0.0, 2.0 * np.pi, self.n0, endpoint=False)
            gamma = self.f.map_points(r * np.exp(1j * theta))
            got = self._curves[r] = (theta, gamma)
        return got

    def _refine(self, r: float, theta, gamma, bad):
        widths = (np.roll(theta, -1) - theta) % (2.0 * np.pi)
        sub = np.arange(1, 8) / 8.0
        new_theta = (theta[bad, None] + widths[bad, None] * sub[None, :]).ravel() \
            % (2.0 * np.pi)
        new_gamma = self.f.map_points(r * np.exp(1j * new_theta))
        theta = np.concatenate([theta, new_theta])
        gamma = np.concatenate([gamma, new_gamma])
        order = np.argsort(theta)
        out = (theta[order], gamma[order])
        self._curves[r] = out
        return out

    def winding(self, m: complex, r: float, max_rounds: int = 24,
                max_points: int = WINDING_SAMPLES_MAX) -> Optional[int]:
        """Winding of the radius-r image curve around m, or None if untrustable.

        Two failure modes of the discrete sum are handled by local
        subdivision: a step subtending an angle near pi at the query point
        (hairline pockets), and a step whose chord is comparable to the
        distance from the query point (the curve can excursion around m and
        back between such samples, hiding a full turn from the principal
        value).  Since the maps probed here are univalent their curves are
        Jordan; any winding outside {0, 1} is reported as untrustable.
        """
        theta, gamma = self._base(r)
        for _ in range(max_rounds):
            d = gamma - m
            dist = np.abs(d)
            if dist.min() < 1e-9 * (1.0 + abs(m)):
                return None
            darg = np.angle(np.roll(d, -1) / d)
            chord = np.abs(np.roll(gamma, -1) - gamma)
            bad = (np.abs(darg) > MAX_TRUSTED_ARG_STEP) \
                | (chord > 0.5 * np.minimum(dist, np.roll(dist, -1)))
            if not bad.any():
                w = int(round(float(darg.sum()) / (2.0 * np.pi)))
                return w if w in (0, 1) else None
            if theta.size + 7 * int(bad.sum()) > max_points:
                return None
            theta, gamma = self._refine(r, theta, gamma, bad)
        return None


def trusted_winding(f: HarmonicMap, m: complex, r: float,
                    curves: Optional[_WindingCurves] = None) -> Optional[int]:
    if curves is None:
        curves = _WindingCurves(f)
    return curves.winding(m, r)


@dataclass(frozen=True)
class ProbeConfig:
    phi_spec: str
    eta: complex
    family_spec: str = DEFAULT_FAMILY
    radii: Tuple[float, ...] = DEFAULT_RADII
    n_samples: int = 4096
    tol_backturn: float = DEFAULT_BACKTURN_TOL
    quad: QuadratureConfig = field(default=DEFAULT_CONFIG)

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(sorted(float(r) for r in self.radii)))


@dataclass(frozen=True)
class FailureWitness:
    omega_spec: str
    r: float                             # ladder radius with a resolved NON_CONVEX verdict
    n: int
    theta_window: Tuple[float, float]
    worst_backturn: float
    certificate_r: float                 # radius anchoring the midpoint certificate
    midpoint: complex
    persists_at: Tuple[float, ...]
    r_onset: float                       # smallest back-turning radius found


@dataclass
class ProbeReport:
    config: ProbeConfig
    per_omega: dict                      # omega text -> per-radius records
    failures: List[FailureWitness]
    notes: List[str]

    @property
    def summary(self) -> str:
        return "FAILURE" if self.failures else "NO_FAILURE_FOUND"

    def to_jsonable(self) -> dict:
        cfg = self.config
        return {
            "config": {
                "phi": cfg.phi_spec,
                "eta": format_eta(cfg.eta),
                "family": cfg.family_spec,
                "radii": list(cfg.radii),
                "n_samples": cfg.n_samples,
                "tol_backturn": cfg.tol_backturn,
            },
            "summary": self.summary,
            "disclaimer": ("NO_FAILURE_FOUND reports the searched family only; "
                           "it does not prove admissibility."),
            "failures": [
                {
                    "omega": w.omega_spec,
                    "r": w.r,
                    "n": w.n,
                    "theta_window": list(w.theta_window),
                    "worst_backturn": w.worst_backturn,
                    "certificate_r": w.certificate_r,
                    "midpoint": [w.midpoint.real, w.midpoint.imag],
                    "persists_at": list(w.persists_at),
                    "r_onset": w.r_onset,
                }
                for w in self.failures
            ],
            "per_omega": self.per_omega,
            "notes": self.notes,
        }

    def to_json(self, precision: int = 12) -> str:
        from .render import round_floats
        return json.dumps(round_floats(self.to_jsonable(), precision),
                          sort_keys=True, indent=1)


def _record(rep: ConvexityReport) -> dict:
    rec = {
        "verdict": rep.verdict,
        "total_turning": rep.total_turning,
        "worst_backturn": rep.worst_backturn,
        "max_step": rep.max_step,
        "n": rep.n,
    }
    if rep.witness is not None:
        rec["theta_window"] = list(rep.witness)
    return rec


def _candidate_midpoints(f: HarmonicMap, r: float, anchors: Sequence[float]) -> list:
    """Chord midpoints of radius-r image points bracketing the given anchors.

    Both chord endpoints are image points, so any midpoint that stays
    outside the image curve at every larger radius certifies non-convexity
    of the full image.
    """
    out = []
    for anchor in anchors:
        deltas = np.pi * np.array(BRACKETS)
        z_pairs = r * np.exp(1j * np.concatenate([anchor - deltas, anchor + deltas]))
        w = f.map_points(z_pairs)
        k = len(BRACKETS)
        out.extend(complex(v) for v in (w[:k] + w[k:]) / 2.0)
    return out


def _window_anchors(rep: ConvexityReport) -> list:
    anchors = []
    if rep.worst_step_theta is not None:
        anchors.append(rep.worst_step_theta)
    if rep.witness is not None:
        a, b = rep.witness
        anchors.append((a + ((b - a) % (2.0 * np.pi)) / 2.0) % (2.0 * np.pi))
    return anchors


_SEED_RHOS = (0.5, 0.9, 0.99, 0.999, 0.9999)


def newton_preimage(f: HarmonicMap, m: complex, anchors: Sequence[float] = (),
                    iters: int = 40, tol: float = 1e-8) -> Optional[complex]:
    """Solve f(z) = m inside the disk by damped Newton from a seed battery.

    The linearization h'(z) dz + conj(g'(z) dz) = m - f(z) is a 2x2 real
    system whose determinant is the Jacobian |h'|^2 - |g'|^2 > 0, so steps
    are always defined.  A returned z constructively proves m lies in the
    image; None means no seed converged (evidence, not proof, of escape).
    """
    angles = list(np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False))
    for a in anchors:
        angles.extend([a, a - 0.02, a + 0.02])
    seeds = np.array([rho * np.exp(1j * t) for rho in _SEED_RHOS for t in angles])
    z = seeds.copy()
    eps = 1e-9
    for _ in range(iters):
        res = f.map_points(z) - m
        done = np.abs(res) <= tol * (1.0 + abs(m))
        if done.any():
            return complex(z[done][0])
        h1, g1 = f.derivatives(z)
        A = h1 + np.conj(g1)
        B = 1j * (h1 - np.conj(g1))
        det = A.real * B.imag - A.imag * B.real   # = |h'|^2 - |g'|^2
        det = np.where(np.abs(det) < 1e-300, 1e-300, det)
        x = (-res.real * B.imag + res.imag * B.real) / det
        y = (-A.real * res.imag + A.imag * res.real) / det
        z_new = z + x + 1j * y
        # pull runaway iterates back toward the disk; the cap keeps the
        # quadrature grading depth bounded
        r_cap = 0.999999
        bad = np.abs(z_new) >= r_cap
        if bad.any():
            z_new[bad] = (z_new[bad] / np.abs(z_new[bad])
                          * np.minimum((np.abs(z[bad]) + 1.0) / 2.0, r_cap))
        z = z_new
    res = np.abs(f.map_points(z) - m)
    k = int(res.argmin())
    if res[k] <= tol * (1.0 + abs(m)) and abs(z[k]) < 1.0 - eps:
        return complex(z[k])
    return None


def midpoint_certificate(f: HarmonicMap, r: float,
                         theta_window: Tuple[float, float]) -> Optional[complex]:
    """First chord midpoint near the reversal window that escapes the curve."""
    a, b = theta_window
    mid = (a + ((b - a) % (2.0 * np.pi)) / 2.0) % (2.0 * np.pi)
    curves = _WindingCurves(f)
    for m in _candidate_midpoints(f, r, [mid]):
        if curves.winding(m, r) == 0:
            return m
    return None


def _onset_radius(f: HarmonicMap, r_fail: float, r_floor: Optional[float],
                  n0: int, tol_backturn: float, steps: int = 8) -> float:
    """Bisect between the last non-failing ladder radius and the failing one."""
    if r_floor is None:
        return r_fail
    lo, hi = r_floor, r_fail
    for _ in range(steps):
        mid = (lo + hi) / 2.0
        _, rp = convexity_check_resolved(f, mid, n0, tol_backturn=tol_backturn)
        if rp.verdict == "NON_CONVEX":
            hi = mid
        else:
            lo = mid
    return hi


def _persistent_witness(f: HarmonicMap, cfg: ProbeConfig, reports: dict
                        ) -> Optional[Tuple[float, complex, Tuple[float, ...]]]:
    """Search back-turn anchors, deepest radius first, for a midpoint that
    the image demonstrably never covers.

    Three gates: the midpoint must stay outside (trusted winding zero) at
    every larger ladder radius, stay outside at two extension radii pushed
    toward |z| = 1, and defeat a Newton preimage search.  Hereditary pockets
    fail the winding gates (the growing image absorbs them); chords spanning
    the image's unbounded end fail the preimage gate.
    """
    ext = _extension_radii(cfg.radii[-1])
    curves = _WindingCurves(f)
    suspicious = [r for r in cfg.radii
                  if reports[r].worst_backturn > 10.0 * cfg.tol_backturn]
    for r_anchor in reversed(suspicious):
        anchors = _window_anchors(reports[r_anchor])
        higher = tuple(r for r in cfg.radii if r > r_anchor) + ext
        probe_order = sorted(higher, reverse=True)
        for m in _candidate_midpoints(f, r_anchor, anchors):
            if not all(curves.winding(m, r) == 0 for r in probe_order):
                continue
            if newton_preimage(f, m, anchors) is None:
                return r_anchor, m, higher
    return None


def probe_admissibility(cfg: ProbeConfig) -> ProbeReport:
    """Sweep the dilatation family; fully deterministic for a fixed config."""
    phi = parse_phi(cfg.phi_spec)
    omegas = family_from_spec(cfg.family_spec)
    per_omega: dict = {}
    failures: List[FailureWitness] = []
    notes: List[str] = []
    for omega in omegas:
        key = omega.spec.text
        try:
            f = shear_construct(ShearSystem(phi, omega, cfg.eta), cfg.quad)
            rows = {}
            reports: dict = {}
            noncvx: List[float] = []
            prev_ok: Optional[float] = None
            floor_below: Optional[float] = None
            for r in cfg.radii:
                _, rep = convexity_check_resolved(f, r, cfg.n_samples,
                                                  tol_backturn=cfg.tol_backturn)
                rows[repr(r)] = _record(rep)
                reports[r] = rep
                if rep.verdict == "NON_CONVEX":
                    if not noncvx:
                        floor_below = prev_ok
                    noncvx.append(r)
                elif rep.verdict == "CONVEX":
                    prev_ok = r
                    if noncvx:
                        notes.append(f"scale coherence violated for omega={key}: "
                                     f"CONVEX at r={r} above NON_CONVEX at r={noncvx[0]}")
            per_omega[key] = rows
            if not noncvx:
                continue
            # A sound failure needs a reproducible NON_CONVEX level curve plus
            # a midpoint certificate that no larger radius absorbs.
            found = _persistent_witness(f, cfg, reports)
            if found is None:
                notes.append(f"omega={key}: level-curve back-turn at r={noncvx[0]} "
                             "but every midpoint certificate is absorbed at a larger "
                             "radius (hereditary, not a failure)")
                continue
            cert_r, m, higher = found
            r_witness = noncvx[0]
            rep_w = reports[r_witness]
            r_onset = _onset_radius(f, r_witness, floor_below,
                                    cfg.n_samples, cfg.tol_backturn)
            failures.append(FailureWitness(
                omega_spec=key, r=r_witness, n=rep_w.n, theta_window=rep_w.witness,
                worst_backturn=rep_w.worst_backturn, certificate_r=cert_r,
                midpoint=m, persists_at=higher, r_onset=r_onset))
        except Exception as exc:  # keep sweeping; record the casualty
            per_omega[key] = {"error": f"{type(exc).__name__}: {exc}"}
            notes.append(f"omega={key}: construction/check failed: {exc}")
    failures.sort(key=lambda w: w.omega_spec)
    notes.sort()
    return ProbeReport(cfg, per_omega, notes=notes, failures=failures)


# ---------------------------------------------------------------------------
# Named suites
# ---------------------------------------------------------------------------

ROTATED_FAILING_XIS = (complex(np.exp(1j * np.pi / 4)), complex(np.exp(1j * np.pi / 3)), 1j)
ROTATED_PASSING_XIS = (1.0 + 0.0j, -1.0 + 0.0j)


def rotated_counterexample_suite(radii: Sequence[float] = DEFAULT_RADII,
                                 n_samples: int = 4096) -> dict:
    """Vertical shears of rotations of the half-plane map.

    For xi outside {-1, 1} the rotation breaks admissibility and the probe
    must find a persistent failure with the designated dilatation -xi*z; for
    xi in {-1, 1} the standard mixed family must come back clean.
    """
    cases = []
    for xi in ROTATED_FAILING_XIS:
        fam = (f"explicit:monomial:lam_re={-xi.real!r},lam_im={-xi.imag!r},N=1")
        cfg = ProbeConfig(phi_spec=f"H@rot:re={xi.real!r},im={xi.imag!r}",
                          eta=-1.0 + 0.0j, family_spec=fam, radii=tuple(radii),
                          n_samples=n_samples)
        rep = probe_admissibility(cfg)
        cases.append({"xi": [xi.real, xi.imag], "expected": "FAILURE",
                      "observed": rep.summary, "report": rep.to_jsonable()})
    for xi in ROTATED_PASSING_XIS:
        cfg = ProbeConfig(phi_spec=f"H@rot:re={xi.real!r},im={xi.imag!r}",
                          eta=-1.0 + 0.0j, family_spec=DEFAULT_FAMILY,
                          radii=tuple(radii), n_samples=n_samples)
        rep = probe_admissibility(cfg)
        cases.append({"xi": [xi.real, xi.imag], "expected": "NO_FAILURE_FOUND",
                      "observed": rep.summary, "report": rep.to_jsonable()})
    ok = all(c["expected"] == c["observed"] for c in cases)
    return {"suite": "rotated-counterexamples", "all_as_expected": ok, "cases": cases}


def css_characterization_check(f: HarmonicMap, t_grid: Sequence[float],
                               radii: Sequence[float] = DEFAULT_RADII,
                               n: int = 4096) -> dict:
    """Cross-validate full convexity against per-direction convexity.

    At each radius the restricted map is convex exactly when every
    combination h - e^{2it} g is convex in direction t, so a CONVEX verdict
    coexisting with a failing direction is a hard inconsistency.  The
    converse direction over a finite t-grid is only a coarseness note.
    """
    from .geometry import directional_convexity_check
    from .shear import analytic_combination, harmonic_from_analytic

    rows = []
    inconsistencies = []
    for r in radii:
        _, rep = convexity_check_resolved(f, r, n)
        directions = {}
        for t in t_grid:
            comb = harmonic_from_analytic(analytic_combination(f, t))
            curve = sample_boundary(comb, r, n)
            directions[repr(float(t))] = directional_convexity_check(curve, t).passed
        failing = sorted(t for t, ok in directions.items() if not ok)
        rows.append({"r": r, "verdict": rep.verdict, "directions": directions})
        if rep.verdict == "CONVEX" and failing:
            inconsistencies.append({"r": r, "failing_directions": failing})
        if rep.verdict == "NON_CONVEX" and not failing:
            rows[-1]["note"] = "no failing direction on this t-grid (grid coarseness)"
    return {"map": f.label, "rows": rows, "inconsistencies": inconsistencies,
            "consistent": not inconsistencies}


# ---------------------------------------------------------------------------
# Half-plane / strip identification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegionId:
    kind: str                      # HALF_PLANE | STRIP | OTHER
    normal: Optional[complex] = None     # HALF_PLANE: {Re(conj(normal) w) > offset}
    offset: Optional[float] = None
    direction: Optional[complex] = None  # STRIP axis; {a < Re(conj(n) w) < b}
    a: Optional[float] = None
    b: Optional[float] = None

    @property
    def strip_width_over_pi(self) -> Optional[float]:
        if self.kind != "STRIP":
            return None
        return (self.b - self.a) / np.pi


def halfplane_strip_identifier(f: HarmonicMap, r_max: float = 0.999,
                               n: int = 4096, residual_frac: float = 1e-3,
                               angle_tol: float = 0.01,
                               modal_frac: float = 0.5) -> RegionId:
    """Classify the near-boundary image as half-plane, strip, or neither.

    Straight boundary pieces reveal themselves through the tangent field:
    most samples of a half-plane (resp. strip) image share one tangent
    direction mod pi.  The dominant direction is the histogram mode; the
    transverse coordinates of the modal points then cluster on one line
    (half-plane, all remaining samples on a single side) or two (strip,
    everything in between).  Extreme transverse samples estimate the line
    offsets, accurate to O(1 - r_max).
    """
    curve = sample_boundary(f, r_max, n)
    gamma, tang = curve.gamma, curve.tangent
    ang = np.angle(tang) % np.pi
    hist, edges = np.histogram(ang, bins=720, range=(0.0, np.pi))
    b = int(hist.argmax())
    center = (edges[b] + edges[b + 1]) / 2.0
    dist = np.abs(ang - center)
    dist = np.minimum(dist, np.pi - dist)
    modal = dist <= angle_tol
    if modal.mean() < modal_frac:
        return RegionId("OTHER")
    span = float(np.hypot(gamma.real.max() - gamma.real.min(),
                          gamma.imag.max() - gamma.imag.min()))
    tol = residual_frac * span
    beta = 0.5 * np.angle(np.exp(2j * ang[modal]).mean())
    if beta < 0:
        beta += np.pi
    nrm = 1j * np.exp(1j * beta)
    q = (np.conj(nrm) * gamma).real
    qm = np.sort(q[modal])
    if qm[-1] - qm[0] <= 2.0 * tol:
        clusters = [qm]
    else:
        gi = int(np.diff(qm).argmax())
        clusters = [qm[: gi + 1], qm[gi + 1:]]
    clusters = [c for c in clusters
                if c.size >= 0.05 * qm.size and c[-1] - c[0] <= 2.0 * tol]
    if len(clusters) == 2:
        a, b2 = float(q.min()), float(q.max())
        lo = min(float(c.mean()) for c in clusters)
        hi = max(float(c.mean()) for c in clusters)
        if a >= lo - tol and b2 <= hi + tol:
            if nrm.real < 0 or (abs(nrm.real) < 1e-12 and nrm.imag < 0):
                nrm, a, b2 = -nrm, -b2, -a
            return RegionId("STRIP", direction=complex(np.exp(1j * beta)),
                            normal=complex(nrm), a=a, b=b2)
        return RegionId("OTHER")
    if len(clusters) == 1:
        c = clusters[0]
        width = float(c[-1] - c[0])
        mid = float((c[0] + c[-1]) / 2.0)
        if mid - q.min() <= tol + width:                 # cluster at the bottom
            return RegionId("HALF_PLANE", normal=complex(nrm), offset=float(q.min()))
        if q.max() - mid <= tol + width:                 # cluster at the top
            return RegionId("HALF_PLANE", normal=complex(-nrm), offset=float(-q.max()))
    return RegionId("OTHER")
