from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from shearconvex.functions import (BlaschkeOmega, CatalogId, MonomialOmega,
                                   ZeroOmega, catalog, make_schwarz,
                                   rotate_analytic)
from shearconvex.quadrature import DEFAULT_CONFIG
from shearconvex.shear import (HarmonicMap, ShearSystem, analytic_combination,
                               harmonic_from_analytic, normalize,
                               rotate_harmonic, shear_construct)

H = catalog(CatalogId("H"))
OM_Z = make_schwarz(MonomialOmega(1.0, 1))


@pytest.fixture(scope="module")
def f0():
    return shear_construct(ShearSystem(H, OM_Z, 1.0))


def test_f0_matches_closed_forms(f0, disk_grid):
    h_ref = catalog(CatalogId("F0_H_PART"))
    g_ref = catalog(CatalogId("F0_G_PART"))
    assert np.abs(f0.h.value(disk_grid) - h_ref.value(disk_grid)).max() < 1e-11
    assert np.abs(f0.g.value(disk_grid) - g_ref.value(disk_grid)).max() < 1e-11


def test_zero_dilatation_returns_phi(disk_grid):
    f = shear_construct(ShearSystem(H, make_schwarz(ZeroOmega()), -1.0))
    assert np.abs(f.h.value(disk_grid) - H.value(disk_grid)).max() < 1e-11
    assert np.abs(f.g.value(disk_grid)).max() == 0.0


def test_strip_shear_closed_form(disk_grid):
    # vertical shear of L_lambda with omega = -z: h - g equals the log of
    # (1-lam z)(1-conj(lam) z)/(1-z)^2 over (2 - 2 Re lam)
    lam = 1j
    f = shear_construct(ShearSystem(catalog(CatalogId("L_LAMBDA", lam)),
                                    make_schwarz(MonomialOmega(-1.0, 1)), -1.0))
    hg = f.h.value(disk_grid) - f.g.value(disk_grid)
    closed = np.log((1 - lam * disk_grid) * (1 - np.conj(lam) * disk_grid)
                    / (1 - disk_grid) ** 2) / (2 - 2 * lam.real)
    assert np.abs(hg - closed).max() < 1e-11


SEEDED_SYSTEMS = []
_rng = np.random.default_rng(42)
_phis = ["H", "H_ROT_MINUS1", "KOEBE", "IDENTITY", "F0_H_PART"]
for _k in range(6):
    _phi = catalog(CatalogId(_phis[_k % len(_phis)]))
    if _k % 3 == 0:
        _om = make_schwarz(MonomialOmega(np.exp(2j * np.pi * _rng.uniform()),
                                         int(_rng.integers(1, 4))))
    elif _k % 3 == 1:
        _om = make_schwarz(BlaschkeOmega(
            zeros=tuple(0.9 * np.sqrt(_rng.uniform()) * np.exp(2j * np.pi * _rng.uniform())
                        for _ in range(int(_rng.integers(1, 3)))),
            phase=2 * np.pi * _rng.uniform(), scale=_rng.uniform(0.3, 1.0)))
    else:
        _om = make_schwarz(ZeroOmega())
    SEEDED_SYSTEMS.append(ShearSystem(_phi, _om, complex(np.exp(2j * np.pi * _rng.uniform()))))


@pytest.mark.parametrize("sys_", SEEDED_SYSTEMS, ids=lambda s: s.label[:48])
def test_reconstruction_and_dilatation(sys_, wide_grid):
    f = shear_construct(sys_)
    h = f.h.value(wide_grid)
    g = f.g.value(wide_grid)
    phi = sys_.phi.value(wide_grid)
    assert np.abs(h - sys_.eta * g - phi).max() <= 100 * DEFAULT_CONFIG.abs_tol \
        * max(1.0, float(np.abs(phi).max()))
    h1, g1 = f.derivatives(wide_grid)
    om = sys_.omega.value(wide_grid)
    assert np.abs(g1 / h1 - om).max() < 1e-12
    # Jacobian positivity on the grid
    assert (np.abs(h1) ** 2 - np.abs(g1) ** 2).min() > 0


@pytest.mark.parametrize("sys_", SEEDED_SYSTEMS[:3], ids=lambda s: s.label[:48])
def test_s_h0_normalization(sys_):
    f = shear_construct(sys_)
    z0 = 0.0 + 0.0j
    assert abs(f.h.value(z0)) < 1e-10
    assert abs(f.g.value(z0)) < 1e-10
    assert abs(f.h.d1(z0) - 1.0) < 1e-10
    assert abs(f.g.d1(z0)) < 1e-10


def test_second_derivatives_match_finite_differences(f0, disk_grid):
    h = 1e-5
    for part in (f0.h, f0.g):
        fd = (part.d1(disk_grid + h) - part.d1(disk_grid - h)) / (2 * h)
        d2 = part.d2(disk_grid)
        assert (np.abs(fd - d2) / np.maximum(np.abs(d2), 1e-9)).max() < 1e-6


def test_rotate_harmonic_identity_and_involution(f0, disk_grid):
    same = rotate_harmonic(f0, 1.0)
    assert np.abs(same.map_points(disk_grid) - f0.map_points(disk_grid)).max() < 1e-13
    xi = np.exp(1j * 0.8)
    back = rotate_harmonic(rotate_harmonic(f0, xi), np.conj(xi))
    assert np.abs(back.map_points(disk_grid) - f0.map_points(disk_grid)).max() < 1e-10


def test_rotation_shear_compatibility(disk_grid):
    # rotating the shear of (phi, omega0, eta) solves the system with datum
    # (phi_xi, z -> xi^2 omega0(xi z), eta conj(xi)^2)
    xi = complex(np.exp(1j * np.pi / 5))
    omega0 = make_schwarz(MonomialOmega(np.exp(1j * 0.3), 2))
    eta = complex(np.exp(1j * 1.9))
    f = shear_construct(ShearSystem(H, omega0, eta))
    rot = rotate_harmonic(f, xi)

    phi_xi = rotate_analytic(H, xi)
    lam_rot = xi ** 2 * omega0.spec.lam * xi ** omega0.spec.n
    omega_rot = make_schwarz(MonomialOmega(lam_rot, omega0.spec.n))
    direct = shear_construct(ShearSystem(phi_xi, omega_rot, eta * np.conj(xi) ** 2))

    tol = 100 * DEFAULT_CONFIG.abs_tol * 10
    assert np.abs(rot.map_points(disk_grid) - direct.map_points(disk_grid)).max() < tol
    # the transformed provenance attached by rotate_harmonic agrees too
    prov = rot.provenance
    assert prov is not None
    assert abs(prov.eta - eta * np.conj(xi) ** 2) < 1e-12
    z = disk_grid[:8]
    assert np.abs(prov.omega.value(z) - omega_rot.value(z)).max() < 1e-12


def test_normalize_is_identity_on_normalized_maps(f0, disk_grid):
    g = normalize(f0)
    assert np.abs(g.map_points(disk_grid) - f0.map_points(disk_grid)).max() < 1e-10


def test_normalize_rescales():
    from shearconvex.functions import AnalyticFunction
    two_h = AnalyticFunction("2H", lambda z: 2 * H.value(z),
                             lambda z: 2 * H.d1(z), lambda z: 2 * H.d2(z))
    f = normalize(harmonic_from_analytic(two_h))
    z = 0.5 + 0.2j
    assert f.f_eval(z) == pytest.approx(H.value(z), abs=1e-13)


def test_normalize_two_step_formula():
    # h = z, g = z/2 gives a = 1/2; the two-step map lands on (z, 0)
    from shearconvex.functions import AnalyticFunction
    hz = AnalyticFunction("z", lambda z: z + 0j, lambda z: 1.0 + z * 0, lambda z: z * 0)
    gz = AnalyticFunction("z/2", lambda z: z / 2, lambda z: 0.5 + z * 0, lambda z: z * 0)
    f = normalize(HarmonicMap(hz, gz))
    z = 0.3 - 0.4j
    assert f.h.value(z) == pytest.approx(z, abs=1e-12)
    assert abs(f.g.value(z)) < 1e-12
    assert f.h.d1(0.0 + 0.0j) == pytest.approx(1.0, abs=1e-12)
    assert abs(f.g.d1(0.0 + 0.0j)) < 1e-12


def test_normalize_rejects_degenerate_maps():
    from shearconvex.functions import AnalyticFunction
    hz = AnalyticFunction("z", lambda z: z + 0j, lambda z: 1.0 + z * 0, lambda z: z * 0)
    with pytest.raises(ValueError):
        normalize(HarmonicMap(hz, hz))   # |a| = 1


def test_analytic_combination(f0, disk_grid):
    # t = pi/2 gives h + g; for f0 that is the Koebe function, t = 0 gives H
    comb0 = analytic_combination(f0, 0.0)
    combv = analytic_combination(f0, np.pi / 2)
    k = catalog(CatalogId("KOEBE"))
    assert np.abs(comb0.value(disk_grid) - H.value(disk_grid)).max() < 1e-11
    assert np.abs(combv.value(disk_grid) - k.value(disk_grid)).max() < 1e-11


def test_invalid_system_inputs():
    with pytest.raises(ValueError):
        ShearSystem(H, OM_Z, 2.0)                       # eta not unimodular
    with pytest.raises(ValueError):
        ShearSystem(catalog(CatalogId("F0_G_PART")), OM_Z, 1.0)   # phi not in S


def test_eta_from_theta():
    sys_ = ShearSystem.from_theta(H, OM_Z, np.pi / 2)
    assert sys_.eta == pytest.approx(-1.0 + 0.0j, abs=1e-15)


def test_concurrent_evaluation_matches_serial(f0):
    zs = [0.3 + 0.1j, -0.2 + 0.4j, 0.55 - 0.25j, 0.7j] * 4
    serial = [f0.f_eval(z) for z in zs]
    with ThreadPoolExecutor(max_workers=8) as ex:
        conc = list(ex.map(f0.f_eval, zs))
    assert serial == conc
