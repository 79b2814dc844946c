import numpy as np
import pytest

from shearconvex.specs import (SpecError, family_from_spec, parse_eta,
                               parse_omega, parse_phi, parse_radii)


def test_canonical_phi_forms():
    assert parse_phi("H").label == "H"
    assert parse_phi("H-1").label == "H-1"
    assert parse_phi("koebe").label == "koebe"
    L = parse_phi("Llambda:re=0,im=1")
    # L_i(i/2) = (1/2i) log((1/2)/(3/2)) = i log(3)/2
    assert abs(L.value(0.5j) - 0.5j * np.log(3.0)) < 1e-13
    assert L.d1(0.0 + 0.0j) == pytest.approx(1.0)
    rot = parse_phi("H@rot:re=-1,im=0")
    assert rot.value(0.5) == pytest.approx(0.5 / 1.5, abs=1e-14)


def test_canonical_omega_forms():
    w = parse_omega("monomial:lam_re=0,lam_im=-1,N=1")
    assert w.value(0.5) == pytest.approx(-0.5j)
    assert parse_omega("zero").value(0.3 + 0.1j) == 0
    seeded = parse_omega("blaschke:seed=42,deg=3,scale=1")
    assert len(seeded.spec.zeros) == 3
    again = parse_omega("blaschke:seed=42,deg=3,scale=1")
    assert seeded.spec.text == again.spec.text
    # explicit form round-trips through its own canonical text
    explicit = parse_omega(seeded.spec.text)
    assert explicit.spec == seeded.spec


def test_eta_forms():
    assert parse_eta("-1,0") == -1.0 + 0.0j
    assert parse_eta("theta=0") == pytest.approx(1.0 + 0.0j)
    assert parse_eta(f"theta={np.pi / 2}") == pytest.approx(-1.0 + 0.0j)
    with pytest.raises(SpecError):
        parse_eta("nope")


def test_family_specs():
    assert len(family_from_spec("monomial-grid:phases=4,nmax=2")) == 8
    assert len(family_from_spec("blaschke-random:count=5,deg=2,seed=3")) == 5
    two = family_from_spec("explicit:monomial:N=1+zero")
    assert [w.spec.text for w in two] == sorted(w.spec.text for w in two)
    with pytest.raises(SpecError):
        family_from_spec("explicit:")
    with pytest.raises(SpecError):
        family_from_spec("unknown:count=2")


def test_radii_parse():
    assert parse_radii("0.9,0.99") == (0.9, 0.99)
    with pytest.raises(SpecError):
        parse_radii("0.5,1.0")


def test_bad_specs_raise():
    with pytest.raises(SpecError):
        parse_phi("nonsense")
    with pytest.raises(SpecError):
        parse_omega("monomial:lam_re")
    with pytest.raises(SpecError):
        parse_omega("blaschke-explicit:phase=1")
