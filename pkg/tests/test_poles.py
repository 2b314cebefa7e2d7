import dataclasses
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import goldens
import oracles
from gamowdecay import (DegenerateRootError, DomainError, NumericalFailure, ResonancePole,
                        RootCountError, SearchRegion, ShellModel, find_poles, locate_poles,
                        residue_at_pole, winding_number, zeldovich_norm)
from gamowdecay import poles as poles_mod
from gamowdecay.model import jost_j2


def test_strong_coupling_limit():
    (p,) = find_poles(ShellModel.from_lambda(1e6), count=1)
    assert abs(p.k.real - math.pi) < 1e-5
    assert abs(p.k.imag) < 1e-6
    assert p.k.imag < 0


def test_goldens_lambda100():
    p1, p2 = find_poles(ShellModel.from_lambda(100.0), count=2)
    assert abs(p1.k - goldens.K1) < 1e-13
    assert abs(p2.k - goldens.K2) < 1e-13
    assert abs(p1.residue - goldens.RESIDUE1) < 1e-12 * abs(goldens.RESIDUE1)
    assert abs(p2.residue - goldens.RESIDUE2) < 1e-12 * abs(goldens.RESIDUE2)


@pytest.mark.parametrize("lam", [2.0, 20.0, 100.0, 1e3])
def test_against_grid_scan(lam):
    found = find_poles(ShellModel.from_lambda(lam), count=3)
    ref = oracles.grid_scan_poles(lam, 3)
    for p, r in zip(found, ref):
        assert abs(p.k - r) <= 1e-9 * abs(r)


def test_ordering_pattern():
    poles = find_poles(ShellModel.from_lambda(100.0), count=5)
    assert [p.n for p in poles] == [1, 2, 3, 4, 5]
    for n, p in enumerate(poles, start=1):
        assert (n - 1) * math.pi < p.alpha < n * math.pi
        assert p.beta > 0
    betas = [p.beta for p in poles]
    assert betas == sorted(betas)


def test_sharpening_with_coupling(poles_by_lambda):
    ratios = [poles_by_lambda[lam][1][0].gamma_R / (2 * poles_by_lambda[lam][1][0].E_R)
              for lam in (20.0, 50.0, 100.0)]
    assert ratios[0] > ratios[1] > ratios[2]


@pytest.mark.parametrize("lam", [0.3, 5.0, 100.0, 1e4])
def test_pole_record_consistency(lam):
    m = ShellModel.from_lambda(lam)
    for p in find_poles(m, count=3):
        a, b = p.alpha, p.beta
        assert p.E_R == pytest.approx(m.hbar**2 * (a * a - b * b) / (2 * m.m), rel=1e-12)
        assert p.gamma_R == pytest.approx(2 * m.hbar**2 * a * b / m.m, rel=1e-12)
        assert p.N_squared == 1j * p.residue
        assert p.N * p.N == pytest.approx(p.N_squared, rel=1e-14)
        if lam <= 100:
            assert p.residual <= 1e-13
        assert abs(jost_j2(m, p.k)) == p.residual


def test_physical_units_scale():
    ref = find_poles(ShellModel.from_lambda(30.0), count=3)
    # same lambda = 2 m g a / hbar^2 with a = 2.5, m = 1.7, hbar = 0.8
    a, m, hbar = 2.5, 1.7, 0.8
    g = 30.0 * hbar**2 / (2 * m * a)
    model = ShellModel(a=a, g=g, m=m, hbar=hbar)
    scaled = find_poles(model, count=3)
    for p, q in zip(ref, scaled):
        assert q.k * a == pytest.approx(p.k, rel=1e-12)
        # energies scale by (hbar^2 / 2 m a^2) relative to hbar = 2m = a = 1
        assert q.z == pytest.approx(p.z * hbar**2 / (2 * m * a * a), rel=1e-12)


class TestWinding:
    @pytest.mark.parametrize("lam", [0.5, 10.0, 100.0])
    def test_matches_dense_oracle(self, lam):
        region = SearchRegion(0.0, 3 * math.pi, -math.pi)
        assert winding_number(ShellModel.from_lambda(lam), region) == \
            oracles.winding_count_dense(lam, 3 * math.pi, -math.pi)

    @pytest.mark.parametrize("lam", [0.5, 3.0, 100.0, 1e5])
    def test_enumeration_complete(self, lam):
        m = ShellModel.from_lambda(lam)
        region = SearchRegion.default(m, 4)
        assert len(locate_poles(m, region)) == winding_number(m, region)

    def test_weak_coupling_has_no_poles_in_box(self):
        m = ShellModel.from_lambda(1e-300)
        region = SearchRegion.default(m, 3)
        assert winding_number(m, region) == 0
        assert locate_poles(m, region) == []
        with pytest.raises(RootCountError) as err:
            find_poles(m, region, count=1)
        assert err.value.found == 0 and err.value.requested == 1


def test_too_few_in_region():
    m = ShellModel.from_lambda(100.0)
    region = SearchRegion(0.0, 2.5 * math.pi, -math.pi)
    with pytest.raises(RootCountError) as err:
        find_poles(m, region, count=4)
    assert err.value.found == 2


class TestResidue:
    @pytest.mark.parametrize("lam,n", [(100.0, 1), (100.0, 2), (5.0, 1), (5.0, 3), (1e3, 2)])
    def test_contour_oracle(self, lam, n):
        m = ShellModel.from_lambda(lam)
        ps = find_poles(m, count=n + 1)
        p = ps[n - 1]
        radius = min(0.1 * p.beta, 0.25 * abs(ps[n].k - p.k))
        ref = oracles.contour_residue(lam, p.k, radius, nodes=512)
        assert abs(p.residue - ref) <= 1e-8 * abs(ref)

    def test_zeldovich_examples(self):
        assert zeldovich_norm(-2.5j) == 2.5
        assert zeldovich_norm(goldens.RESIDUE1) == 1j * goldens.RESIDUE1
        with pytest.warns(RuntimeWarning):
            assert zeldovich_norm(0) == 0

    def test_degenerate_root(self, monkeypatch):
        monkeypatch.setattr(poles_mod, "jost_j2_derivative", lambda model, k: 1e-12 + 0j)
        with pytest.raises(DegenerateRootError) as err:
            residue_at_pole(ShellModel.from_lambda(100.0), goldens.K1)
        assert err.value.best == goldens.K1


def test_newton_exhaustion_reports_best(monkeypatch):
    monkeypatch.setattr(poles_mod, "MAX_NEWTON_ITER", 1)
    with pytest.raises(NumericalFailure) as err:
        find_poles(ShellModel.from_lambda(100.0), count=1)
    assert err.value.best is not None


def test_n_default_and_override():
    p = find_poles(ShellModel.from_lambda(10.0), count=1)[0]
    flipped = dataclasses.replace(p, N=-p.N)
    assert flipped.N == -p.N and flipped.N_squared == p.N_squared
    assert ResonancePole(1, 3 - 0.1j, 9 - 0.6j, -4 + 0j, 4j).N == 2j


@pytest.mark.parametrize("kwargs", [
    dict(re_min=2.0, re_max=1.0, im_min=-1.0),
    dict(re_min=-1.0, re_max=1.0, im_min=-1.0),
    dict(re_min=0.0, re_max=1.0, im_min=0.5),
    dict(re_min=0.0, re_max=1.0, im_min=-1.0, im_max=0.3),
    dict(re_min=0.0, re_max=1.0, im_min=-1.0, grid_density=0.0),
])
def test_region_validation(kwargs):
    with pytest.raises(DomainError):
        SearchRegion(**kwargs)


def test_count_validation():
    with pytest.raises(DomainError):
        find_poles(ShellModel.from_lambda(3.0), count=0)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.5, 5e3))
def test_poles_are_zeros_in_fourth_quadrant(lam):
    m = ShellModel.from_lambda(lam)
    for p in find_poles(m, count=2):
        assert p.k.real > 0 and p.k.imag < 0
        assert abs(jost_j2(m, p.k)) <= max(1e-13, 1e-15 * lam)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert np.isfinite(p.residue)
