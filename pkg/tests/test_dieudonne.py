import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from schwarz_regions.dieudonne import (
    CanonicalInstance,
    Disk,
    Feasibility,
    GeneralInstance,
    disk_order,
    disk_order_general,
    invert_parameters,
    rogosinski_disk,
    rotation_factors,
    rotation_reduce,
    to_canonical_parameters,
    to_general_parameters,
)
from schwarz_regions.errors import Infeasible, InvalidDerivative, InvalidInstance, MissingData, RigidCase
from schwarz_regions.extremal import build_extremal, evaluate_extremal
from schwarz_regions.verification import membership_violations, rotation_error

from conftest import canonical_pairs, disk_points


# (r^2 - s^2) / (r (1 - r^2)) at r = 0.5, s = 0.2
RHO1 = 0.21 / 0.375


def test_order1_example():
    d = disk_order(1, CanonicalInstance(0.5, 0.2))
    assert d.center == pytest.approx(0.4)
    assert d.radius == pytest.approx(RHO1)
    assert d.radius == pytest.approx(0.56)


def test_order2_to_4_at_zero_parameters():
    inst = CanonicalInstance(0.5, 0.2, 0, 0, 0)
    d2, d3, d4 = (disk_order(k, inst) for k in (2, 3, 4))
    assert abs(d2.center) == 0 and d2.radius == pytest.approx(0.42 / 0.28125)
    assert abs(d3.center) == 0 and d3.radius == pytest.approx(1.26 / 0.2109375)
    assert d3.radius == pytest.approx(5.97333, rel=1e-5)
    assert abs(d4.center) == 0 and d4.radius == pytest.approx(31.8578, rel=1e-5)
    assert d4.radius == pytest.approx(24 * 0.21 / (0.5 * 0.75**4))


def test_order1_only_depends_on_r_and_s():
    # the radius is independent of the lower data; the center is s / r
    for r, s in [(0.3, 0.0), (0.9, 0.89), (0.5, 0.25)]:
        d = disk_order(1, CanonicalInstance(r, s))
        assert d.center == pytest.approx(s / r)
        assert d.radius == pytest.approx((r * r - s * s) / (r * (1 - r * r)))


def test_general_frame_examples():
    d = disk_order_general(1, GeneralInstance(0.5, 0.2))
    assert d.center == pytest.approx(0.4) and d.radius == pytest.approx(RHO1)
    d = disk_order_general(1, GeneralInstance(0.5j, 0.2))
    assert d.center == pytest.approx(-0.4j) and d.radius == pytest.approx(RHO1)
    d = disk_order_general(4, GeneralInstance(0.5j, 0.2), 0, 0, 0)
    assert abs(d.center) < 1e-14 and d.radius == pytest.approx(31.8578, rel=1e-5)


def test_rotation_factors_examples():
    r, s, f = rotation_reduce(GeneralInstance(0.5, 0.2))
    assert (r, s) == (0.5, 0.2)
    assert all(x == 1 for x in f.by_order)
    _, _, f = rotation_reduce(GeneralInstance(0.5j, 0.2))
    assert f.by_order[1] == pytest.approx(1j)
    assert f.by_order[4] == pytest.approx(1)


@given(st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi), disk_points(10))
def test_rotation_factors_round_trip(phi, xi, w):
    f = rotation_factors(phi, xi)
    for n in range(5):
        assert abs(f.to_general(n, f.to_canonical(n, w)) - w) <= 1e-14 * max(1, abs(w))


def test_w0_zero_pins_xi():
    inst = GeneralInstance(0.3 + 0.4j, 0)
    assert inst.xi == 0.0
    assert disk_order_general(1, inst).center == 0


def test_invert_example():
    inst = GeneralInstance(0.5, 0.2, 0.4 + RHO1 * 0.3)
    canon = invert_parameters(inst)
    assert canon.lam == pytest.approx(0.3, abs=1e-14)
    assert canon.mu is None and canon.tau is None


def test_invert_infeasible():
    with pytest.raises(Infeasible) as exc:
        invert_parameters(GeneralInstance(0.5, 0.2, 1.0))
    # |lambda| = 0.6 / 0.56
    assert "1.07143" in str(exc.value)


def test_invert_round_trip_through_extremal():
    lam, mu, tau = 0.3, -0.2j, 0.1
    spec = build_extremal(CanonicalInstance(0.5, 0.2, lam, mu, tau), 0.4 - 0.2j)
    w = evaluate_extremal(spec)
    canon = invert_parameters(GeneralInstance(0.5, 0.2, w[1], w[2], w[3]))
    assert abs(canon.lam - lam) < 1e-10
    assert abs(canon.mu - mu) < 1e-10
    assert abs(canon.tau - tau) < 1e-10


def test_invert_rigid_data_pins_higher_parameters():
    spec = build_extremal(CanonicalInstance(0.6, 0.1, cmath.exp(0.4j)))
    w = evaluate_extremal(spec)
    canon = invert_parameters(GeneralInstance(0.6, 0.1, w[1], w[2], w[3]))
    assert canon.feasibility is Feasibility.RIGID_AT_LAMBDA
    assert canon.mu == 0 and canon.tau == 0
    # inconsistent data above the rigid level are rejected
    with pytest.raises(Infeasible):
        invert_parameters(GeneralInstance(0.6, 0.1, w[1], w[2] + 0.01, w[3]))


def test_missing_and_rigid_errors():
    with pytest.raises(MissingData):
        disk_order(3, CanonicalInstance(0.5, 0.2, 0.1))
    with pytest.raises(RigidCase):
        disk_order(3, CanonicalInstance(0.5, 0.2, 1.0, 0.2))
    assert disk_order(3, CanonicalInstance(0.5, 0.2, 1.0, 0.2), strict=False).radius == 0
    with pytest.raises(Infeasible):
        disk_order(2, CanonicalInstance(0.5, 0.2, 1.1))
    with pytest.raises(InvalidInstance):
        CanonicalInstance(0.5, 0.5)
    with pytest.raises(InvalidInstance):
        GeneralInstance(0.5, 0.6j)


def test_feasibility_classes():
    assert CanonicalInstance(0.5, 0.2, 0.3, 0.2, 0.1).feasibility is Feasibility.INTERIOR
    assert CanonicalInstance(0.5, 0.2, 1j).feasibility is Feasibility.RIGID_AT_LAMBDA
    assert CanonicalInstance(0.5, 0.2, 0.1, -1).feasibility is Feasibility.RIGID_AT_MU
    assert CanonicalInstance(0.5, 0.2, 0.1, 0.2, 1 + 1e-13).feasibility is Feasibility.RIGID_AT_TAU
    assert CanonicalInstance(0.5, 0.2, 0.1, 1.01).feasibility is Feasibility.INFEASIBLE


def test_radius_shrinks_to_zero_at_rigid_parameter():
    for eps in (1e-2, 1e-4, 1e-6):
        x = 1 - eps
        assert disk_order(2, CanonicalInstance(0.5, 0.2, x)).radius < 3 * eps
        assert disk_order(3, CanonicalInstance(0.5, 0.2, 0.1, x * 1j)).radius < 13 * eps
        assert disk_order(4, CanonicalInstance(0.5, 0.2, 0.1, 0.2, -x)).radius < 64 * eps


def test_rogosinski_examples():
    d = rogosinski_disk(0.5, 0)
    assert d.center == 0 and d.radius == pytest.approx(0.25)
    d = rogosinski_disk(0.5, 0.5)
    assert d.center == pytest.approx(0.2) and d.radius == pytest.approx(0.2)
    # f(z) = d0 z is a member
    assert d.contains(0.5 * 0.5, rtol=1e-12)
    with pytest.raises(InvalidDerivative):
        rogosinski_disk(0.5, 1.0)


def test_rogosinski_uses_modulus_of_z():
    z, d0 = 0.3 + 0.4j, 0.2 - 0.1j
    d = rogosinski_disk(z, d0)
    # f(z) = z T_{d0}(e^{i t} z) sweeps the boundary circle; check a few t
    for t in np.linspace(0, 2 * np.pi, 7):
        w = z * (cmath.exp(1j * t) * z + d0) / (1 + d0.conjugate() * cmath.exp(1j * t) * z)
        assert abs(abs(w - d.center) - d.radius) < 1e-14


def test_disk_helpers():
    d = Disk(1 + 1j, 2.0)
    assert d.point(1j) == 1 + 3j
    assert d.slack(1 + 1j) == 2.0
    assert d.contains(3 + 1j) and not d.contains(3.01 + 1j)


@given(canonical_pairs(), disk_points(), disk_points(), disk_points(), disk_points(1.0))
def test_disk_formulas_match_extremal_jets(pair, lam, mu, tau, alpha):
    r, s = pair
    inst = CanonicalInstance(r, s, lam, mu, tau)
    f = evaluate_extremal(build_extremal(inst, alpha))
    d = disk_order(4, inst)
    assert abs(f[4] - d.point(alpha)) <= 1e-9 * max(1.0, d.radius)
    # lower orders read the data back
    for k, p in zip((1, 2, 3), (lam, mu, tau)):
        dk = disk_order(k, inst)
        assert abs(f[k] - dk.point(p)) <= 1e-10 * max(1.0, dk.radius, abs(dk.center))


@given(disk_points(0.9), st.floats(0, 0.999), disk_points(), disk_points(), disk_points())
def test_general_displays_match_rotation_route(z0, frac, b1, b2, b3):
    assume(abs(z0) > 0.05)
    w0 = frac * abs(z0) * cmath.exp(1j * 0.7)
    assert rotation_error(z0, w0, [b1, b2, b3]) <= 1e-10


@given(disk_points(0.9), disk_points(), disk_points(), disk_points())
def test_parameter_rotation_round_trip(z0, a, b, c):
    assume(abs(z0) > 0.05)
    w0 = 0.3 * z0 * 1j
    back = to_general_parameters(z0, w0, *to_canonical_parameters(z0, w0, a, b, c))
    assert max(abs(x - y) for x, y in zip(back, (a, b, c))) < 1e-15


def test_membership_of_random_selfmaps():
    from schwarz_regions.verification import _rng, draw_selfmap_data

    for i in range(300):
        rng = _rng(11, "membership", i)
        degree = 1 + i % 6
        z0, derivs = draw_selfmap_data(rng, degree)
        assert membership_violations(z0, derivs, degree) == []
