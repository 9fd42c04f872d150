import numpy as np
import pytest
from hypothesis import given, strategies as st

from revcarleson.disc import (
    Arc,
    CarlesonWindow,
    DiscPoint,
    angle_of,
    arc_contains,
    contains,
    dyadic_arc_family,
    dyadic_starts,
)
from revcarleson.errors import DomainError, ParameterError

starts = st.floats(0.0, 1.0, exclude_max=True)
lengths = st.floats(1e-6, 1.0)


def test_level_zero_family():
    assert dyadic_arc_family(0) == [Arc(0.0, 1.0), Arc(0.5, 1.0)]


def test_level_one_family():
    fam = dyadic_arc_family(1)
    for arc in (Arc(0, 0.5), Arc(0.5, 0.5), Arc(0.25, 0.5), Arc(0.75, 0.5)):
        assert arc in fam


@pytest.mark.parametrize("level", [0, 1, 2, 5, 9])
def test_family_count(level):
    # sum over j of two families of 2^j arcs
    assert len(dyadic_arc_family(level)) == 2 * (2 ** (level + 1) - 1)


@pytest.mark.parametrize("bad", [-1, 25, 2.5])
def test_level_errors(bad):
    with pytest.raises(ParameterError):
        dyadic_arc_family(bad)


def test_shifted_starts_are_half_cell():
    std, sh = dyadic_starts(3)
    np.testing.assert_allclose(np.mod(sh - std, 1.0), 1.0 / 16)


def test_wraparound_membership():
    assert contains(Arc(0.9, 0.2), 0.05)
    assert not contains(Arc(0.9, 0.2), 0.2)


def test_window_membership():
    w = CarlesonWindow(Arc(0.0, 0.25), 0.1)
    assert not contains(w, 0.85 * np.exp(2j * np.pi * 0.1))
    assert contains(w, 0.95 * np.exp(2j * np.pi * 0.1))
    assert contains(w, DiscPoint.from_complex(np.exp(2j * np.pi * 0.1)))


def test_outside_disc_is_domain_error():
    with pytest.raises(DomainError):
        contains(CarlesonWindow(Arc(0.0, 0.25), 0.1), 1.01)
    with pytest.raises(DomainError):
        DiscPoint(1.0, 0.1)


def test_boundary_tolerance():
    contains(CarlesonWindow(Arc(0.0, 0.25), 0.1), 1.0 + 5e-13)


@pytest.mark.parametrize("length", [0.0, -0.1, 1.5])
def test_bad_arc_length(length):
    with pytest.raises(ParameterError):
        Arc(0.0, length)


def test_family_membership_matches_interval_arithmetic(rng):
    t = rng.random(10_000)
    for arc in dyadic_arc_family(4):
        end = arc.start + arc.length
        direct = ((t >= arc.start) & (t < end)) | ((t + 1.0 >= arc.start) & (t + 1.0 < end))
        np.testing.assert_array_equal(arc.contains(t), direct)


@given(starts, lengths, st.floats(0.0, 1.0, exclude_max=True), st.floats(-3.0, 3.0))
def test_shift_consistency(s, length, t, delta):
    a = contains(Arc(s, length), t)
    b = contains(Arc((s + delta) % 1.0, length), (t + delta) % 1.0)
    # rounding can move a point that sits on an endpoint across it
    edge = min(abs((t - s) % 1.0), abs((t - s - length) % 1.0), abs((s + length - t) % 1.0))
    if edge > 1e-9:
        assert a == b


@given(st.floats(0.0, 1.0, exclude_max=True), st.floats(0.01, 1.0))
def test_angle_of_inverts_parameterisation(t, r):
    got = angle_of(r * np.exp(2j * np.pi * t))
    assert min(abs(got - t), 1.0 - abs(got - t)) < 1e-12


@given(starts, lengths)
def test_complement_partition(s, length):
    t = np.linspace(0, 1, 257, endpoint=False)
    inside = arc_contains(s, length, t)
    assert inside.sum() <= np.ceil(length * 257) + 1
