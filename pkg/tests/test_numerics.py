import numpy as np
import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qaclab.numerics import (
    DEFAULT_TOL,
    Exact,
    Tolerance,
    approx_eq,
    make_rng,
    random_scalar,
    random_unitary,
    to_float,
)

SQRT2 = 1.4142135623730951


def test_to_float_examples():
    assert to_float(Exact.INV_SQRT2) == complex(0.7071067811865476, 0.0)
    assert to_float(Exact.I) == 1j
    assert to_float(complex(2.5, -1)) == complex(2.5, -1)


def test_approx_eq_examples():
    assert approx_eq(Exact.ONE, Exact(1))
    assert approx_eq(complex(1, 0), complex(1 + 1e-12, 0))
    assert not approx_eq(complex(1, 0), complex(1.001, 0))


def test_exact_vs_exact_is_exact():
    # a float gap far below the tolerance still distinguishes exact values
    assert not approx_eq(Exact(1), Exact(1, Fraction(1, 10**12)))


def test_random_scalar_golden_seed_42():
    rng = np.random.default_rng(42)
    assert random_scalar(rng) == complex(0.30471707975443135, -1.0399841062404955)


def test_random_scalar_draws_distinct():
    rng = make_rng(0)
    assert random_scalar(rng) != random_scalar(rng)


def test_random_scalar_mean_small():
    rng = make_rng(7)
    mean = sum(random_scalar(rng) for _ in range(10**4)) / 10**4
    assert abs(mean) < 0.1


small = st.integers(min_value=-9, max_value=9)
exacts = st.builds(Exact, small, small, small, small)


@given(exacts, exacts)
@settings(max_examples=300, deadline=None)
def test_ring_homomorphism(x, y):
    assert abs(to_float(x + y) - (to_float(x) + to_float(y))) < 1e-12
    assert abs(to_float(x * y) - (to_float(x) * to_float(y))) < 1e-12


def test_ring_homomorphism_bulk():
    rng = make_rng(3)
    for _ in range(10**4):
        x = Exact(*map(int, rng.integers(-5, 6, size=4)))
        y = Exact(*map(int, rng.integers(-5, 6, size=4)))
        assert abs(to_float(x * y) - to_float(x) * to_float(y)) < 1e-12
        assert abs(to_float(x + y) - (to_float(x) + to_float(y))) < 1e-12


@given(exacts)
@settings(max_examples=200, deadline=None)
def test_division_inverts_multiplication(x):
    if x.is_zero:
        return
    y = Exact(3, -1, 2, 5)
    assert (y * x) / x == y


def test_canonical_components_are_reduced():
    # equal values built from unreduced fractions share identical components
    a = Exact(Fraction(2, 4), Fraction(-6, 4))
    b = Exact(Fraction(1, 2), Fraction(-3, 2))
    assert a == b and hash(a) == hash(b)
    assert a.a == Fraction(1, 2)


def test_mixed_backend_demotes_to_float():
    out = Exact(1) + 0.5
    assert isinstance(out, complex)
    assert out == 1.5

    assert isinstance(Exact(2) * Exact(3), Exact)
    assert Exact(2) * Exact(3) == Exact(6)


def test_abs2_and_conjugate():
    x = Exact(1, 1, 2, -1)
    assert abs(to_float(x.abs2()) - abs(to_float(x)) ** 2) < 1e-12
    assert to_float(x.conjugate()) == to_float(x).conjugate()


def test_sqrt2_arithmetic():
    assert Exact.SQRT2 * Exact.SQRT2 == Exact(2)
    assert Exact.INV_SQRT2 * Exact.SQRT2 == Exact.ONE
    assert Exact.ONE / Exact.SQRT2 == Exact.INV_SQRT2


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(-1.0, 0)
    with pytest.raises(ValueError):
        Tolerance(float("nan"), 0)
    assert DEFAULT_TOL.abs_eps == 1e-10
    assert DEFAULT_TOL.rel_eps == 1e-9


def test_random_unitary_is_unitary():
    rng = make_rng(11)
    for dim in (2, 4, 8):
        u = random_unitary(dim, rng)
        assert np.max(np.abs(u @ u.conj().T - np.eye(dim))) < 1e-10
