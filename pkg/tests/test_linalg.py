import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pawbar.errors import NotPSD, NotSymmetric, Singular
from pawbar.linalg import (
    cross_sqrt,
    frobenius_norm,
    inv_sqrt_spd,
    sqrt_spd,
    sym_eig,
)

from conftest import random_spd


def test_frobenius_norm_examples():
    assert frobenius_norm(np.zeros((3, 3))) == 0.0
    assert frobenius_norm(np.eye(2)) == pytest.approx(math.sqrt(2), abs=0)
    # hand sum of squares: 9 + 16 = 25
    assert frobenius_norm(np.array([[3.0, 4.0], [0.0, 0.0]])) == 5.0


def test_sym_eig_identity():
    w, v = sym_eig(np.eye(3))
    assert np.allclose(w, [1.0, 1.0, 1.0], atol=1e-14)
    assert frobenius_norm(v.T @ v - np.eye(3)) <= 1e-10


def test_sym_eig_diagonal():
    w, v = sym_eig(np.diag([4.0, 1.0]))
    assert np.allclose(w, [1.0, 4.0], atol=1e-14)
    # columns are a permutation of the axes
    assert np.allclose(np.abs(v), [[0.0, 1.0], [1.0, 0.0]], atol=1e-14)


def test_sym_eig_hand_2x2():
    # char poly of [[2,1],[1,2]] is l^2 - 4l + 3 = (l-1)(l-3)
    w, _ = sym_eig(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(w, [1.0, 3.0], atol=1e-12)


def test_sym_eig_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotSymmetric):
        sym_eig(np.ones((2, 3)))


def test_sym_eig_ordering_and_reconstruction(rng):
    for _ in range(20):
        dim = int(rng.integers(2, 9))
        s = random_spd(rng, dim)
        w, v = sym_eig(s)
        assert np.all(np.diff(w) >= 0)
        assert frobenius_norm((v * w) @ v.T - s) <= 1e-10 * max(1.0, frobenius_norm(s))
        assert frobenius_norm(v.T @ v - np.eye(dim)) <= 1e-10


def test_sqrt_spd_examples():
    assert np.allclose(sqrt_spd(np.eye(2)), np.eye(2), atol=1e-14)
    assert np.allclose(sqrt_spd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)
    # spectral mapping of the hand 2x2 case: eigenvalues (1, sqrt(3))
    r = sqrt_spd(np.array([[2.0, 1.0], [1.0, 2.0]]))
    w, _ = sym_eig(r)
    assert np.allclose(w, [1.0, math.sqrt(3)], atol=1e-12)
    assert frobenius_norm(r @ r - np.array([[2.0, 1.0], [1.0, 2.0]])) <= 1e-12


def test_sqrt_spd_clamps_roundoff_negatives():
    s = np.diag([1.0, -1e-14])
    r = sqrt_spd(s)
    assert np.allclose(r, np.diag([1.0, 0.0]), atol=1e-7)


def test_sqrt_spd_rejects_negative():
    with pytest.raises(NotPSD):
        sqrt_spd(np.diag([1.0, -1.0]))


def test_inv_sqrt_spd_examples():
    assert np.allclose(inv_sqrt_spd(np.eye(2)), np.eye(2), atol=1e-14)
    assert np.allclose(
        inv_sqrt_spd(np.diag([4.0, 9.0])), np.diag([0.5, 1.0 / 3.0]), atol=1e-14
    )
    r = inv_sqrt_spd(np.array([[2.0, 1.0], [1.0, 2.0]]))
    w, _ = sym_eig(r)
    assert np.allclose(w, [1.0 / math.sqrt(3), 1.0], atol=1e-12)


def test_inv_sqrt_spd_rejects_singular():
    with pytest.raises(Singular):
        inv_sqrt_spd(np.diag([1.0, 0.0]))


def test_cross_sqrt_scalar():
    # equal scalar arguments: the square root of the product 4 * 4 is 4
    assert np.allclose(cross_sqrt(np.array([[4.0]]), np.array([[4.0]])), [[4.0]])
    assert np.allclose(cross_sqrt(np.array([[1.0]]), np.array([[4.0]])), [[2.0]])


def test_cross_sqrt_commuting_diagonal():
    si, sj = np.diag([1.0, 4.0]), np.diag([4.0, 1.0])
    m = cross_sqrt(si, sj)
    assert np.allclose(m, np.diag([2.0, 2.0]), atol=1e-12)
    # commuting inputs: symmetric and order-independent
    assert frobenius_norm(m - m.T) <= 1e-9
    assert frobenius_norm(m - cross_sqrt(sj, si)) <= 1e-9


def test_cross_sqrt_squaring_oracle(rng):
    for _ in range(20):
        si = random_spd(rng, 3)
        sj = random_spd(rng, 3)
        m = cross_sqrt(si, sj)
        prod = si @ sj
        assert frobenius_norm(m @ m - prod) <= 1e-8 * max(1.0, frobenius_norm(prod))
        # the two orders are exact transposes of each other
        assert frobenius_norm(cross_sqrt(sj, si) - m.T) <= 1e-8


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 8))
def test_spd_roundtrip_properties(seed, dim):
    rng = np.random.default_rng(seed)
    s = random_spd(rng, dim)
    scale = frobenius_norm(s)
    r = sqrt_spd(s)
    assert frobenius_norm(r @ r - s) <= 1e-9 * max(1.0, scale)
    q = inv_sqrt_spd(s)
    assert frobenius_norm(q @ s @ q - np.eye(dim)) <= 1e-8
    # equal arguments reduce to the plain SPD square root of the product
    assert frobenius_norm(cross_sqrt(s, s) - s) <= 1e-9 * max(1.0, scale**2)
    assert frobenius_norm(cross_sqrt(s, s) - sqrt_spd(s @ s)) <= 1e-9 * max(1.0, scale**2)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
def test_cross_sqrt_commuting_property(seed, dim):
    rng = np.random.default_rng(seed)
    # simultaneously diagonal pair: commuting by construction
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    si = (q * rng.uniform(0.1, 10.0, dim)) @ q.T
    sj = (q * rng.uniform(0.1, 10.0, dim)) @ q.T
    si, sj = 0.5 * (si + si.T), 0.5 * (sj + sj.T)
    m = cross_sqrt(si, sj)
    assert frobenius_norm(m - m.T) <= 1e-9 * max(1.0, frobenius_norm(m))
    assert frobenius_norm(m - cross_sqrt(sj, si)) <= 1e-9 * max(1.0, frobenius_norm(m))
