"""Exact scalar and cyclotomic integer arithmetic."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylgroupoid.exactnum import (
    CycInteger,
    ScalarWorkspace,
    WorkspaceMismatch,
    cyclotomic_polynomial,
    format_scalar,
    get_ring,
    mult_order,
    parse_scalar,
    q_number_is_zero,
    solve_pow_eq,
)


def space(m=12, params=("q", "r")):
    return ScalarWorkspace(m, params)


# -- spec examples -------------------------------------------------------------


def test_mul_inverse_pair():
    sp = space()
    a = sp.scalar(1)
    b = sp.scalar(sp.torsion_order - 1)
    assert (a * b).is_one


def test_mul_adds_free_exponents():
    sp = space()
    q = sp.param("q")
    assert q * q**2 == q**3


def test_zeta3_squared():
    sp = ScalarWorkspace(3)
    z = sp.zeta()
    assert z * z == sp.scalar(2)


def test_pow_examples():
    sp = space(4, ("q",))
    q = sp.param("q")
    assert (q**0).is_one
    a = sp.scalar(2, (1,))
    assert a**3 == sp.scalar(2, (3,))  # torsion 6 mod 4 = 2
    assert q**-1 == sp.scalar(0, (-1,))


def test_mult_order_examples():
    sp = ScalarWorkspace(6, ("q",))
    assert mult_order(sp.one()) == 1
    assert mult_order(sp.scalar(2)) == 3  # zeta_6^2 = zeta_3
    assert mult_order(sp.param("q")) is None


def test_q_number_examples():
    sp = ScalarWorkspace(3, ("q",))
    assert q_number_is_zero(3, sp.zeta())  # 1 + z3 + z3^2 = 0
    assert not q_number_is_zero(5, sp.one())  # char 0: (5)_1 = 5
    assert not q_number_is_zero(2, sp.param("q"))


def test_solve_pow_eq_examples():
    sp = ScalarWorkspace(3, ("q",))
    q = sp.param("q")
    assert solve_pow_eq(q, q**-1, 10) == 1
    assert solve_pow_eq(q, q, None) is None
    z = sp.zeta()
    assert solve_pow_eq(z, z, 10) == 2


def test_solve_pow_eq_bounded():
    sp = ScalarWorkspace(1, ("q",))
    q = sp.param("q")
    assert solve_pow_eq(q, q**-5, 4) is None
    assert solve_pow_eq(q, q**-5, 5) == 5


def test_workspace_mismatch():
    with pytest.raises(WorkspaceMismatch):
        ScalarWorkspace(2).one() * ScalarWorkspace(4).one()


# -- group laws (property tests) ------------------------------------------------

scalars = st.builds(
    lambda t, e1, e2: space().scalar(t, (e1, e2)),
    st.integers(0, 11),
    st.integers(-6, 6),
    st.integers(-6, 6),
)


@given(scalars, scalars, scalars)
def test_mul_associative_commutative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(scalars, st.integers(-8, 8), st.integers(-8, 8))
def test_pow_additive(a, j, k):
    assert a**j * a**k == a ** (j + k)


@given(scalars)
def test_order_annihilates(a):
    order = a.mult_order()
    if order is not None:
        assert (a**order).is_one
        for d in range(1, order):
            assert not (a**d).is_one or order == 1


@given(st.integers(1, 24), scalars)
def test_q_number_iff_order_divides(r, q):
    order = q.mult_order()
    expect = order is not None and order > 1 and r % order == 0
    assert q_number_is_zero(r, q) is expect


@given(scalars, scalars)
def test_solve_pow_eq_is_minimal(a, b):
    k = solve_pow_eq(a, b, 64)
    if k is None:
        for j in range(65):
            assert not (a**j * b).is_one
    else:
        assert (a**k * b).is_one
        for j in range(k):
            assert not (a**j * b).is_one


# -- literals --------------------------------------------------------------------


def test_literal_round_trip():
    sp = space()
    for s in [sp.one(), sp.minus_one(), sp.zeta(5), sp.param("q", -3) * sp.zeta(2)]:
        assert parse_scalar(format_scalar(s), sp) == s


def test_literal_forms():
    sp = space()
    assert parse_scalar("z^2 * q^-1 * r^3", sp) == sp.scalar(2, (-1, 3))
    assert parse_scalar("-1", sp) == sp.minus_one()
    assert parse_scalar("1", sp) == sp.one()
    with pytest.raises(ValueError):
        parse_scalar("bogus", sp)


# -- cyclotomic integers ----------------------------------------------------------


def _poly_mul_mod(a, b, phi):
    """Independent oracle: schoolbook product, long division by Phi."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    d = len(phi) - 1
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if not c:
            continue
        for j in range(d + 1):
            out[k - d + j] -= c * phi[j]
    return out[:d]


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@settings(max_examples=60)
@given(
    st.sampled_from([3, 4, 6, 8, 12, 24]),
    st.lists(st.integers(-5, 5), min_size=1, max_size=8),
    st.lists(st.integers(-5, 5), min_size=1, max_size=8),
    st.lists(st.integers(-5, 5), min_size=1, max_size=8),
)
def test_ring_laws_against_polynomial_oracle(order, xs, ys, zs):
    ring = get_ring(order)
    d = ring.degree
    phi = cyclotomic_polynomial(order)

    def make(cs):
        cs = (cs + [0] * d)[:d]
        return CycInteger(order, tuple(cs))

    a, b, c = make(xs), make(ys), make(zs)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    want = _poly_mul_mod(list(a.coeffs), list(b.coeffs), list(phi))
    assert list((a * b).coeffs) == want


def test_minus_two_cos_values():
    # -2cos(pi/m) for m = 2, 3 are 0 and -1; evaluate numerically for m = 4, 6
    ring = get_ring(24)
    for m, val in [(2, 0.0), (3, -1.0), (4, -np.sqrt(2)), (6, -np.sqrt(3))]:
        vec = ring.minus_two_cos_pi_over(m)
        zeta = np.exp(2j * np.pi / 24)
        approx = sum(int(c) * zeta**k for k, c in enumerate(vec))
        assert abs(approx - val) < 1e-9


def test_root_power_agrees_with_evaluation():
    ring = get_ring(12)
    zeta = np.exp(2j * np.pi / 12)
    for k in range(12):
        vec = ring.root_power_vec(k)
        approx = sum(int(c) * zeta**j for j, c in enumerate(vec))
        assert abs(approx - zeta**k) < 1e-9


def test_mat_mul_matches_entrywise_products():
    ring = get_ring(8)
    rng = np.random.default_rng(0)
    a = rng.integers(-3, 4, size=(3, 3, ring.degree)).astype(np.int64)
    b = rng.integers(-3, 4, size=(3, 3, ring.degree)).astype(np.int64)
    c = ring.mat_mul(a, b)
    for i in range(3):
        for j in range(3):
            acc = ring.zero_vec()
            for k in range(3):
                acc = acc + ring.mul_vec(a[i, k], b[k, j])
            assert np.array_equal(c[i, j], acc)
