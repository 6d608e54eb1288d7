import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from akrvoro import (
    DomainError,
    Function1D,
    akr_apply,
    akr_node,
    bernstein_apply,
    build_node_table,
    fixed_point_error,
    lookup,
    remainder,
)

mp.mp.dps = 50


def test_akr_node_frozen_values():
    assert akr_node(2, 1, 2) == 0.0
    assert akr_node(5, 5, 2) == 1.0
    assert akr_node(4, 2, 2) == pytest.approx(math.sqrt(1.0 / 6.0), rel=1e-15)
    # j = 3: (3*2*1 / (6*5*4))^(1/3)
    assert akr_node(6, 3, 3) == pytest.approx(float(mp.cbrt(mp.mpf(6) / 120)), rel=1e-14)


def test_akr_node_domain_errors():
    with pytest.raises(DomainError):
        akr_node(1, 0, 2)
    with pytest.raises(DomainError):
        akr_node(4, 5, 2)
    with pytest.raises(DomainError):
        akr_node(4, -1, 2)
    with pytest.raises(DomainError):
        akr_node(4, 2, 1)


def test_build_node_table_frozen_values():
    assert list(build_node_table(2, 2).nodes) == [0.0, 0.0, 1.0]
    assert list(build_node_table(3, 3).nodes) == [0.0, 0.0, 0.0, 1.0]
    t4 = build_node_table(4, 2).nodes
    expected = [0.0, 0.0, math.sqrt(1.0 / 6.0), math.sqrt(0.5), 1.0]
    np.testing.assert_allclose(t4, expected, rtol=1e-15, atol=0.0)


@pytest.mark.parametrize("n", [2, 5, 16, 257, 1024, 4096])
@pytest.mark.parametrize("j", [2, 3, 5])
def test_node_table_invariants(n, j):
    if n < j:
        pytest.skip("n < j")
    table = build_node_table(n, j)
    nodes = table.nodes
    assert np.all(nodes[:j] == 0.0)
    assert nodes[n] == 1.0
    assert np.all(np.diff(nodes) >= 0.0)
    assert np.all((nodes >= 0.0) & (nodes <= 1.0))
    assert akr_node(n, n // 2, j) == pytest.approx(nodes[n // 2], rel=1e-14, abs=0.0)


def test_node_drift_bounds_small_degrees():
    # 0 <= k/n - t <= 1/n for j = 2, checked exhaustively through n = 512
    for n in range(2, 513):
        k = np.arange(n + 1)
        drift = k / n - build_node_table(n, 2).nodes
        assert drift.min() >= -1e-15
        assert (drift - 1.0 / n).max() <= 1e-15


def test_remainder_frozen_values():
    assert remainder(4, 0) == -0.125
    assert remainder(2, 2) == 0.0
    assert remainder(4, 1) == 0.15625


def test_remainder_vector_matches_scalar():
    r = remainder(9, np.arange(10))
    for k in range(10):
        assert r[k] == remainder(9, k)


def test_remainder_domain_errors():
    with pytest.raises(DomainError):
        remainder(1, 0)
    with pytest.raises(DomainError):
        remainder(4, 5)
    with pytest.raises(DomainError):
        remainder(4, -1)


def test_remainder_endpoint_and_sign_sweep():
    for n in range(2, 513):
        r = remainder(n, np.arange(n + 1))
        expected = -1.0 / (2.0 * n)
        assert abs(r[0] - expected) <= np.spacing(abs(expected))
        assert r[1:].min() >= -1e-15
        assert r[n] == 0.0


def test_node_and_remainder_paths_are_consistent():
    # nodes computed in the log domain, remainder from its four-term form;
    # t = k/n - 1/(2n) + k/(2 n^2) - R ties them together
    for n in range(2, 2049):
        k = np.arange(n + 1, dtype=np.float64)
        nodes = build_node_table(n, 2).nodes
        reconstructed = k / n - 1.0 / (2.0 * n) + k / (2.0 * n * n) - remainder(
            n, np.arange(n + 1)
        )
        assert np.max(np.abs(nodes - reconstructed)) <= 1e-14


def test_akr_apply_frozen_values():
    const1 = lookup("const1").function
    e1 = lookup("e1").function
    e2 = lookup("e2").function
    assert akr_apply(const1, 8, 2, 0.3) == pytest.approx(1.0, abs=1e-14)
    assert akr_apply(e1, 2, 2, 0.5) == 0.25
    assert akr_apply(e2, 16, 2, 0.4) == pytest.approx(0.16, abs=1e-12)


def test_akr_apply_fixes_cube_for_j3():
    e3 = lookup("e3").function
    for x in (0.1, 0.5, 0.95):
        assert akr_apply(e3, 20, 3, x) == pytest.approx(x**3, abs=1e-13)


def test_akr_apply_domain_errors():
    e1 = lookup("e1").function
    with pytest.raises(DomainError):
        akr_apply(e1, 1, 2, 0.5)
    with pytest.raises(DomainError):
        akr_apply(e1, 8, 2, -0.5)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 13, 21, 32])
def test_akr_apply_against_high_precision_brute_force(n):
    e1 = lookup("e1").function
    for x in (0.1, 0.37, 0.5, 0.9):
        xm = mp.mpf(x)
        exact = mp.fsum(
            mp.binomial(n, k)
            * xm**k
            * (1 - xm) ** (n - k)
            * mp.sqrt(mp.mpf(k * (k - 1)) / (n * (n - 1)))
            for k in range(n + 1)
        )
        assert akr_apply(e1, n, 2, x) == pytest.approx(float(exact), abs=1e-13)


def test_akr_apply_equals_bernstein_apply_of_node_values():
    # sampling t at k/n reproduces the node table, so the two operators
    # must coincide on the identity
    for n in (4, 9, 32):
        nodes = build_node_table(n, 2).nodes

        def node_lookup(u, nodes=nodes, n=n):
            idx = np.rint(np.asarray(u) * n).astype(int)
            return nodes[idx]

        f = Function1D(eval=node_lookup)
        for x in (0.2, 0.55, 0.9):
            e1 = lookup("e1").function
            assert akr_apply(e1, n, 2, x) == pytest.approx(
                bernstein_apply(f, n, x), abs=1e-13
            )


def test_fixed_point_error_values():
    assert fixed_point_error(2, 2, 11) <= 1e-13
    assert fixed_point_error(64, 2, 101) <= 1e-12
    assert fixed_point_error(64, 3, 101) <= 1e-12
    with pytest.raises(DomainError):
        fixed_point_error(4, 2, 1)


@given(
    n=st.integers(min_value=2, max_value=2000),
    j=st.integers(min_value=2, max_value=6),
    frac=st.floats(min_value=0.0, max_value=1.0),
)
@settings(max_examples=100, deadline=None)
def test_akr_node_stays_in_unit_interval(n, j, frac):
    if n < j:
        n = j
    k = int(round(frac * n))
    t = akr_node(n, k, j)
    assert 0.0 <= t <= 1.0


@given(n=st.integers(min_value=2, max_value=3000))
@settings(max_examples=60, deadline=None)
def test_remainder_nonnegative_property(n):
    r = remainder(n, np.arange(1, n + 1))
    assert r.min() >= -1e-15
