import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_state
from quditbell.errors import DimensionLimitError
from quditbell.linalg import dagger, expectation, identity, kron, matpow
from quditbell.quantum import (
    Scenario,
    bell_operator,
    bell_value_correlator_form,
    correlation,
    fourier_matrix,
    ghz_state,
    local_phase_unitary,
    observable,
    omega,
    optimal_state,
    parse_rational,
    phase_shift,
    raising_operator,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
DIMS = range(2, 9)


def test_omega_values():
    assert omega(2, 1) == pytest.approx(-1)
    # omega = exp(-2 pi i / d): the half power at d = 2 is -i
    assert omega(2, Fraction(1, 2)) == pytest.approx(-1j)
    # oracle: direct complex exponentiation
    assert omega(4, Fraction(1, 2)) ** 4 == pytest.approx(cmath.exp(-1j * math.pi / 4) ** 4)
    assert omega(4, Fraction(1, 2)) ** 4 == pytest.approx(-1)


def test_omega_exact_reduction_for_large_exponents():
    assert omega(7, Fraction(10**15 * 7 + 1, 4)) == pytest.approx(omega(7, Fraction(1, 4)), abs=1e-15)


def test_fourier_d2():
    np.testing.assert_allclose(fourier_matrix(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("d", DIMS)
def test_fourier_unitary(d):
    F = fourier_matrix(d)
    np.testing.assert_allclose(F @ dagger(F), identity(d), atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(F, axis=0), 1, atol=1e-12)
    # column alpha is the A-eigenvector (1/sqrt d) sum_beta omega^(-alpha beta) |beta>
    for a in range(d):
        col = np.array([omega(d, -a * b) for b in range(d)]) / np.sqrt(d)
        np.testing.assert_allclose(F[:, a], col, atol=1e-14)


def test_phase_shift():
    np.testing.assert_array_equal(phase_shift(5, 0), identity(5))
    # oracle: omega(2, -1/2) = exp(+i pi / 2)
    np.testing.assert_allclose(phase_shift(2, Fraction(1, 2)), np.diag([1, 1j]), atol=1e-15)
    for d in DIMS:
        np.testing.assert_allclose(matpow(phase_shift(d, 1), d), identity(d), atol=1e-12)


def test_qubit_observables_are_pauli():
    np.testing.assert_allclose(observable(2, "A").matrix, SX, atol=1e-12)
    np.testing.assert_allclose(observable(2, "B").matrix, SY, atol=1e-12)


@pytest.mark.parametrize("d", DIMS)
@pytest.mark.parametrize("label", "AB")
def test_observable_maximal_test(d, label):
    obs = observable(d, label)
    m = obs.matrix
    np.testing.assert_allclose(m @ dagger(m), identity(d), atol=1e-12)
    np.testing.assert_allclose(matpow(m, d), identity(d), atol=1e-10)
    np.testing.assert_allclose(m @ obs.eigenbasis, obs.eigenbasis * obs.eigenvalues, atol=1e-12)
    roots = np.linalg.eigvals(m)
    expected = np.exp(2j * np.pi * np.arange(d) / d)
    assert np.abs(roots[:, None] - expected[None, :]).min(axis=0).max() < 1e-10
    assert min(abs(x - y) for x, y in itertools.combinations(roots, 2)) > 0.1


def test_observable_label_checked():
    with pytest.raises(ValueError):
        observable(3, "C")


def test_ghz_examples():
    np.testing.assert_allclose(ghz_state(2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))
    psi = ghz_state(3, 3)
    expected = np.zeros(27)
    expected[[0, 13, 26]] = 1 / np.sqrt(3)
    np.testing.assert_allclose(psi, expected)
    for N, d in itertools.product(range(2, 6), range(2, 6)):
        psi = ghz_state(N, d)
        assert np.linalg.norm(psi) == pytest.approx(1)
        assert np.count_nonzero(psi) == d
    with pytest.raises(DimensionLimitError):
        ghz_state(13, 2)


def test_raising_d2():
    np.testing.assert_array_equal(raising_operator(2), np.array([[0, 0], [1, 0]]))


@pytest.mark.parametrize("d", DIMS)
def test_raising_operator_from_observables(d):
    A, B, J = observable(d, "A").matrix, observable(d, "B").matrix, raising_operator(d)
    half = omega(d, Fraction(1, 2))
    np.testing.assert_allclose((A + half * B) / 2, J, atol=1e-12)
    for n in range(1, d):
        np.testing.assert_allclose((matpow(A, n) + half**n * matpow(B, n)) / 2, matpow(J, n), atol=1e-12)


def test_bell_operator_reduces_to_mermin():
    X, Y = SX, SY
    mermin = (kron(kron(X, X), X) - kron(kron(X, Y), Y) - kron(kron(Y, X), Y) - kron(kron(Y, Y), X)) / 4
    np.testing.assert_allclose(bell_operator(Scenario(3, 2)), mermin, atol=1e-12)


def test_bell_operator_ghz_expectation_d6():
    assert expectation(ghz_state(3, 6), bell_operator(Scenario(3, 6))) == pytest.approx(5, abs=1e-9)


@pytest.mark.parametrize("N,d,nu", [(2, 3, "1/4"), (3, 2, "1/4"), (3, 4, "1/3"), (2, 5, "2/7"), (4, 2, "1/2")])
def test_variant_is_local_phase_conjugate(N, d, nu):
    s = Scenario(N, d, nu)
    U = np.kron(identity(d ** (N - 1)), phase_shift(d, s.nu))
    np.testing.assert_allclose(local_phase_unitary(s), U)
    np.testing.assert_allclose(bell_operator(s), dagger(U) @ bell_operator(Scenario(N, d)) @ U, atol=1e-11)


@pytest.mark.parametrize("N", [2, 3, 4])
@pytest.mark.parametrize("d", range(2, 7))
def test_ghz_is_eigenvector(N, d):
    if d**N > 4096:
        pytest.skip("beyond dimension cap")
    s = Scenario(N, d)
    psi = ghz_state(N, d)
    np.testing.assert_allclose(bell_operator(s) @ psi, (d - 1) * psi, atol=1e-9)


@pytest.mark.parametrize("N,d", [(2, 3), (3, 2), (3, 3), (2, 5), (4, 2)])
def test_spectrum_independent_of_nu(N, d):
    base = np.linalg.eigvalsh(bell_operator(Scenario(N, d)))
    for nu in ("1/4", "1/3", "5/2"):
        np.testing.assert_allclose(np.linalg.eigvalsh(bell_operator(Scenario(N, d, nu))), base, atol=1e-9)


def test_optimal_state_examples():
    np.testing.assert_array_equal(optimal_state(Scenario(3, 3)), ghz_state(3, 3))
    for N, d in [(2, 2), (3, 4)]:
        s = Scenario(N, d, "1/4")
        assert expectation(optimal_state(s), bell_operator(s)).real == pytest.approx(d - 1, abs=1e-9)


def test_correlation_mermin_aaa():
    # oracle: <sigma_x sigma_x sigma_x> on (|000> + |111>)/sqrt 2
    psi = ghz_state(3, 2)
    assert expectation(psi, kron(kron(SX, SX), SX)) == pytest.approx(1)
    assert correlation(psi, "AAA", 1) == pytest.approx(1)


@pytest.mark.parametrize("d", range(2, 7))
def test_correlation_fold_identity(d):
    psi = ghz_state(3, d)
    for settings in itertools.product("AB", repeat=3):
        for n in range(1, d):
            e = correlation(psi, settings, n)
            assert abs(e) <= 1 + 1e-10
            assert correlation(psi, settings, d - n) == pytest.approx(np.conj(e), abs=1e-10)


def test_correlation_matches_full_operator(rng):
    d = 3
    psi = random_state(d**3, rng)
    for settings in ("ABA", "BBB"):
        ops = [matpow(observable(d, v).matrix, 2) for v in settings]
        full = kron(kron(ops[0], ops[1]), ops[2])
        assert correlation(psi, settings, 2) == pytest.approx(expectation(psi, full), abs=1e-12)


def test_correlation_factorizes_on_product_states(rng):
    d = 4
    parts = [random_state(d, rng) for _ in range(3)]
    psi = np.kron(np.kron(parts[0], parts[1]), parts[2])
    A = observable(d, "A").matrix
    single = [expectation(p, A) for p in parts]
    e = correlation(psi, "AAA", 1)
    assert e == pytest.approx(np.prod(single), abs=1e-12)
    assert abs(e) <= 1


def test_correlation_errors():
    psi = ghz_state(3, 3)
    with pytest.raises(ValueError):
        correlation(psi, "AAA", 0)
    with pytest.raises(ValueError):
        correlation(psi, "AAA", 3)
    with pytest.raises(ValueError):
        correlation(psi, "AA", 1)


def test_correlator_form_ghz():
    assert bell_value_correlator_form(ghz_state(3, 2), 2) == pytest.approx(1)
    assert bell_value_correlator_form(ghz_state(3, 4), 4) == pytest.approx(3)
    with pytest.raises(ValueError):
        bell_value_correlator_form(np.ones(10) / np.sqrt(10), 2)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_correlator_form_equals_operator_form(d, rng):
    op = bell_operator(Scenario(3, d))
    for _ in range(20):
        psi = random_state(d**3, rng)
        assert bell_value_correlator_form(psi, d) == pytest.approx(expectation(psi, op).real, abs=1e-9)


def test_scenario_validation():
    assert Scenario(3, 4, "1/4").nu == Fraction(1, 4)
    assert Scenario(2, 2, Fraction(2, 8)) == Scenario(2, 2, "1/4")
    for bad in [(1, 2), (2, 1)]:
        with pytest.raises(ValueError):
            Scenario(*bad)
    with pytest.raises(ValueError):
        Scenario(40, 10)  # 10^80 strategies


def test_parse_rational_rejects_decimals():
    assert parse_rational("3/12") == Fraction(1, 4)
    assert parse_rational("2") == 2
    for bad in ("0.25", "1e-1"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(TypeError):
        parse_rational(0.25)


@given(st.integers(2, 5), st.integers(2, 4), st.fractions(min_value=-3, max_value=3, max_denominator=12))
def test_max_eigenvalue_is_d_minus_1(N, d, nu):
    if d**N > 256:
        return
    s = Scenario(N, d, nu)
    op = bell_operator(s)
    np.testing.assert_allclose(op, dagger(op), atol=1e-12)
    assert np.linalg.eigvalsh(op)[-1] == pytest.approx(d - 1, abs=1e-9)
    assert expectation(optimal_state(s), op).real == pytest.approx(d - 1, abs=1e-9)
