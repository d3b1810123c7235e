import math

import pytest
from hypothesis import given, strategies as st

from quditbell.bounds import (
    b_coeff,
    binom,
    bipartite_quarter_bound,
    build_report,
    closed_form_bound,
    generic_classical_bound,
    qcr,
    quantum_bound,
    variant_quarter_bound,
)
from quditbell.lhv import brute_force_max
from quditbell.linalg import max_hermitian_eigenvalue
from quditbell.quantum import Scenario, bell_operator

SQRT2 = math.sqrt(2)


def test_generic_bound_examples():
    assert generic_classical_bound(3, 4).value == pytest.approx(2)
    assert generic_classical_bound(5, 2).value == pytest.approx(2 * (1 / 8 + 1 / 2) - 1)
    assert generic_classical_bound(5, 2).value == pytest.approx(0.25)
    assert generic_classical_bound(3, 5).value == 4
    assert generic_classical_bound(3, 5).clause == "odd-d"
    assert generic_classical_bound(2, 4).clause == "bipartite"
    assert generic_classical_bound(4, 2).clause == "even-d, even-N"


@pytest.mark.parametrize("d", range(2, 20, 2))
def test_generic_bound_n3_is_three_quarters(d):
    assert generic_classical_bound(3, d).value == pytest.approx(3 * d / 4 - 1)


def test_b_coeff_examples():
    # oracle: the printed formula by hand; cot(pi/8) = 1 + sqrt 2, cot(3 pi/8) = sqrt 2 - 1
    assert b_coeff(3, 0, 2) == pytest.approx(3 * (1 + SQRT2))
    assert b_coeff(3, 0, 2) == pytest.approx(7.2426, abs=1e-4)
    assert b_coeff(3, 1, 2) == pytest.approx(-(SQRT2 - 1))
    assert b_coeff(3, 1, 2) == pytest.approx(-0.4142, abs=1e-4)


def test_binomial_convention():
    assert binom(5, 2) == 10
    assert binom(5, -1) == 0
    assert binom(5, 6) == 0
    assert binom(4, 0.5) == 0
    assert b_coeff(4, 0, 3) == 0  # (4 - 1)/2 is not an integer


@given(st.integers(1, 12), st.integers(0, 5), st.integers(2, 10))
def test_b_coeff_sign_alternation(n, k, d):
    a, b = b_coeff(n, k, d), b_coeff(n, k + 1, d)
    cots_positive = (2 * k + 3) < 2 * d
    if a != 0 and b != 0 and cots_positive:
        assert a * b <= 0


def test_variant_quarter_examples():
    assert variant_quarter_bound(2, 2) == pytest.approx(1 / SQRT2)
    assert variant_quarter_bound(3, 2) == pytest.approx((7.2426 - 0.4142) / 4 - 1, abs=1e-4)
    assert variant_quarter_bound(3, 2) == pytest.approx(1 / SQRT2)
    assert variant_quarter_bound(2, 3) == pytest.approx((1 + 3 * math.sqrt(3)) / 4)
    assert variant_quarter_bound(2, 3) == pytest.approx(1.5490, abs=1e-4)
    # oracle: exhaustive search over the 3^4 strategies
    assert brute_force_max(Scenario(2, 3, "1/4")).max_value == pytest.approx(variant_quarter_bound(2, 3), abs=1e-9)
    assert brute_force_max(Scenario(3, 2, "1/4")).max_value == pytest.approx(variant_quarter_bound(3, 2), abs=1e-9)


@pytest.mark.parametrize("d", range(2, 13))
def test_even_formula_reproduces_bipartite_form(d):
    assert abs(variant_quarter_bound(2, d) - bipartite_quarter_bound(d)) <= 1e-12


def test_quantum_bound():
    assert quantum_bound(2) == 1
    assert quantum_bound(6) == 5
    for d in (2, 3, 4):
        assert max_hermitian_eigenvalue(bell_operator(Scenario(3, d))) == pytest.approx(quantum_bound(d), abs=1e-9)


def test_qcr_examples():
    chsh = Scenario(2, 2, "1/4")
    assert qcr(chsh, variant_quarter_bound(2, 2), 1) == pytest.approx(SQRT2)
    # oracle: (d - 1) / (3d/4 - 1) at d = 2
    assert qcr(Scenario(3, 2), generic_classical_bound(3, 2).value, 1) == pytest.approx(1 / 0.5)
    q = [qcr(Scenario(3, d), generic_classical_bound(3, d).value, d - 1) for d in (2, 4, 6)]
    assert q[2] == pytest.approx(5 / 3.5)
    assert q[0] > q[1] > q[2]
    with pytest.raises(ValueError):
        qcr(chsh, 0.0, 1)


def test_closed_form_dispatch():
    assert closed_form_bound(Scenario(3, 4)).value == pytest.approx(2)
    assert closed_form_bound(Scenario(3, 4, "1/4")).clause == "variant-1/4"
    assert closed_form_bound(Scenario(3, 4, "1/3")) is None


@pytest.mark.parametrize("N", range(2, 9))
@pytest.mark.parametrize("d", range(2, 13))
def test_violation_pattern(N, d):
    generic = generic_classical_bound(N, d).value
    assert (d - 1 > generic + 1e-9) == (d % 2 == 0 and N >= 3)
    assert 0 < variant_quarter_bound(N, d) < d - 1 - 1e-9


def test_report_prefers_closed_form():
    s = Scenario(3, 4)
    brute = brute_force_max(s)
    r = build_report(s, closed_form_bound(s), brute, 3.0, "ghz-state", max_eig=3.0)
    assert r.classical_match is True
    assert r.verified_by_enumeration
    assert r.qcr == pytest.approx(1.5)
    assert r.violated
    assert r.provenance["classical.brute"] == "brute-exhaustive"
    assert r.provenance["quantum.max_eigenvalue"] == "eigensolve"
    with pytest.raises(ValueError):
        build_report(s, None, None, 3.0, "ghz-state")
