"""Closed-form classical and quantum bounds, and the quantum/classical ratio."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .lhv import MaxResult
from .quantum import Scenario

VIOLATION_TOL = 1e-9
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class ClosedForm:
    value: float
    clause: str


def generic_classical_bound(parties: int, d: int) -> ClosedForm:
    """LHV upper bound of the generic (nu = 0) Bell function.

    Odd d and the bipartite case give d - 1.  Otherwise the N-parity formula
    d (2^(-N/2) + 1/2) - 1 for even N and d (2^(-(N+1)/2) + 1/2) - 1 for odd N,
    which is 3d/4 - 1 at N = 3.
    """
    if parties < 2 or d < 2:
        raise ValueError("need N >= 2 and d >= 2")
    if d % 2:
        return ClosedForm(d - 1.0, "odd-d")
    if parties == 2:
        return ClosedForm(d - 1.0, "bipartite")
    exponent = parties / 2 if parties % 2 == 0 else (parties + 1) / 2
    clause = "even-d, even-N" if parties % 2 == 0 else "even-d, odd-N"
    return ClosedForm(d * (2.0**-exponent + 0.5) - 1, clause)


def binom(a: int, b) -> int:
    """Binomial coefficient that is 0 for negative, non-integer or too-large b."""
    b = Fraction(b)
    if b.denominator != 1 or b < 0 or b > a:
        return 0
    return math.comb(a, int(b))


def cot(x: float) -> float:
    # the arguments pi (2k+1) / 4d are never multiples of pi
    if math.isclose(math.sin(x), 0.0, abs_tol=1e-15):
        raise ValueError(f"cotangent undefined at {x}")
    return 1.0 / math.tan(x)


def b_coeff(n: int, k: int, d: int) -> float:
    """(-1)^k C(n, (n-1-2k)/2) cot(pi (2k+1) / 4d)."""
    c = binom(n, Fraction(n - 1 - 2 * k, 2))
    if c == 0:
        return 0.0
    return (-1) ** k * c * cot(math.pi * (2 * k + 1) / (4 * d))


def variant_quarter_bound(parties: int, d: int) -> float:
    """LHV bound of the nu = 1/4 variant.

    Odd N: 2^(1-N) sum_{k=0}^{(N-1)/2} b_{N,k} - 1.
    Even N: 2^(-N) (sum_{k=0}^{(N-2)/2} b_{N+1,k} + b_{N+1,N/2}) - 1.
    Cotangent arguments pass pi/2 once 2k+1 > 2d (e.g. N = 4, d = 2) and are
    used as printed; exhaustive search agrees on every case it can reach.
    """
    if parties < 2 or d < 2:
        raise ValueError("need N >= 2 and d >= 2")
    N = parties
    if N % 2:
        total = sum(b_coeff(N, k, d) for k in range((N - 1) // 2 + 1))
        return total / 2 ** (N - 1) - 1
    total = sum(b_coeff(N + 1, k, d) for k in range((N - 2) // 2 + 1)) + b_coeff(N + 1, N // 2, d)
    return total / 2**N - 1


def bipartite_quarter_bound(d: int) -> float:
    """(3 cot(pi/4d) - cot(3 pi/4d)) / 4 - 1, the N = 2 case written out."""
    return (3 * cot(math.pi / (4 * d)) - cot(3 * math.pi / (4 * d))) / 4 - 1


def closed_form_bound(s: Scenario) -> ClosedForm | None:
    """Closed form for the scenario, or None when only search applies."""
    if s.nu == 0:
        return generic_classical_bound(s.parties, s.dim)
    if s.nu == QUARTER:
        return ClosedForm(variant_quarter_bound(s.parties, s.dim), "variant-1/4")
    return None


def quantum_bound(d: int) -> float:
    if d < 2:
        raise ValueError("need d >= 2")
    return d - 1.0


def qcr(s: Scenario, classical: float, quantum: float) -> float:
    if not classical > 0:
        raise ValueError(f"classical bound for {s} is {classical}, QCR needs a positive bound")
    return quantum / classical


@dataclass
class BoundsReport:
    """Everything known about one scenario, with a method tag per number.

    Provenance tags: closed-form, brute-exhaustive, brute-sampled,
    ghz-state, eigensolve, paper-constant.
    """

    scenario: Scenario
    classical_closed: float | None
    classical_brute: MaxResult | None
    quantum_expectation: float
    quantum_max_eigenvalue: float | None
    quantum_bound: float
    qcr: float
    violated: bool
    closed_clause: str | None = None
    classical_match: bool | None = None
    verified_by_enumeration: bool = False
    provenance: dict = field(default_factory=dict)
    timing_ms: dict = field(default_factory=dict)

    @property
    def classical_used(self) -> float:
        if self.classical_closed is not None:
            return self.classical_closed
        return self.classical_brute.max_value


def build_report(
    s: Scenario,
    closed: ClosedForm | None,
    brute: MaxResult | None,
    quantum: float,
    quantum_tag: str,
    max_eig: float | None = None,
    timing_ms: dict | None = None,
) -> BoundsReport:
    """Assemble a report; the closed form, when present, is the reference bound."""
    if closed is None and brute is None:
        raise ValueError(f"no classical bound available for {s}")
    prov = {"quantum.bound": "paper-constant", "quantum.expectation": quantum_tag}
    if max_eig is not None:
        prov["quantum.max_eigenvalue"] = "eigensolve"
    if closed is not None:
        prov["classical.closed"] = "closed-form"
    if brute is not None:
        prov["classical.brute"] = "brute-exhaustive" if brute.exhaustive else "brute-sampled"
    classical_tag = prov["classical.closed" if closed is not None else "classical.brute"]
    classical = closed.value if closed is not None else brute.max_value
    prov["qcr"] = {"classical": classical_tag, "quantum": quantum_tag}
    match = None
    if closed is not None and brute is not None:
        match = abs(closed.value - brute.max_value) <= VIOLATION_TOL
    return BoundsReport(
        scenario=s,
        classical_closed=None if closed is None else closed.value,
        classical_brute=brute,
        quantum_expectation=quantum,
        quantum_max_eigenvalue=max_eig,
        quantum_bound=quantum_bound(s.dim),
        qcr=qcr(s, classical, quantum),
        violated=quantum > classical + VIOLATION_TOL,
        closed_clause=None if closed is None else closed.clause,
        classical_match=match,
        verified_by_enumeration=brute is not None and brute.exhaustive,
        provenance=prov,
        timing_ms=timing_ms or {},
    )
