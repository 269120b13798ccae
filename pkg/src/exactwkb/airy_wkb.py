"""Exact WKB data for the Airy equation with a large parameter.

The Riccati recurrence below produces the coefficient stream S_j; each S_j is
forced by weighted homogeneity to be a single monomial c_j * x^(-(3j+2)/2).
The normalized solution pair carries the unit prefactor
eta^(-1/2) x^(-1/4) exp(+-(2/3) x^(3/2) eta) as metadata only, so every number
stored here is an exact rational.

Two independent derivations of the same coefficients are exposed: the
recurrence-driven stream (via the odd-part primitive) and the closed product
formula with Pochhammer factors.  Tests require them to agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .series import EtaExpansion, PuiseuxSeries

X_VAR = "x"
W_VAR = "w"  # shorthand for the combination eta^-1 x^-3/2

DEFAULT_ORDER = 24


def _monomial_exponent(j: int) -> Fraction:
    return Fraction(-(3 * j + 2), 2)


@dataclass(frozen=True)
class RiccatiSolution:
    """Truncated formal solution of S' + S^2 = eta^2 x.

    ``coeffs[j]`` is the rational coefficient of x^(-(3j+2)/2) in S_j for
    j = -1 .. order (index shifted by one in the tuple).
    """

    sign: str
    order: int
    coeffs: tuple[Fraction, ...]

    def coefficient(self, j: int) -> Fraction:
        if j < -1 or j > self.order:
            raise PreconditionError(f"S_{j} not computed (order {self.order})")
        return self.coeffs[j + 1]

    def term(self, j: int) -> PuiseuxSeries:
        return PuiseuxSeries.monomial(X_VAR, _monomial_exponent(j), self.coefficient(j))

    def as_expansion(self) -> EtaExpansion:
        return EtaExpansion(
            {j: self.term(j) for j in range(-1, self.order + 1)}, self.order)


def riccati_recurrence(order: int = DEFAULT_ORDER, sign: str = "+") -> RiccatiSolution:
    """Compute S_-1 .. S_order for the chosen square-root branch."""
    if order < 0:
        raise PreconditionError("order must be >= 0")
    if sign not in ("+", "-"):
        raise PreconditionError(f"sign must be '+' or '-', got {sign!r}")
    s_m1 = Fraction(1) if sign == "+" else Fraction(-1)
    coeffs = [s_m1]  # index j+1
    for j in range(-1, order):
        # coefficient of S_j' : c_j * e_j with e_j = -(3j+2)/2
        deriv = coeffs[j + 1] * _monomial_exponent(j)
        conv = Fraction(0)
        for k in range(0, j + 1):
            conv += coeffs[k + 1] * coeffs[j - k + 1]
        coeffs.append(-(deriv + conv) / (2 * s_m1))
    return RiccatiSolution(sign, order, tuple(coeffs))


def riccati_residual(solution: RiccatiSolution) -> EtaExpansion:
    """S' + S^2 - eta^2 x for the truncated S; only high eta^-1 powers survive."""
    s = solution.as_expansion()
    residual = s.d_dx() + s * s - EtaExpansion(
        {-2: PuiseuxSeries.monomial(X_VAR, 1)}, s.truncation)
    return residual


def split_odd_even(solution: RiccatiSolution) -> tuple[EtaExpansion, EtaExpansion]:
    """Split S into its odd and even eta^-1 parts (relative to the + branch).

    For the "-" branch the odd part is negated first, so that both branches
    satisfy S = sign * S_odd + S_even with a common S_odd.
    """
    if solution.order < 2:
        raise PreconditionError("need order >= 2 to split odd and even parts")
    flip = 1 if solution.sign == "+" else -1
    odd = {}
    even = {}
    for j in range(-1, solution.order + 1):
        term = solution.term(j)
        if j % 2:  # odd j, includes j = -1
            odd[j] = term * flip
        else:
            even[j] = term
    return (EtaExpansion(odd, solution.order), EtaExpansion(even, solution.order))


def check_even_is_log_derivative(s_odd: EtaExpansion, s_even: EtaExpansion) -> bool:
    """Termwise check of S_even = -(1/2) d/dx log S_odd up to the truncation."""
    candidate = (s_odd.d_dx() / s_odd).scale(Fraction(-1, 2))
    trunc = min(candidate.truncation, s_even.truncation)
    for k in range(-1, trunc + 1):
        lhs = candidate.coeff(k)
        rhs = s_even.coeff(k)
        if (lhs is None) != (rhs is None):
            return False
        if lhs is not None and not lhs.same_terms(rhs):
            return False
    return True


def integrate_s_odd(s_odd: EtaExpansion) -> EtaExpansion:
    """Primitive of S_odd with all integration constants forced to zero.

    The contour-integral normalization amounts to the plain termwise primitive
    c x^e -> c x^(e+1)/(e+1); exponent -1 never occurs here and signals
    corrupted input.
    """
    try:
        return s_odd.integrate_x()
    except PreconditionError as exc:
        raise PreconditionError(f"unexpected x^-1 term in S_odd: {exc}") from exc


@dataclass(frozen=True)
class WkbCoefficientStream:
    """Rational coefficients c_n of (eta^-1 x^-3/2)^n in the normalized solution."""

    sign: str
    coeffs: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.coeffs)


def wkb_coefficient_stream(order: int = DEFAULT_ORDER, sign: str = "+") -> WkbCoefficientStream:
    """Expand (1 + A)^(-1/2) exp(sign * B) where A, B come from the recurrence.

    A collects the even part of S_odd / (eta x^(1/2)) - 1 and B the primitive
    of the odd tail; both are series in w = eta^-1 x^-3/2 with rational
    coefficients, so the result is exact.
    """
    if order < 0:
        raise PreconditionError("order must be >= 0")
    if sign not in ("+", "-"):
        raise PreconditionError(f"sign must be '+' or '-', got {sign!r}")
    source = riccati_recurrence(max(order, 1), "+")
    trunc = Fraction(order + 1)
    a_terms = {}
    b_terms = {}
    for j in range(1, source.order + 1, 2):
        c = source.coefficient(j)
        # eta^-j S_j / (eta x^(1/2)) = c * w^(j+1)
        if j + 1 <= order:
            a_terms[Fraction(j + 1)] = c
        # primitive of eta^-j S_j is (c/(e_j+1)) x^(e_j+1) = b_j w^j
        if j <= order:
            b_terms[Fraction(j)] = c / (_monomial_exponent(j) + 1)
    a_series = PuiseuxSeries(W_VAR, a_terms, trunc)
    b_series = PuiseuxSeries(W_VAR, b_terms, trunc)
    one_plus_a = PuiseuxSeries.one(W_VAR, trunc) + a_series
    amplitude = one_plus_a.inv_sqrt()
    phase = b_series if sign == "+" else -b_series
    stream = amplitude * phase.exp()
    coeffs = []
    for n in range(order + 1):
        c = stream.coeff(Fraction(n))
        if not c.is_rational():
            raise PreconditionError("coefficient stream left the rationals")
        coeffs.append(c.a)
    return WkbCoefficientStream(sign, tuple(coeffs))


def closed_form_coefficients(order: int, sign: str = "+") -> list[Fraction]:
    """Coefficients (sign * 3/4)^n (1/6)_n (5/6)_n / n! of the normalized solution.

    The reflection identity Gamma(1/6) Gamma(5/6) = 2 pi cancels the 1/(2 pi)
    prefactor of the explicit solution formula, which is why the values are
    plain rationals.
    """
    if order < 0:
        raise PreconditionError("order must be >= 0")
    if sign not in ("+", "-"):
        raise PreconditionError(f"sign must be '+' or '-', got {sign!r}")
    ratio = Fraction(3, 4) if sign == "+" else Fraction(-3, 4)
    out = [Fraction(1)]
    for n in range(1, order + 1):
        # (1/6)_n (5/6)_n / n! grows by (n-1+1/6)(n-1+5/6)/n per step
        step = ratio * (Fraction(1, 6) + n - 1) * (Fraction(5, 6) + n - 1) / n
        out.append(out[-1] * step)
    return out
