"""Exact normal-ordered arithmetic in the Weyl algebra of (x1, x2, eta).

Monomials are kept in normal order x1^a x2^b eta^c d1^d d2^e deta^f with
rational coefficients; products are reduced with the commutation rules
[d_i, x_i] = 1, [d_eta, eta] = 1 (all other pairs commute).  The eta exponent
may be negative (localization at eta); the falling-factorial reduction rule is
valid there as well, but every shipped identity is verified in eta-cleared
polynomial form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import PreconditionError

# exponent order: (x1, x2, eta, d1, d2, d_eta)
Monomial = tuple[int, int, int, int, int, int]

_NAMES = ("x1", "x2", "eta", "d1", "d2", "deta")


def _falling(c: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= c - i
    return out


class WeylElement:
    """A finite rational combination of normal-ordered monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if any(e < 0 for i, e in enumerate(mono) if i != 2):
                raise PreconditionError("only eta may carry negative exponents")
            clean[tuple(mono)] = clean.get(tuple(mono), Fraction(0)) + coeff
        self.terms = {m: c for m, c in sorted(clean.items()) if c != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def monomial(cls, x1=0, x2=0, eta=0, d1=0, d2=0, deta=0, coeff=1) -> "WeylElement":
        return cls({(x1, x2, eta, d1, d2, deta): Fraction(coeff)})

    @classmethod
    def scalar(cls, coeff) -> "WeylElement":
        return cls.monomial(coeff=coeff)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    # -- linear structure ------------------------------------------------------

    def __add__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(other)
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, Fraction(0)) + c
        return WeylElement(merged)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "WeylElement":
        return (-self) + other

    def __mul__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            return WeylElement({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for mono, coeff in _monomial_product(m1, m2):
                    key = mono
                    out[key] = out.get(key, Fraction(0)) + c1 * c2 * coeff
        return WeylElement(out)

    def __rmul__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "WeylElement":
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("operator power expects a nonnegative integer")
        out = WeylElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    # -- action on polynomials ----------------------------------------------

    def apply_to(self, poly: dict[tuple[int, int, int], Fraction]) -> dict:
        """Act on a Laurent-in-eta polynomial sum of x1^p x2^q eta^r terms."""
        out: dict[tuple[int, int, int], Fraction] = {}
        for (a, b, c, d, e, f), coeff in self.terms.items():
            for (p, q, r), pc in poly.items():
                if d > p or e > q:
                    continue
                factor = (Fraction(_falling(p, d)) * _falling(q, e)
                          * _falling(r, f))
                if factor == 0:
                    continue
                key = (p - d + a, q - e + b, r - f + c)
                out[key] = out.get(key, Fraction(0)) + coeff * pc * factor
        return {k: v for k, v in out.items() if v != 0}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.terms.items():
            factors = [f"{n}^{e}" if e != 1 else n
                       for n, e in zip(_NAMES, mono) if e != 0]
            body = "*".join(factors) if factors else "1"
            parts.append(f"{coeff}*{body}" if coeff != 1 or not factors else body)
        return " + ".join(parts)


def _monomial_product(m1: Monomial, m2: Monomial):
    """Normal-ordered expansion of (normal monomial) * (normal monomial).

    Each conjugate pair contributes d^d x^a = sum_j C(d,j) (a)_j x^(a-j) d^(d-j);
    the three pairs act independently, all other generator pairs commute.
    """
    a1, b1, c1, d1, e1, f1 = m1
    a2, b2, c2, d2, e2, f2 = m2
    for j1 in range(0, min(d1, a2) + 1):
        w1 = comb(d1, j1) * _falling(a2, j1)
        for j2 in range(0, min(e1, b2) + 1):
            w2 = comb(e1, j2) * _falling(b2, j2)
            for j3 in range(0, f1 + 1):
                w3 = comb(f1, j3) * _falling(c2, j3)
                if w3 == 0:
                    continue
                mono = (a1 + a2 - j1, b1 + b2 - j2, c1 + c2 - j3,
                        d1 + d2 - j1, e1 + e2 - j2, f1 + f2 - j3)
                yield mono, Fraction(w1 * w2 * w3)


def weyl_normal_product(a: WeylElement, b: WeylElement) -> WeylElement:
    """The exact normal-ordered product, as a free function."""
    return a * b


# short generator aliases
X1 = WeylElement.monomial(x1=1)
X2 = WeylElement.monomial(x2=1)
ETA = WeylElement.monomial(eta=1)
D1 = WeylElement.monomial(d1=1)
D2 = WeylElement.monomial(d2=1)
DETA = WeylElement.monomial(deta=1)


def pearcey_operators() -> dict[str, WeylElement]:
    """The annihilating operators of the Pearcey integral and the auxiliary
    pair used to compare the two presentations of the system."""
    p1 = 4 * (D1 * D2) + 2 * (ETA * X2 * D1) + ETA * ETA * X1
    p2 = 4 * (D2 * D2) + ETA * X1 * D1 + 2 * (ETA * X2 * D2) + ETA
    p3 = ETA * D2 - D1 * D1
    p4 = 3 * (X1 * D1) + 2 * (X2 * D2) - 4 * (ETA * DETA) - WeylElement.scalar(1)
    q1 = 4 * (D1 * D1 * D1) + 2 * (X2 * ETA * ETA * D1) + X1 * ETA * ETA * ETA
    q2 = ETA * D2 - D1 * D1
    return {"P1": p1, "P2": p2, "P3": p3, "P4": p4, "Q1": q1, "Q2": q2}


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    eta_clearing_power: int
    residual: WeylElement

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


@dataclass(frozen=True)
class WeylReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_operator_identities() -> WeylReport:
    """Exact normal-form verification of the operator relations.

    The two relations involving eta^-1, eta^-2 factors are verified after
    clearing by the recorded eta power, which keeps everything polynomial:

        eta   * P1 = Q1 + 4 d1 Q2
        eta^2 * P2 = d1 Q1 + (4 Q2 + 8 d1^2 + 2 eta^2 x2) Q2
        Q1 = eta P1 - 4 d1 P3
        eta   * P2 = d1 P1 + 2 (2 d2 + eta x2) P3
    """
    ops = pearcey_operators()
    p1, p2, p3, p4 = ops["P1"], ops["P2"], ops["P3"], ops["P4"]
    q1, q2 = ops["Q1"], ops["Q2"]
    checks = (
        IdentityCheck("eta*P1 - (Q1 + 4*d1*Q2)", 1,
                      ETA * p1 - (q1 + 4 * (D1 * q2))),
        IdentityCheck("eta^2*P2 - (d1*Q1 + (4*Q2 + 8*d1^2 + 2*eta^2*x2)*Q2)", 2,
                      ETA * ETA * p2
                      - (D1 * q1 + (4 * q2 + 8 * (D1 * D1)
                                    + 2 * (ETA * ETA * X2)) * q2)),
        IdentityCheck("Q1 - (eta*P1 - 4*d1*P3)", 0,
                      q1 - (ETA * p1 - 4 * (D1 * p3))),
        IdentityCheck("eta*P2 - (d1*P1 + 2*(2*d2 + eta*x2)*P3)", 1,
                      ETA * p2 - (D1 * p1 + 2 * ((2 * D2 + ETA * X2) * p3))),
    )
    return WeylReport(checks)
