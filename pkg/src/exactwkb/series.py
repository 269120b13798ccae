"""Exact arithmetic substrate: rationals adjoined sqrt(3), truncated Puiseux
series with half-integer exponents, and finite expansions in the large
parameter.

Everything here is immutable and exact.  Floating point enters only through
the explicit ``complex()``/``float()`` conversions used by the numeric
modules.  Exponent denominators are capped at 2 on purpose: every series in
this problem lives in half-integer powers, so a finer denominator showing up
means a symbol-manipulation bug and is rejected immediately.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import PreconditionError

RationalLike = Union[int, Fraction]

_SQRT3 = math.sqrt(3.0)


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class ExactScalar:
    """An element a + b*sqrt(3) of the quadratic field Q(sqrt(3)).

    Equality, arithmetic and zero-testing are exact; (sqrt 3)^2 reduces to 3.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))

    def __setattr__(self, *_):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, value: RationalLike) -> "ExactScalar":
        return cls(value, 0)

    @classmethod
    def sqrt3(cls, coeff: RationalLike = 1) -> "ExactScalar":
        return cls(0, coeff)

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return cls(_as_fraction(value), 0)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "ExactScalar":
        other = ExactScalar.coerce(other)
        return ExactScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.a, -self.b)

    def __sub__(self, other) -> "ExactScalar":
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other) -> "ExactScalar":
        return ExactScalar.coerce(other) + (-self)

    def __mul__(self, other) -> "ExactScalar":
        other = ExactScalar.coerce(other)
        return ExactScalar(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        norm = self.a * self.a - 3 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return ExactScalar(self.a / norm, -self.b / norm)

    def __truediv__(self, other) -> "ExactScalar":
        return self * ExactScalar.coerce(other).inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ExactScalar":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactScalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self) -> "ExactScalar":
        """Exact square root, defined only for perfect squares in Q(sqrt 3)."""
        if self.is_zero():
            return ExactScalar(0)
        if self.b == 0:
            root = _fraction_sqrt(self.a)
            if root is not None:
                return ExactScalar(root, 0)
            if self.a > 0:
                root = _fraction_sqrt(self.a / 3)
                if root is not None:
                    return ExactScalar(0, root)
            raise PreconditionError(f"{self!r} is not a perfect square in Q(sqrt 3)")
        # (p + q*sqrt3)^2 = p^2 + 3q^2 + 2pq sqrt3; solve for p, q.
        disc = self.a * self.a - 3 * self.b * self.b
        root_disc = _fraction_sqrt(disc) if disc >= 0 else None
        if root_disc is not None:
            for p2 in ((self.a + root_disc) / 2, (self.a - root_disc) / 2):
                if p2 <= 0:
                    continue
                p = _fraction_sqrt(p2)
                if p is None:
                    continue
                q = self.b / (2 * p)
                candidate = ExactScalar(p, q)
                if candidate * candidate == self:
                    return candidate
        raise PreconditionError(f"{self!r} is not a perfect square in Q(sqrt 3)")

    # -- comparisons / conversions --------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.coerce(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * _SQRT3

    def __complex__(self) -> complex:
        return complex(float(self))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        if self.a == 0:
            return f"{self.b}*sqrt3"
        sign = "+" if self.b > 0 else "-"
        return f"({self.a} {sign} {abs(self.b)}*sqrt3)"


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    """Square root of a nonnegative rational if it is rational, else None."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
SQRT3 = ExactScalar.sqrt3()


def _check_exponent(e: Fraction) -> Fraction:
    if e.denominator not in (1, 2):
        raise PreconditionError(f"exponent {e} has denominator {e.denominator}; only 1 or 2 allowed")
    return e


class PuiseuxSeries:
    """A truncated series sum_e c_e * var^e with exponents in (1/2)Z.

    ``truncation`` is the first exponent *not* represented; ``None`` means the
    series is exact (a Puiseux polynomial).  Arithmetic propagates the
    truncation as the minimum of the operand precisions, shifted by valuations
    under multiplication and inversion.
    """

    __slots__ = ("variable", "terms", "truncation")

    def __init__(self, variable: str,
                 terms: Mapping[Fraction, ExactScalar] | Iterable[tuple] = (),
                 truncation: Fraction | int | None = None):
        clean: dict[Fraction, ExactScalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        trunc = None if truncation is None else Fraction(truncation)
        for e, c in items:
            e = _check_exponent(Fraction(e))
            c = ExactScalar.coerce(c)
            if c.is_zero():
                continue
            if trunc is not None and e >= trunc:
                continue
            clean[e] = clean.get(e, ZERO) + c
        clean = {e: c for e, c in clean.items() if not c.is_zero()}
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "truncation", trunc)

    def __setattr__(self, *_):
        raise AttributeError("PuiseuxSeries is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variable: str, truncation=None) -> "PuiseuxSeries":
        return cls(variable, {}, truncation)

    @classmethod
    def one(cls, variable: str, truncation=None) -> "PuiseuxSeries":
        return cls.monomial(variable, 0, ONE, truncation)

    @classmethod
    def monomial(cls, variable: str, exponent, coeff=ONE, truncation=None) -> "PuiseuxSeries":
        return cls(variable, {Fraction(exponent): ExactScalar.coerce(coeff)}, truncation)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> Fraction | None:
        """Smallest stored exponent, or None for the (truncated) zero series."""
        if not self.terms:
            return None
        return next(iter(self.terms))

    def coeff(self, exponent) -> ExactScalar:
        return self.terms.get(Fraction(exponent), ZERO)

    def leading(self) -> tuple[Fraction, ExactScalar]:
        if not self.terms:
            raise PreconditionError("zero series has no leading term")
        e = next(iter(self.terms))
        return e, self.terms[e]

    def _same_variable(self, other: "PuiseuxSeries"):
        if self.variable != other.variable:
            raise PreconditionError(
                f"variable mismatch: {self.variable!r} vs {other.variable!r}")

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction, ExactScalar)):
            other = PuiseuxSeries.monomial(self.variable, 0, ExactScalar.coerce(other))
        self._same_variable(other)
        trunc = _min_trunc(self.truncation, other.truncation)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, ZERO) + c
        return PuiseuxSeries(self.variable, merged, trunc)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.variable, {e: -c for e, c in self.terms.items()},
                             self.truncation)

    def __sub__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction, ExactScalar)):
            other = PuiseuxSeries.monomial(self.variable, 0, ExactScalar.coerce(other))
        return self + (-other)

    def __rsub__(self, other) -> "PuiseuxSeries":
        return (-self) + other

    def __mul__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction, ExactScalar)):
            c = ExactScalar.coerce(other)
            return PuiseuxSeries(self.variable,
                                 {e: v * c for e, v in self.terms.items()},
                                 self.truncation)
        self._same_variable(other)
        trunc = _product_trunc(self, other)
        out: dict[Fraction, ExactScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if trunc is not None and e >= trunc:
                    continue
                out[e] = out.get(e, ZERO) + c1 * c2
        return PuiseuxSeries(self.variable, out, trunc)

    __rmul__ = __mul__

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by var^exponent."""
        d = _check_exponent(Fraction(exponent))
        trunc = None if self.truncation is None else self.truncation + d
        return PuiseuxSeries(self.variable,
                             {e + d: c for e, c in self.terms.items()}, trunc)

    def inverse(self, order: Fraction | int | None = None) -> "PuiseuxSeries":
        """Multiplicative inverse as a truncated series.

        ``order`` is the requested relative precision (number of exponent units
        past the leading term); required when the input is an exact multi-term
        polynomial, since its true inverse is an infinite series.
        """
        if self.is_zero():
            raise ZeroDivisionError("division by identically-zero series")
        v, lead = self.leading()
        rel = None
        if self.truncation is not None:
            rel = self.truncation - v
        if order is not None:
            rel = Fraction(order) if rel is None else min(rel, Fraction(order))
        if len(self.terms) == 1:
            trunc = None if rel is None else rel - v
            return PuiseuxSeries.monomial(self.variable, -v, lead.inverse(), trunc)
        if rel is None:
            raise PreconditionError(
                "inverse of an exact multi-term series needs an explicit order")
        # f = lead * x^v (1 + u); 1/f = lead^{-1} x^{-v} sum (-u)^k
        inv_lead = lead.inverse()
        u = PuiseuxSeries(self.variable,
                          {e - v: c * inv_lead for e, c in self.terms.items() if e != v},
                          rel)
        acc = PuiseuxSeries.one(self.variable, rel)
        term = acc
        u_val = u.valuation()
        if u_val is None or u_val <= 0:
            raise PreconditionError("inverse: normalized tail must have positive valuation")
        k = 1
        while k * u_val < rel:
            term = term * (-u)
            acc = acc + term
            k += 1
        return (acc * inv_lead).shift(-v)

    def __truediv__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self * ExactScalar.coerce(other).inverse()
        self._same_variable(other)
        order = None
        if other.truncation is None and self.truncation is not None and not self.is_zero():
            order = self.truncation - self.valuation()
        return self * other.inverse(order=order)

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("series power expects a nonnegative integer")
        out = PuiseuxSeries.one(self.variable, self.truncation)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus ----------------------------------------------------------

    def differentiate(self) -> "PuiseuxSeries":
        trunc = None if self.truncation is None else self.truncation - 1
        return PuiseuxSeries(self.variable,
                             {e - 1: c * e for e, c in self.terms.items() if e != 0},
                             trunc)

    def integrate(self) -> "PuiseuxSeries":
        """Term-by-term primitive with no integration constant."""
        out = {}
        for e, c in self.terms.items():
            if e == -1:
                raise PreconditionError("cannot integrate an exponent -1 term termwise")
            out[e + 1] = c / (e + 1)
        trunc = None if self.truncation is None else self.truncation + 1
        return PuiseuxSeries(self.variable, out, trunc)

    # -- compositions --------------------------------------------------------

    def truncate(self, order) -> "PuiseuxSeries":
        order = Fraction(order)
        trunc = order if self.truncation is None else min(self.truncation, order)
        return PuiseuxSeries(self.variable, self.terms, trunc)

    def exp(self, order=None) -> "PuiseuxSeries":
        """exp of a series with strictly positive valuation."""
        rel = self.truncation
        if order is not None:
            rel = Fraction(order) if rel is None else min(rel, Fraction(order))
        if rel is None:
            raise PreconditionError("exp of an exact series needs an explicit order")
        if self.is_zero():
            return PuiseuxSeries.one(self.variable, rel)
        v = self.valuation()
        if v <= 0:
            raise PreconditionError("exp requires strictly positive valuation")
        u = self.truncate(rel)
        acc = PuiseuxSeries.one(self.variable, rel)
        term = acc
        k = 1
        while k * v < rel:
            term = term * u / k
            acc = acc + term
            k += 1
        return acc

    def log1p(self, order=None) -> "PuiseuxSeries":
        """log(1 + f) for f with strictly positive valuation."""
        rel = self.truncation
        if order is not None:
            rel = Fraction(order) if rel is None else min(rel, Fraction(order))
        if rel is None:
            raise PreconditionError("log1p of an exact series needs an explicit order")
        if self.is_zero():
            return PuiseuxSeries.zero(self.variable, rel)
        v = self.valuation()
        if v <= 0:
            raise PreconditionError("log1p requires strictly positive valuation")
        u = self.truncate(rel)
        acc = PuiseuxSeries.zero(self.variable, rel)
        power = PuiseuxSeries.one(self.variable, rel)
        k = 1
        while (k - 1) * v < rel:
            power = power * u
            acc = acc + power * Fraction((-1) ** (k + 1), k)
            k += 1
        return acc

    def _binomial_power(self, half_exponent: Fraction, order) -> "PuiseuxSeries":
        """(lead * x^v (1+u))^p for p in {1/2, -1/2}, v even multiple of p."""
        rel = self.truncation
        if order is not None:
            rel = Fraction(order) if rel is None else min(rel, Fraction(order))
        if self.is_zero():
            raise PreconditionError("no square root of the zero series")
        v, lead = self.leading()
        if (v / 2).denominator not in (1, 2):
            raise PreconditionError(f"sqrt would need exponent {v}/2 with denominator > 2")
        root = lead.sqrt()
        if half_exponent < 0:
            root = root.inverse()
        if len(self.terms) == 1:
            trunc = None if rel is None else rel - v
            return PuiseuxSeries.monomial(self.variable, v * half_exponent, root, trunc)
        if rel is None:
            raise PreconditionError("sqrt of an exact multi-term series needs an explicit order")
        inv_lead = lead.inverse()
        u = PuiseuxSeries(self.variable,
                          {e - v: c * inv_lead for e, c in self.terms.items() if e != v},
                          rel)
        uv = u.valuation()
        if uv is None or uv <= 0:
            raise PreconditionError("sqrt: normalized tail must have positive valuation")
        acc = PuiseuxSeries.one(self.variable, rel)
        term = acc
        k = 0
        coeff = Fraction(1)
        while (k + 1) * uv < rel:
            coeff = coeff * (half_exponent - k) / (k + 1)
            term = term * u
            acc = acc + term * coeff
            k += 1
        return (acc * root).shift(v * half_exponent)

    def sqrt(self, order=None) -> "PuiseuxSeries":
        return self._binomial_power(Fraction(1, 2), order)

    def inv_sqrt(self, order=None) -> "PuiseuxSeries":
        return self._binomial_power(Fraction(-1, 2), order)

    # -- conversions -----------------------------------------------------------

    def __call__(self, value: complex) -> complex:
        """Evaluate numerically; half-integer exponents use the principal root."""
        sqrt_value = complex(value) ** 0.5
        total = 0j
        for e, c in self.terms.items():
            total += complex(c) * sqrt_value ** (2 * e.numerator // e.denominator)
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.variable == other.variable and self.terms == other.terms
                and self.truncation == other.truncation)

    def __hash__(self):
        return hash((self.variable, tuple(self.terms.items()), self.truncation))

    def same_terms(self, other: "PuiseuxSeries") -> bool:
        """Coefficient-wise equality, ignoring truncation metadata."""
        return self.variable == other.variable and self.terms == other.terms

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "terms": [[e.numerator, e.denominator, c.a.numerator, c.a.denominator,
                       c.b.numerator, c.b.denominator]
                      for e, c in self.terms.items()],
            "truncation": None if self.truncation is None else
                          [self.truncation.numerator, self.truncation.denominator],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PuiseuxSeries":
        terms = {}
        for en, ed, an, ad, bn, bd in data["terms"]:
            terms[Fraction(en, ed)] = ExactScalar(Fraction(an, ad), Fraction(bn, bd))
        trunc = data.get("truncation")
        if trunc is not None:
            trunc = Fraction(trunc[0], trunc[1])
        return cls(data["variable"], terms, trunc)

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in self.terms.items():
                if e == 0:
                    parts.append(f"{c!r}")
                else:
                    parts.append(f"{c!r}*{self.variable}^{e}")
            body = " + ".join(parts)
        if self.truncation is not None:
            body += f" + O({self.variable}^{self.truncation})"
        return body


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _product_trunc(f: PuiseuxSeries, g: PuiseuxSeries):
    candidates = []
    if f.truncation is not None:
        vg = g.valuation()
        candidates.append(f.truncation + (vg if vg is not None else g.truncation))
    if g.truncation is not None:
        vf = f.valuation()
        candidates.append(g.truncation + (vf if vf is not None else f.truncation))
    return min(candidates) if candidates else None


def series_arith(a: PuiseuxSeries, b: PuiseuxSeries, op: str) -> PuiseuxSeries:
    """Dispatch form of the basic series arithmetic (add, mul, div)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise PreconditionError(f"unknown series operation {op!r}")


def series_compose_exp_sqrt(a: PuiseuxSeries, mode: str, order=None) -> PuiseuxSeries:
    """Dispatch form of the series compositions (exp, sqrt, inv_sqrt, log1p)."""
    if mode == "exp":
        return a.exp(order)
    if mode == "sqrt":
        return a.sqrt(order)
    if mode == "inv_sqrt":
        return a.inv_sqrt(order)
    if mode == "log1p":
        return a.log1p(order)
    raise PreconditionError(f"unknown composition mode {mode!r}")


class EtaExpansion:
    """A finite sum over integer k of eta^(-k) * (Puiseux series in x).

    ``truncation`` is the largest represented k, i.e. the expansion is valid
    modulo eta^-(truncation+1).  Negative k (positive powers of eta) are
    allowed; the Riccati data starts at k = -1.
    """

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: Mapping[int, PuiseuxSeries] | Iterable[tuple],
                 truncation: int):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, PuiseuxSeries] = {}
        for k, series in items:
            if not isinstance(series, PuiseuxSeries):
                raise TypeError("EtaExpansion terms must be PuiseuxSeries")
            if k > truncation or series.is_zero():
                continue
            if k in clean:
                series = clean[k] + series
            clean[k] = series
        clean = {k: s for k, s in clean.items() if not s.is_zero()}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "truncation", int(truncation))

    def __setattr__(self, *_):
        raise AttributeError("EtaExpansion is immutable")

    @classmethod
    def zero(cls, truncation: int) -> "EtaExpansion":
        return cls({}, truncation)

    def coeff(self, k: int) -> PuiseuxSeries | None:
        return self.terms.get(k)

    def valuation(self) -> int | None:
        if not self.terms:
            return None
        return next(iter(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "EtaExpansion") -> "EtaExpansion":
        trunc = min(self.truncation, other.truncation)
        merged = dict(self.terms)
        for k, s in other.terms.items():
            merged[k] = merged[k] + s if k in merged else s
        return EtaExpansion(merged, trunc)

    def __neg__(self) -> "EtaExpansion":
        return EtaExpansion({k: -s for k, s in self.terms.items()}, self.truncation)

    def __sub__(self, other: "EtaExpansion") -> "EtaExpansion":
        return self + (-other)

    def scale(self, c) -> "EtaExpansion":
        return EtaExpansion({k: s * ExactScalar.coerce(c) for k, s in self.terms.items()},
                            self.truncation)

    def __mul__(self, other) -> "EtaExpansion":
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            return EtaExpansion.zero(min(self.truncation, other.truncation))
        trunc = min(self.truncation + vb, other.truncation + va)
        out: dict[int, PuiseuxSeries] = {}
        for k1, s1 in self.terms.items():
            for k2, s2 in other.terms.items():
                k = k1 + k2
                if k > trunc:
                    continue
                prod = s1 * s2
                out[k] = out[k] + prod if k in out else prod
        return EtaExpansion(out, trunc)

    __rmul__ = __mul__

    def d_dx(self) -> "EtaExpansion":
        return EtaExpansion({k: s.differentiate() for k, s in self.terms.items()},
                            self.truncation)

    def integrate_x(self) -> "EtaExpansion":
        return EtaExpansion({k: s.integrate() for k, s in self.terms.items()},
                            self.truncation)

    def inverse(self) -> "EtaExpansion":
        """Inverse when the leading eta-coefficient is an invertible monomial."""
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("division by identically-zero expansion")
        lead = self.terms[v]
        if len(lead.terms) != 1:
            raise PreconditionError("inverse needs a single-monomial leading coefficient")
        rel = self.truncation - v
        lead_inv = lead.inverse()
        # self = eta^{-v} lead (1 + u) with u of positive eta-valuation
        u_terms = {k - v: s * lead_inv for k, s in self.terms.items() if k != v}
        u = EtaExpansion(u_terms, rel)
        acc = EtaExpansion({0: PuiseuxSeries.one(lead.variable)}, rel)
        term = acc
        if not u.is_zero():
            uv = u.valuation()
            k = 1
            neg_u = u.scale(-1)
            while k * uv <= rel:
                term = term * neg_u
                acc = acc + term
                k += 1
        shifted = {k - v: s * lead_inv for k, s in acc.terms.items()}
        return EtaExpansion(shifted, rel - v)

    def __truediv__(self, other: "EtaExpansion") -> "EtaExpansion":
        return self * other.inverse()

    def exp(self) -> "EtaExpansion":
        """exp of an expansion supported on strictly positive eta^-1 powers."""
        v = self.valuation()
        if v is None:
            var = "x"
            return EtaExpansion({0: PuiseuxSeries.one(var)}, self.truncation)
        if v <= 0:
            raise PreconditionError("exp requires strictly positive eta^-1 valuation")
        var = self.terms[v].variable
        acc = EtaExpansion({0: PuiseuxSeries.one(var)}, self.truncation)
        term = acc
        k = 1
        while k * v <= self.truncation:
            term = (term * self).scale(Fraction(1, k))
            acc = acc + term
            k += 1
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, EtaExpansion):
            return NotImplemented
        return self.terms == other.terms and self.truncation == other.truncation

    def same_terms(self, other: "EtaExpansion") -> bool:
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k].same_terms(other.terms[k]) for k in self.terms)

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "terms": {str(k): s.to_json() for k, s in self.terms.items()},
        }

    def __repr__(self) -> str:
        if not self.terms:
            return f"0 + O(eta^-{self.truncation + 1})"
        parts = [f"eta^{-k}*({s!r})" for k, s in self.terms.items()]
        return " + ".join(parts) + f" + O(eta^-{self.truncation + 1})"
