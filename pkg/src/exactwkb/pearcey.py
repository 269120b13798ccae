"""Pearcey-system machinery: exact WKB recursion in the cubic quotient ring,
closedness and primitive checks, and the Borel-plane quartic with its
holonomic annihilation witnesses.

The symbolic side lives in Q(x1, x2)[S] / (4 S^3 + 2 x2 S + x1): every
recursion coefficient is a degree-<=2 polynomial in the cubic root S with
rational-function coefficients.  Total derivatives use the implicit formulas

    dS/dx1 = -1 / (2 (6 S^2 + x2)),      dS/dx2 = -S / (6 S^2 + x2),

and inverses are computed by solving the 3x3 multiplication system, so the
whole recursion stays exact.  Numeric branch values substitute the three
roots of the cubic afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import QQ
from sympy.polys.fields import field as _frac_field

from .errors import NumericError, PreconditionError

_FIELD, _X1, _X2 = _frac_field("x1 x2", QQ)


def coefficient_field():
    """The shared rational-function field Q(x1, x2) and its generators."""
    return _FIELD, _X1, _X2


def _coerce(value):
    if isinstance(value, (int, Fraction)):
        return _FIELD.ground_new(QQ(value.numerator, value.denominator)
                                 if isinstance(value, Fraction) else QQ(value))
    return value


class CubicFieldElement:
    """An element a0 + a1 S + a2 S^2 of the WKB coefficient ring."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0):
        object.__setattr__(self, "c", (_coerce(c0), _coerce(c1), _coerce(c2)))

    def __setattr__(self, *_):
        raise AttributeError("CubicFieldElement is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def root(cls) -> "CubicFieldElement":
        """The class of S itself."""
        return cls(0, 1, 0)

    @classmethod
    def scalar(cls, value) -> "CubicFieldElement":
        return cls(value, 0, 0)

    @classmethod
    def x1(cls) -> "CubicFieldElement":
        return cls(_X1, 0, 0)

    @classmethod
    def x2(cls) -> "CubicFieldElement":
        return cls(_X2, 0, 0)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return all(not ci for ci in self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CubicFieldElement):
            return NotImplemented
        return all((a - b) == 0 for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(self.c)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "CubicFieldElement":
        if not isinstance(other, CubicFieldElement):
            other = CubicFieldElement.scalar(other)
        return CubicFieldElement(*(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self) -> "CubicFieldElement":
        return CubicFieldElement(*(-a for a in self.c))

    def __sub__(self, other) -> "CubicFieldElement":
        if not isinstance(other, CubicFieldElement):
            other = CubicFieldElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "CubicFieldElement":
        return (-self) + other

    def __mul__(self, other) -> "CubicFieldElement":
        if not isinstance(other, CubicFieldElement):
            other = CubicFieldElement.scalar(other)
        a0, a1, a2 = self.c
        b0, b1, b2 = other.c
        d = [a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0,
             a1 * b2 + a2 * b1, a2 * b2]
        # reduce with S^3 = -(2 x2 S + x1)/4, S^4 = -(2 x2 S^2 + x1 S)/4
        quarter = _FIELD.ground_new(QQ(1, 4))
        c0 = d[0] - quarter * _X1 * d[3]
        c1 = d[1] - quarter * (2 * _X2 * d[3] + _X1 * d[4])
        c2 = d[2] - quarter * 2 * _X2 * d[4]
        return CubicFieldElement(c0, c1, c2)

    __rmul__ = __mul__

    def inverse(self) -> "CubicFieldElement":
        """Solve u * v = 1 for v via the 3x3 multiplication matrix of u."""
        cols = []
        for basis in (CubicFieldElement(1), CubicFieldElement.root(),
                      CubicFieldElement(0, 0, 1)):
            cols.append((self * basis).c)
        # matrix M with M[i][j] = coefficient of S^i in u * S^j
        m = [[cols[j][i] for j in range(3)] for i in range(3)]
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if det == 0:
            raise PreconditionError("element is not a unit in the cubic ring")
        def minor(r, c):
            rows = [i for i in range(3) if i != r]
            cs = [j for j in range(3) if j != c]
            return (m[rows[0]][cs[0]] * m[rows[1]][cs[1]]
                    - m[rows[0]][cs[1]] * m[rows[1]][cs[0]])
        inv_det = det ** -1
        # first column of M^{-1} (solution of M v = e_0)
        v = [inv_det * minor(0, 0), -inv_det * minor(0, 1), inv_det * minor(0, 2)]
        return CubicFieldElement(*v)

    def __truediv__(self, other) -> "CubicFieldElement":
        if not isinstance(other, CubicFieldElement):
            other = CubicFieldElement.scalar(other)
        return self * other.inverse()

    # -- derivatives -----------------------------------------------------------

    def d1(self) -> "CubicFieldElement":
        """Total derivative in x1, using the implicit derivative of the root."""
        explicit = CubicFieldElement(*(ci.diff(_X1) for ci in self.c))
        chain = self._ds() * _DS_DX1()
        return explicit + chain

    def d2(self) -> "CubicFieldElement":
        explicit = CubicFieldElement(*(ci.diff(_X2) for ci in self.c))
        chain = self._ds() * _DS_DX2()
        return explicit + chain

    def _ds(self) -> "CubicFieldElement":
        """Formal d/dS of the representative."""
        return CubicFieldElement(self.c[1], 2 * self.c[2], 0)

    # -- numeric substitution -----------------------------------------------

    def evaluate(self, x1: complex, x2: complex, s_root: complex) -> complex:
        out = 0j
        for k, ci in enumerate(self.c):
            num, den = ci.numer, ci.denom
            num_v = _eval_poly(num, x1, x2)
            den_v = _eval_poly(den, x1, x2)
            if den_v == 0:
                raise NumericError("coefficient denominator vanishes at the point")
            out += (num_v / den_v) * s_root ** k
        return out

    def __repr__(self) -> str:
        return f"({self.c[0]}) + ({self.c[1]})*S + ({self.c[2]})*S^2"


def _eval_poly(poly, x1: complex, x2: complex) -> complex:
    total = 0j
    for (e1, e2), coeff in poly.terms():
        total += complex(Fraction(coeff.numerator, coeff.denominator)) \
            * x1 ** e1 * x2 ** e2
    return total


@lru_cache(maxsize=1)
def _UNIT_DENOM() -> CubicFieldElement:
    """6 S^2 + x2, the derivative of the cubic (up to 2) and the only
    denominator the recursion ever needs."""
    return CubicFieldElement(_X2, 0, 6)


@lru_cache(maxsize=1)
def _DS_DX1() -> CubicFieldElement:
    return (-CubicFieldElement.scalar(Fraction(1, 2))) * _UNIT_DENOM().inverse()


@lru_cache(maxsize=1)
def _DS_DX2() -> CubicFieldElement:
    return (-CubicFieldElement.root()) * _UNIT_DENOM().inverse()


def cubic_field_ops(a: CubicFieldElement, b: CubicFieldElement | None,
                    op: str) -> CubicFieldElement:
    """Dispatch form of the quotient-ring operations (add, mul, inv, d1, d2)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "d1":
        return a.d1()
    if op == "d2":
        return a.d2()
    raise PreconditionError(f"unknown ring operation {op!r}")


# ---------------------------------------------------------------------------
# the WKB recursion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PearceyRecursion:
    """S_k and T_k, k = -1..order, as elements of the quotient ring."""

    order: int
    s_terms: tuple
    t_terms: tuple

    def s(self, k: int) -> CubicFieldElement:
        if k < -1 or k > self.order:
            raise PreconditionError(f"S_{k} not computed")
        return self.s_terms[k + 1]

    def t(self, k: int) -> CubicFieldElement:
        if k < -1 or k > self.order:
            raise PreconditionError(f"T_{k} not computed")
        return self.t_terms[k + 1]


def pearcey_recursion(order: int) -> PearceyRecursion:
    """Run the recursion for the coefficient streams.

    S_-1 = S (the cubic root), S_0 = -(1/2) d1 log(6 S^2 + x2), and each later
    S_k divides the lower-order cubic/derivative data by (6 S_-1^2 + x2); the
    T_k follow from T_k = d1 S_(k-1) + sum_j S_j S_(k-j-1).
    """
    if order < 0:
        raise PreconditionError("order must be >= 0")
    unit = _UNIT_DENOM()
    unit_inv = unit.inverse()
    s_list = [CubicFieldElement.root()]
    # S_0 from the logarithmic derivative of the unit
    s_list.append(CubicFieldElement.scalar(Fraction(-1, 2)) * unit.d1() * unit_inv)
    d1_cache = {-1: s_list[0].d1(), 0: s_list[1].d1()}
    for k in range(1, order + 1):
        triple_sum = CubicFieldElement()
        for k1 in range(-1, k):
            for k2 in range(-1, k):
                k3 = k - 2 - k1 - k2
                if -1 <= k3 < k:
                    triple_sum = triple_sum + s_list[k1 + 1] * s_list[k2 + 1] * s_list[k3 + 1]
        cross = CubicFieldElement()
        for k1 in range(-1, k):
            k2 = k - 2 - k1
            if -1 <= k2 < k:
                cross = cross + s_list[k1 + 1] * d1_cache[k2]
        second = d1_cache[k - 2].d1() if k - 2 >= -1 else CubicFieldElement()
        body = triple_sum + CubicFieldElement.scalar(3) * cross + second
        s_k = CubicFieldElement.scalar(-2) * unit_inv * body
        s_list.append(s_k)
        d1_cache[k] = s_k.d1()
    t_list = [s_list[0] * s_list[0]]  # T_-1 = S^2
    for k in range(0, order + 1):
        conv = CubicFieldElement()
        for j in range(-1, k + 1):
            conv = conv + s_list[j + 1] * s_list[k - j - 1 + 1]
        t_list.append(d1_cache[k - 1] + conv)
    return PearceyRecursion(order, tuple(s_list), tuple(t_list))


@dataclass(frozen=True)
class SymbolicCheckReport:
    name: str
    order: int
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def check_closedness(rec: PearceyRecursion) -> SymbolicCheckReport:
    """d2 S_k - d1 T_k = 0 exactly in the quotient ring for every k."""
    failures = []
    for k in range(-1, rec.order + 1):
        if not (rec.s(k).d2() - rec.t(k).d1()).is_zero():
            failures.append(k)
    return SymbolicCheckReport("closedness", rec.order, tuple(failures))


def check_primitives(rec: PearceyRecursion) -> SymbolicCheckReport:
    """The homogeneity-constrained primitives reproduce the streams.

    For k != 0 the primitive is -(1/(4k)) (3 x1 S_k + 2 x2 T_k); its partials
    must equal S_k and T_k.  For k = 0 the primitive is -(1/2) log(6 S^2 + x2)
    and the same identities are checked through the logarithmic derivative.
    """
    failures = []
    x1 = CubicFieldElement.x1()
    x2 = CubicFieldElement.x2()
    for k in range(-1, rec.order + 1):
        if k == 0:
            unit = _UNIT_DENOM()
            unit_inv = unit.inverse()
            half = CubicFieldElement.scalar(Fraction(-1, 2))
            ok = ((half * unit.d1() * unit_inv - rec.s(0)).is_zero()
                  and (half * unit.d2() * unit_inv - rec.t(0)).is_zero())
        else:
            prim = CubicFieldElement.scalar(Fraction(-1, 4 * k)) \
                * (CubicFieldElement.scalar(3) * x1 * rec.s(k)
                   + CubicFieldElement.scalar(2) * x2 * rec.t(k))
            ok = ((prim.d1() - rec.s(k)).is_zero()
                  and (prim.d2() - rec.t(k)).is_zero())
        if not ok:
            failures.append(k)
    return SymbolicCheckReport("primitives", rec.order, tuple(failures))


def denominator_is_unit_power(rec: PearceyRecursion) -> bool:
    """Every S_k coefficient denominator divides a power of the resultant
    27 x1^2 + 8 x2^3 of the cubic with its derivative (times a constant)."""
    disc = 27 * _X1 ** 2 + 8 * _X2 ** 3
    for k in range(1, rec.order + 1):
        for ci in rec.s(k).c:
            den = ci.denom
            # strip all factors of disc, then nothing but a constant may remain
            while True:
                quo, rem = divmod(den, disc.numer)
                if rem:
                    break
                den = quo
            if any(sum(monom) > 0 for monom in den.monoms()):
                return False
    return True


# ---------------------------------------------------------------------------
# the Borel-plane quartic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PearceyBranch:
    x1: complex
    x2: complex
    y: complex
    value: complex
    label: int


def quartic_coefficients(x1: complex, x2: complex, y: complex):
    """(A, B, C, D, E) of A g^4 + B g^3 + C g^2 + D g + E annihilating g."""
    a = 4 * x1 ** 2 * x2 * (36 * y - x2 ** 2) + 16 * y * (x2 ** 2 - 4 * y) ** 2 \
        - 27 * x1 ** 4
    return (a, 0j, 2 * (-8 * x2 * y + 2 * x2 ** 3 + 9 * x1 ** 2), -8 * x1, 1 + 0j)


def quartic_g_roots(x1: complex, x2: complex, y: complex,
                    tol: float = 1e-12) -> list[PearceyBranch]:
    """All four branch values at a point off the singular locus.

    Roots are polished by Newton until the scaled residual is below ``tol``;
    labels order them by (real, imaginary) part.
    """
    a, b, c, d, e = quartic_coefficients(x1, x2, y)
    if abs(a) < 1e-10 * max(1.0, abs(c), abs(d)):
        raise PreconditionError(
            f"point lies near the singular locus (leading coefficient {a:.3e})")
    roots = np.roots([a, b, c, d, e])
    polished = []
    for r in roots:
        z = complex(r)
        for _ in range(60):
            f = ((a * z + b) * z + c) * z ** 2 + d * z + e
            fp = (4 * a * z + 3 * b) * z ** 2 + 2 * c * z + d
            if abs(fp) < 1e-300:
                break
            step = f / fp
            z -= step
            if abs(step) < 1e-17 * max(1.0, abs(z)):
                break
        scale = max(abs(a * z ** 4), abs(c * z ** 2), abs(d * z), 1.0)
        if abs(((a * z + b) * z + c) * z ** 2 + d * z + e) > tol * scale:
            raise NumericError(f"quartic root did not refine below {tol}")
        polished.append(z)
    polished.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return [PearceyBranch(x1, x2, y, z, i + 1) for i, z in enumerate(polished)]


def _quartic_partials(x1, x2, y, g):
    """Value-level partial derivatives of F(g; x1, x2, y) for the implicit
    differentiation of the branch."""
    a = 4 * x1 ** 2 * x2 * (36 * y - x2 ** 2) + 16 * y * (x2 ** 2 - 4 * y) ** 2 \
        - 27 * x1 ** 4
    c = 2 * (-8 * x2 * y + 2 * x2 ** 3 + 9 * x1 ** 2)
    # first partials of the coefficients
    a_x1 = 8 * x1 * x2 * (36 * y - x2 ** 2) - 108 * x1 ** 3
    a_x2 = 4 * x1 ** 2 * (36 * y - x2 ** 2) - 8 * x1 ** 2 * x2 ** 2 \
        + 64 * y * x2 * (x2 ** 2 - 4 * y)
    a_y = 144 * x1 ** 2 * x2 + 16 * (x2 ** 2 - 4 * y) ** 2 \
        - 128 * y * (x2 ** 2 - 4 * y)
    c_x1 = 36 * x1
    c_x2 = 2 * (-8 * y + 6 * x2 ** 2)
    c_y = -16 * x2
    # second partials of the coefficients
    a_x1x1 = 8 * x2 * (36 * y - x2 ** 2) - 324 * x1 ** 2
    a_x1x2 = 8 * x1 * (36 * y - x2 ** 2) - 16 * x1 * x2 ** 2
    a_x1y = 288 * x1 * x2
    a_x2x2 = -24 * x1 ** 2 * x2 + 64 * y * (3 * x2 ** 2 - 4 * y)
    a_x2y = 144 * x1 ** 2 + 64 * x2 * (x2 ** 2 - 4 * y) - 256 * y * x2
    a_yy = -256 * (x2 ** 2 - 4 * y) + 512 * y
    c_x1x1 = 36
    c_x2x2 = 24 * x2
    c_x2y = -16
    g2, g3, g4 = g * g, g ** 3, g ** 4
    f_g = 4 * a * g3 + 2 * c * g - 8 * x1
    partials = {
        "x1": a_x1 * g4 + c_x1 * g2 - 8 * g,
        "x2": a_x2 * g4 + c_x2 * g2,
        "y": a_y * g4 + c_y * g2,
    }
    second = {
        ("x1", "x1"): a_x1x1 * g4 + c_x1x1 * g2,
        ("x1", "x2"): a_x1x2 * g4,
        ("x1", "y"): a_x1y * g4,
        ("x2", "x2"): a_x2x2 * g4 + c_x2x2 * g2,
        ("x2", "y"): a_x2y * g4 + c_x2y * g2,
        ("y", "y"): a_yy * g4,
    }
    cross_g = {
        "x1": 4 * a_x1 * g3 + 2 * c_x1 * g - 8,
        "x2": 4 * a_x2 * g3 + 2 * c_x2 * g,
        "y": 4 * a_y * g3 + 2 * c_y * g,
    }
    f_gg = 12 * a * g2 + 2 * c
    return f_g, partials, second, cross_g, f_gg


def branch_partials(branch: PearceyBranch) -> dict:
    """First and second partial derivatives of the branch in (x1, x2, y)."""
    x1, x2, y, g = branch.x1, branch.x2, branch.y, branch.value
    f_g, fv, fvw, fvg, f_gg = _quartic_partials(x1, x2, y, g)
    if abs(f_g) < 1e-10:
        raise NumericError("branch derivative degenerates (double root nearby)")
    first = {v: -fv[v] / f_g for v in ("x1", "x2", "y")}
    second = {}
    for (v, w), fvw_val in fvw.items():
        gv, gw = first[v], first[w]
        second[(v, w)] = -(fvw_val + fvg[v] * gw + fvg[w] * gv
                           + f_gg * gv * gw) / f_g
    return {"first": first, "second": second}


def annihilation_residuals(branch: PearceyBranch) -> tuple[float, float, float, float]:
    """Scaled residuals of the four Borel-plane operators applied to the branch.

    The operators are evaluated through exact implicit derivatives; each
    residual is normalized by the sum of its term magnitudes.
    """
    x1, x2, y, g = branch.x1, branch.x2, branch.y, branch.value
    d = branch_partials(branch)
    g1, g2_, gy = d["first"]["x1"], d["first"]["x2"], d["first"]["y"]
    g11 = d["second"][("x1", "x1")]
    g12 = d["second"][("x1", "x2")]
    g1y = d["second"][("x1", "y")]
    g22 = d["second"][("x2", "x2")]
    g2y = d["second"][("x2", "y")]
    gyy = d["second"][("y", "y")]

    def scaled(terms):
        total = sum(terms)
        scale = sum(abs(t) for t in terms) + 1e-300
        return abs(total) / scale

    r1 = scaled([4 * g12, 2 * x2 * g1y, x1 * gyy])
    r2 = scaled([4 * g22, x1 * g1y, 2 * x2 * g2y, gy])
    r3 = scaled([g2y, -g11])
    r4 = scaled([3 * x1 * g1, 2 * x2 * g2_, 4 * y * gy, 3 * g])
    return (r1, r2, r3, r4)


def homogeneity_residual(x1: complex, x2: complex, y: complex,
                         lam: float = 2.0) -> float:
    """Scaled-branch mismatch under (x1,x2,y) -> (l^3 x1, l^2 x2, l^4 y).

    Every branch value must scale by l^-3; branches are matched by that
    prediction and the worst relative mismatch is returned.
    """
    base = quartic_g_roots(x1, x2, y)
    scaled = quartic_g_roots(lam ** 3 * x1, lam ** 2 * x2, lam ** 4 * y)
    worst = 0.0
    for b in base:
        target = b.value * lam ** -3.0
        match = min(scaled, key=lambda s: abs(s.value - target))
        worst = max(worst, abs(match.value - target) / max(abs(target), 1e-300))
    return worst
