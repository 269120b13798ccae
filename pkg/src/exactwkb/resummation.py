"""Numerical Borel summation and the connection-formula verifications.

The Laplace integrals run along the rays y = -+(2/3) x^(3/2) + t, t >= 0; in
the normalized variable the integrand comes from the tracked branch triple
(series evaluation near the base point, predictor-corrector tracking beyond).
The endpoint square-root singularity is removed by t = u^2 and the quadrature
is adaptive Gauss-Legendre on u-panels.

The independent reference for the Airy identities is a from-scratch Maclaurin
evaluation of Ai and Bi in configurable precision (mpmath floats, own series
loop); in double precision it is reliable to |z| <= 6 and the working
precision is raised automatically beyond that.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .branches import (SERIES_ZONE, anchored_g_triple, continue_triple,
                       monodromy_triple, ray_local_root, sqrt_s)
from .errors import NumericError, PreconditionError

TWO_PI_THIRDS = 2 * math.pi / 3
SQRT_PI = math.sqrt(math.pi)

REGION_I = "I"
REGION_II = "II"
BOUNDARY = "boundary"
OUTSIDE = "outside"

_SERIES_HANDOFF = 0.8 * SERIES_ZONE


@dataclass(frozen=True)
class StokesContext:
    """Location of x relative to the Stokes geometry of the turning point."""

    x: complex
    region: str

    @property
    def x_three_halves(self) -> complex:
        return cmath.exp(1.5 * cmath.log(self.x))

    @property
    def alpha_plus(self) -> complex:
        """Singular point of the "+" transform: y = -(2/3) x^(3/2)."""
        return -2.0 / 3.0 * self.x_three_halves

    @property
    def alpha_minus(self) -> complex:
        """Singular point of the "-" transform: y = +(2/3) x^(3/2)."""
        return 2.0 / 3.0 * self.x_three_halves

    @property
    def kappa(self) -> complex:
        """ds/dt along either ray: s = base + kappa t."""
        return 0.75 / self.x_three_halves

    def ray_point(self, sign: str, t: float) -> complex:
        base = 0.0 if sign == "+" else 1.0
        return base + self.kappa * t


def classify_stokes(x: complex, boundary_tol: float = 1e-12) -> StokesContext:
    """Classify x against the Stokes rays arg x in {0, +-2 pi/3}."""
    if x == 0:
        raise PreconditionError("x = 0 is the turning point")
    arg = cmath.phase(complex(x))
    for ray in (0.0, TWO_PI_THIRDS, -TWO_PI_THIRDS):
        if abs(arg - ray) < boundary_tol or abs(arg + 2 * math.pi - ray) < boundary_tol:
            return StokesContext(complex(x), BOUNDARY)
    if -TWO_PI_THIRDS < arg < 0:
        return StokesContext(complex(x), REGION_I)
    if 0 < arg < TWO_PI_THIRDS:
        return StokesContext(complex(x), REGION_II)
    return StokesContext(complex(x), OUTSIDE)


# ---------------------------------------------------------------------------
# branch values along a summation ray
# ---------------------------------------------------------------------------

class RayField:
    """Cached values of the ordered branch triple along one summation ray.

    Close to the base point the exact local series is evaluated directly (the
    local root fixes the branch orientation); farther out the triple is tracked
    from the nearest cached sample.
    """

    def __init__(self, anchor: int, kappa: complex, orientation: float = 1.0):
        self.anchor = anchor
        self.kappa = kappa
        self.orientation = orientation
        self._ts: list[float] = []
        self._triples: list[tuple] = []

    def _local_root(self, t: float) -> complex:
        # formed from kappa*t directly: computing s = base + kappa*t and
        # subtracting the base back loses every digit for tiny t
        delta = self.kappa * t
        root = cmath.sqrt(delta)
        if self.anchor == 1:
            root *= 1j
        return self.orientation * root

    def _s_of(self, t: float) -> complex:
        return self.anchor + self.kappa * t

    def triple(self, t: float) -> tuple:
        s = self._s_of(t)
        rho = abs(self.kappa) * t
        if rho <= _SERIES_HANDOFF and not self._ts:
            return anchored_g_triple(self.anchor, self._local_root(t))
        if not self._ts:
            t0 = _SERIES_HANDOFF / abs(self.kappa)
            self._ts.append(t0)
            self._triples.append(anchored_g_triple(self.anchor, self._local_root(t0)))
        if rho <= _SERIES_HANDOFF:
            return anchored_g_triple(self.anchor, self._local_root(t))
        idx = bisect.bisect_left(self._ts, t)
        if idx < len(self._ts) and abs(self._ts[idx] - t) < 1e-15 * max(1.0, t):
            return self._triples[idx]
        nearest = min(
            (i for i in (idx - 1, idx) if 0 <= i < len(self._ts)),
            key=lambda i: abs(self._ts[i] - t),
        )
        triple = continue_triple([self._s_of(self._ts[nearest]), s],
                                 self._triples[nearest], max_step=0.02)
        pos = bisect.bisect_left(self._ts, t)
        self._ts.insert(pos, t)
        self._triples.insert(pos, triple)
        return triple


# ---------------------------------------------------------------------------
# adaptive Gauss-Legendre quadrature
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gl_nodes(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return tuple(nodes.tolist()), tuple(weights.tolist())


def _gl_panel(f, a: float, b: float, n: int = 16) -> complex:
    nodes, weights = _gl_nodes(n)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    total = 0j
    for xk, wk in zip(nodes, weights):
        total += wk * f(mid + half * xk)
    return total * half


def _adaptive_panel(f, a: float, b: float, tol_abs: float, floor: float,
                    depth: int = 0):
    """Bisecting Gauss panel with a rounding floor on the acceptance test.

    Without the floor, repeated budget halving eventually asks for accuracy
    below the noise of the panel sums themselves and the recursion chases
    rounding errors forever.
    """
    coarse = _gl_panel(f, a, b)
    mid = 0.5 * (a + b)
    fine = _gl_panel(f, a, mid) + _gl_panel(f, mid, b)
    err = abs(fine - coarse)
    accept = max(tol_abs, floor)
    if err <= accept or depth >= 24:
        if depth >= 24 and err > accept:
            raise NumericError("quadrature panel refinement exhausted")
        return fine, err
    left, el = _adaptive_panel(f, a, mid, tol_abs / 2, floor, depth + 1)
    right, er = _adaptive_panel(f, mid, b, tol_abs / 2, floor, depth + 1)
    return left + right, el + er


def _laplace_quadrature(integrand_t, eta: float, tol: float):
    """integral_0^inf integrand(t) e^(-t eta) dt with t = u^2 removing the
    endpoint square-root singularity; returns (value, error_estimate)."""

    def h(u: float) -> complex:
        t = u * u
        return integrand_t(t) * cmath.exp(-t * eta) * 2 * u

    decay = max(-math.log(tol * 1e-3), 30.0)
    u_max = math.sqrt(decay / eta)
    width = 1.0 / math.sqrt(eta)
    edges = [0.0, 0.5 * width, width]
    while edges[-1] < u_max:
        edges.append(min(edges[-1] + width, u_max))
    # coarse pass to set the absolute tolerance scale
    coarse = sum(_gl_panel(h, a, b) for a, b in zip(edges, edges[1:]))
    scale = max(abs(coarse), 1e-280)
    tol_abs = scale * tol * 0.25
    floor = scale * 5e-16
    total = 0j
    err = 0.0
    for a, b in zip(edges, edges[1:]):
        value, e = _adaptive_panel(h, a, b, tol_abs / max(len(edges) - 1, 1), floor)
        total += value
        err += e
    # tail extension, in case the integrand decays slower than assumed
    a = edges[-1]
    while True:
        b = a + width
        value, e = _adaptive_panel(h, a, b, tol_abs, floor)
        total += value
        err += e
        if abs(value) < tol_abs:
            break
        if b > 40 * u_max:
            raise NumericError("Laplace tail did not converge")
        a = b
    return total, err


# ---------------------------------------------------------------------------
# Borel sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BorelSum:
    sign: str
    region: str
    eta: float
    value: complex
    quadrature_error_estimate: float


def _require_summable(ctx: StokesContext):
    if ctx.region not in (REGION_I, REGION_II):
        raise PreconditionError(
            f"Borel sums are defined on open Stokes regions, not {ctx.region!r}; "
            "approach the boundary through a region limit instead")


def _ray_field(ctx: StokesContext, sign: str) -> RayField:
    return RayField(0 if sign == "+" else 1, ctx.kappa)


def laplace_sum(sign: str, ctx: StokesContext, eta: float, tol: float = 1e-10,
                field: RayField | None = None) -> BorelSum:
    """Borel sum of the normalized WKB solution along its summation ray.

    The integrand is the branch combination for the requested sign:
    (g_1 - g_2)/sqrt(pi) for "+", i (g_1 - g_3)/sqrt(pi) for "-".
    """
    if sign not in ("+", "-"):
        raise PreconditionError(f"sign must be '+' or '-', got {sign!r}")
    if eta <= 0:
        raise PreconditionError("eta must be positive")
    _require_summable(ctx)
    ray = field if field is not None else _ray_field(ctx, sign)
    inv_pref = 1.0 / (SQRT_PI * ctx.x)

    if sign == "+":
        def integrand(t: float) -> complex:
            g1, g2, _ = ray.triple(t)
            return (g1 - g2) * inv_pref
        alpha = ctx.alpha_plus
    else:
        def integrand(t: float) -> complex:
            g1, _, g3 = ray.triple(t)
            return 1j * (g1 - g3) * inv_pref
        alpha = ctx.alpha_minus

    raw, err = _laplace_quadrature(integrand, eta, tol)
    scale = cmath.exp(-alpha * eta)
    return BorelSum(sign, ctx.region, eta, raw * scale, err * abs(scale))


def _delta_integrand_factory(ctx: StokesContext, loop_steps: int):
    """Discontinuity of branch 3 at the "-" singular point along the "-" ray.

    Outside the series zone the continuation-once-around value comes from an
    honest numeric monodromy loop.  Inside the zone the loop geometry would
    sit at rounding distance from the branch point, so the continuation is
    evaluated on the exact local element instead: one turn flips the local
    root, i.e. the looped value is the series at -w.
    """
    ray = _ray_field(ctx, "-")

    def delta_g3(t: float) -> complex:
        triple = ray.triple(t)
        rho = abs(ctx.kappa) * t
        if rho <= _SERIES_HANDOFF:
            looped = anchored_g_triple(1, -ray._local_root(t))
        else:
            looped = monodromy_triple(ctx.ray_point("-", t), triple, 1.0 + 0j,
                                      n_steps=loop_steps)
        return looped[2] - triple[2]

    return delta_g3


def gamma_term(ctx: StokesContext, eta: float, tol: float = 1e-8,
               loop_steps: int = 32) -> BorelSum:
    """The branch-cut contribution picked up by the continued "+" sum.

    Computed through the discontinuity reduction: the loop integral around the
    cut equals -1/sqrt(pi) times the Laplace integral of Delta g_3 along the
    "-" ray, with Delta evaluated by honest numeric monodromy loops at each
    quadrature node.
    """
    _require_summable(ctx)
    delta_g3 = _delta_integrand_factory(ctx, loop_steps)
    inv_pref = 1.0 / (SQRT_PI * ctx.x)

    def integrand(t: float) -> complex:
        return -delta_g3(t) * inv_pref

    raw, err = _laplace_quadrature(integrand, eta, tol)
    scale = cmath.exp(-ctx.alpha_minus * eta)
    return BorelSum("+", ctx.region, eta, raw * scale, err * abs(scale))


def gamma_term_literal(ctx: StokesContext, eta: float,
                       offset_angle: float = 0.12, inner_radius: float = 1e-4,
                       arc_steps: int = 96) -> complex:
    """Cross-check of the cut contribution by literal loop quadrature.

    Integrates the continued "+" integrand along an explicit contour hugging
    the "-" cut (in from one side, a small circle around the singular point
    the long way, back out on the other side), with the branch field tracked
    continuously along the path from the "+" ray anchor.  The traversal
    direction matches the clockwise convention whose sign is pinned by the
    discontinuity reduction.
    """
    _require_summable(ctx)
    kappa = ctx.kappa
    theta = cmath.phase(kappa)
    decay = max(-math.log(1e-9), 30.0)
    t_max = decay / eta
    rho_max = abs(kappa) * t_max

    def s_at(rho: float, ang: float) -> complex:
        return 1 + rho * cmath.exp(1j * ang)

    def y_of(s: complex) -> complex:
        return (4.0 / 3.0) * ctx.x_three_halves * (s - 0.5)

    # branch field connected to the "+" ray: start near s = 0 on that ray
    start_s = _SERIES_HANDOFF * kappa / abs(kappa)
    triple = anchored_g_triple(0, sqrt_s(start_s))
    state = {"s": start_s, "triple": triple}

    def advance(s_to: complex) -> tuple:
        state["triple"] = continue_triple([state["s"], s_to], state["triple"],
                                          max_step=0.03)
        state["s"] = s_to
        return state["triple"]

    def integrand(s: complex) -> complex:
        g1, g2, _ = advance(s)
        return (g1 - g2) / (SQRT_PI * ctx.x) * cmath.exp(-y_of(s) * eta)

    total = 0j
    # side A: inward along angle theta + offset
    ang_a = theta + offset_angle
    rho_grid = np.geomspace(inner_radius, rho_max, 160)[::-1]
    prev = s_at(rho_grid[0], ang_a)
    advance(prev)
    for rho in rho_grid[1:]:
        s_next = s_at(rho, ang_a)
        total += 0.5 * (integrand(prev) + integrand(s_next)) * (s_next - prev)
        prev = s_next
    # around the singular point the long way (through theta + pi)
    for k in range(1, arc_steps + 1):
        ang = ang_a + (2 * math.pi - 2 * offset_angle) * k / arc_steps
        s_next = s_at(inner_radius, ang)
        total += 0.5 * (integrand(prev) + integrand(s_next)) * (s_next - prev)
        prev = s_next
    # side B: outward along angle theta - offset (reached around the loop)
    ang_b = ang_a + 2 * math.pi - 2 * offset_angle
    for rho in np.geomspace(inner_radius, rho_max, 160)[1:]:
        s_next = s_at(rho, ang_b)
        total += 0.5 * (integrand(prev) + integrand(s_next)) * (s_next - prev)
        prev = s_next
    return total * (4.0 / 3.0) * ctx.x_three_halves


def continue_plus_sum_across(ctx: StokesContext, eta: float, tol: float = 1e-8,
                             literal_loop: bool = False) -> tuple[BorelSum, complex]:
    """Analytic continuation of the region-I "+" Borel sum into region II.

    Returns (continued sum, cut contribution).  The continued sum is the
    direct region-II integral plus the cut term from the deformed path; with
    ``literal_loop`` the cut term is recomputed by explicit loop quadrature
    instead of the discontinuity reduction.
    """
    if ctx.region != REGION_II:
        raise PreconditionError("continuation across the Stokes line targets region II")
    direct = laplace_sum("+", ctx, eta, tol)
    if literal_loop:
        cut = gamma_term_literal(ctx, eta)
        err = direct.quadrature_error_estimate
    else:
        cut_sum = gamma_term(ctx, eta, tol)
        cut = cut_sum.value
        err = direct.quadrature_error_estimate + cut_sum.quadrature_error_estimate
    return (BorelSum("+", REGION_I, eta, direct.value + cut, err), cut)


def minus_sum_continued_from_region_I(ctx: StokesContext, eta: float,
                                      tol: float = 1e-10,
                                      reference_angle: float = 0.45) -> BorelSum:
    """The region-I "-" Borel sum continued to a region-II point.

    The "-" singular point never meets the "-" ray while x crosses the
    positive real axis, so the continuation is again a plain ray integral.
    The branch anchor is carried over by explicit continuation along an arc
    from a region-I ray direction; matching the carried triple against the
    two candidate root orientations decides whether the sheet flipped.  It
    never does (that is the point of the check), and the resulting sum must
    agree with the direct region-II evaluation.
    """
    if ctx.region != REGION_II:
        raise PreconditionError("continuation targets region II")
    rho0 = _SERIES_HANDOFF
    theta_target = cmath.phase(ctx.kappa)
    # region-I rays have arg kappa in (0, pi): anchor there and rotate down
    s_ref = 1 + rho0 * cmath.exp(1j * reference_angle)
    triple = anchored_g_triple(1, ray_local_root(s_ref))
    arc = [1 + rho0 * cmath.exp(1j * (reference_angle + (theta_target - reference_angle) * k / 24))
           for k in range(1, 25)]
    carried = continue_triple([s_ref, *arc], triple, max_step=0.03)
    s_probe = 1 + rho0 * cmath.exp(1j * theta_target)
    orientation = None
    for nu in (1.0, -1.0):
        candidate = anchored_g_triple(1, nu * ray_local_root(s_probe))
        if max(abs(a - b) for a, b in zip(candidate, carried)) < 1e-8:
            orientation = nu
            break
    if orientation is None:
        raise NumericError("carried anchor matches neither root orientation")
    field = RayField(1, ctx.kappa, orientation=orientation)
    # deliberately different refinement target so the two evaluations do not
    # share a panel structure
    out = laplace_sum("-", ctx, eta, tol * 0.3, field=field)
    return BorelSum("-", REGION_I, eta, out.value, out.quadrature_error_estimate)


# ---------------------------------------------------------------------------
# independent Airy oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AiryValues:
    ai: complex
    bi: complex
    ai_prime: complex
    bi_prime: complex


AIRY_ORACLE_MAX_ABS = 40.0


def airy_reference(z: complex, tol: float = 1e-12) -> AiryValues:
    """Ai, Bi and derivatives from their Maclaurin series, summed in adaptive
    precision so the cancellation at moderate |z| stays controlled.

    Independent of every WKB code path.  Double-precision-reliable up to
    |z| ~ 6 on its own; beyond that the working precision grows like
    |z|^(3/2) and the hard cap is |z| <= 40.  Accuracy near the real zeros
    of Ai and Bi is absolute (scaled to the larger of the two), not relative.
    """
    z = complex(z)
    r = abs(z)
    if r > AIRY_ORACLE_MAX_ABS:
        raise PreconditionError(
            f"|z| = {r:.3g} outside the oracle's documented range (<= {AIRY_ORACLE_MAX_ABS})")
    dps = 25 + int(0.62 * r ** 1.5)
    for _ in range(4):
        values, lost_ok = _airy_series_attempt(z, dps, tol)
        if lost_ok:
            return values
        dps = int(dps * 1.6) + 10
    raise NumericError("airy_reference could not reach the requested accuracy")


def _airy_series_attempt(z: complex, dps: int, tol: float):
    with mpmath.workdps(dps):
        zm = mpmath.mpc(z)
        z3 = zm ** 3
        f = mpmath.mpc(1)
        fp = mpmath.mpc(0)   # f'
        g = zm
        gp = mpmath.mpc(1)   # g'
        term_f = mpmath.mpc(1)
        term_g = zm
        max_mag = mpmath.mpf(1)
        eps = mpmath.mpf(10) ** (-(dps + 3))
        k = 1
        while True:
            term_f = term_f * z3 / (3 * k * (3 * k - 1))
            term_g = term_g * z3 / (3 * k * (3 * k + 1))
            f += term_f
            g += term_g
            if z != 0:
                fp += term_f * (3 * k) / zm
            gp += term_g * (3 * k + 1) / zm if z != 0 else 0
            max_mag = max(max_mag, abs(term_f), abs(term_g))
            if abs(term_f) < eps * max_mag and abs(term_g) < eps * max_mag:
                break
            k += 1
            if k > 100000:
                raise NumericError("Airy series did not terminate")
        c1 = mpmath.power(3, mpmath.mpf(-2) / 3) / mpmath.gamma(mpmath.mpf(2) / 3)
        c2 = mpmath.power(3, mpmath.mpf(-1) / 3) / mpmath.gamma(mpmath.mpf(1) / 3)
        sqrt3 = mpmath.sqrt(3)
        ai = c1 * f - c2 * g
        bi = sqrt3 * (c1 * f + c2 * g)
        aip = c1 * fp - c2 * gp
        bip = sqrt3 * (c1 * fp + c2 * gp)
        # enough digits must survive the cancellation for every output
        floor = max_mag * mpmath.mpf(10) ** (-(dps - 8))
        ok = all(abs(v) > floor or abs(v) == 0
                 for v in (ai, bi)) and mpmath.mpf(10) ** (-dps + 8) * max_mag < tol * max(abs(ai), abs(bi))
        values = AiryValues(complex(ai), complex(bi), complex(aip), complex(bip))
    return values, ok


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AiryLinkReport:
    """Residuals of the Ai/Bi identities against the series oracle."""

    x: complex
    eta: float
    region: str
    ai_residual: float
    bi_residual: float
    inverse_plus_residual: float
    inverse_minus_residual: float
    tol: float
    psi_plus: complex
    psi_minus: complex
    ai: complex
    bi: complex
    quadrature_error: float

    @property
    def max_residual(self) -> float:
        return max(self.ai_residual, self.bi_residual,
                   self.inverse_plus_residual, self.inverse_minus_residual)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol


def verify_airy_connection(x: complex, eta: float, tol: float = 1e-6,
                           quad_tol: float = 1e-10) -> AiryLinkReport:
    """Check the expressions of Ai and Bi through the two Borel sums at x.

    In region I:  Ai = eta^(1/3) Psi_- / (2 sqrt(pi)),
                  Bi = eta^(1/3) Psi_+ / sqrt(pi) - i eta^(1/3) Psi_- / (2 sqrt(pi));
    in region II the Bi relation carries +i instead.  The inverse expressions
    of Psi_+- through Ai and Bi are checked as well.
    """
    ctx = classify_stokes(x)
    _require_summable(ctx)
    plus_sum = laplace_sum("+", ctx, eta, quad_tol)
    minus_sum = laplace_sum("-", ctx, eta, quad_tol)
    psi_plus = plus_sum.value
    psi_minus = minus_sum.value
    z = eta ** (2.0 / 3.0) * complex(x)
    oracle = airy_reference(z)
    cbrt = eta ** (1.0 / 3.0)
    i_sign = -1j if ctx.region == REGION_I else 1j

    ai_pred = cbrt * psi_minus / (2 * SQRT_PI)
    bi_pred = cbrt * psi_plus / SQRT_PI + i_sign * cbrt * psi_minus / (2 * SQRT_PI)
    ai_res = abs(ai_pred - oracle.ai) / abs(oracle.ai)
    bi_res = abs(bi_pred - oracle.bi) / abs(oracle.bi)

    plus_pred = SQRT_PI / cbrt * (-i_sign * oracle.ai + oracle.bi)
    minus_pred = 2 * SQRT_PI / cbrt * oracle.ai
    inv_plus = abs(plus_pred - psi_plus) / abs(psi_plus)
    inv_minus = abs(minus_pred - psi_minus) / abs(psi_minus)
    quad_err = (plus_sum.quadrature_error_estimate / max(abs(psi_plus), 1e-300)
                + minus_sum.quadrature_error_estimate / max(abs(psi_minus), 1e-300))
    return AiryLinkReport(complex(x), eta, ctx.region, ai_res, bi_res,
                          inv_plus, inv_minus, tol, psi_plus, psi_minus,
                          oracle.ai, oracle.bi, quad_err)


@dataclass(frozen=True)
class VorosReport:
    """Jump of the "+" sum and invariance of the "-" sum across the Stokes line."""

    x: complex
    eta: float
    plus_continued: complex
    plus_direct: complex
    minus_direct: complex
    minus_continued: complex
    cut_contribution: complex
    plus_residual: float
    minus_residual: float
    cut_vs_jump_residual: float

    def passed(self, plus_tol: float, minus_tol: float) -> bool:
        return self.plus_residual < plus_tol and self.minus_residual < minus_tol


def verify_voros(x: complex, eta: float, quad_tol: float = 1e-10) -> VorosReport:
    """Numerically witness the connection formula at a region-II point.

    The continued "+" sum comes from the deformed path (direct region-II ray
    plus the cut term from numeric monodromy); the jump must equal
    i * (the "-" sum), and the "-" sum itself must not jump.
    """
    ctx = classify_stokes(x)
    if ctx.region != REGION_II:
        raise PreconditionError("the Voros check samples x in region II")
    plus_cont, cut = continue_plus_sum_across(ctx, eta, quad_tol)
    plus_direct = laplace_sum("+", ctx, eta, quad_tol)
    minus_direct = laplace_sum("-", ctx, eta, quad_tol)
    minus_cont = minus_sum_continued_from_region_I(ctx, eta, quad_tol)
    plus_res = (abs(plus_cont.value - plus_direct.value - 1j * minus_direct.value)
                / abs(plus_direct.value))
    minus_res = abs(minus_cont.value - minus_direct.value) / abs(minus_direct.value)
    cut_res = abs(cut - 1j * minus_direct.value) / abs(minus_direct.value)
    return VorosReport(complex(x), eta, plus_cont.value, plus_direct.value,
                       minus_direct.value, minus_cont.value, cut,
                       plus_res, minus_res, cut_res)


def formal_solution_partial_sum(sign: str, x: complex, eta: float,
                                n_terms: int) -> complex:
    """Truncated normalized WKB solution, for Watson-style consistency checks."""
    from .airy_wkb import wkb_coefficient_stream

    stream = wkb_coefficient_stream(n_terms - 1, sign)
    x32 = cmath.exp(1.5 * cmath.log(complex(x)))
    w = 1.0 / (eta * x32)
    series = sum(float(c) * w ** n for n, c in enumerate(stream.coeffs))
    prefactor = eta ** -0.5 * cmath.exp(-0.25 * cmath.log(complex(x)))
    sign_factor = 1.0 if sign == "+" else -1.0
    return prefactor * cmath.exp(sign_factor * (2.0 / 3.0) * x32 * eta) * series
