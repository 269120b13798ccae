"""Branches of the Borel-plane algebraic function and their continuation.

Scaling g by x removes all x-dependence: G = x*g satisfies

    16 s (1-s) G^3 - 3 G - 1 = 0

with polynomial coefficients in the normalized Borel variable s, while
X = G * s^(1/2) (1-s)^(1/2) satisfies 16 X^3 - 3 X = s^(1/2) (1-s)^(1/2).
All continuation runs on G (single-valued coefficients, honest monodromy);
X-values are derived through the square-root rule of the caller.

Branch labels follow the local expansions at the two base points:

    index 1: leading constant +sqrt(3)/4   (unbounded at both base points)
    index 2: -sqrt(3)/4 at s=0, bounded (-1/3) at s=1
    index 3: bounded (-1/3) at s=0, -sqrt(3)/4 at s=1

which is exactly the correspondence produced by continuation along the real
interval (0,1); branches 2 and 3 cross at s = 1/2 where the tracker switches
to the local crossing chart and disambiguates by the sign of the linear term.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .airy_borel import borel_series
from .errors import NumericError, PreconditionError
from .series import ExactScalar, PuiseuxSeries

SQRT3 = 3.0 ** 0.5

# |s - base| below which branch values come from the exact local series.
SERIES_ZONE = 0.10
ANCHOR_SERIES_TERMS = 32

# Crossing chart around s = 1/2.
CHART_ZONE = 0.04
CHART_TIGHT = 2e-3
CHART_TERMS = 16

DEFAULT_STEP = 0.01
MATCH_MARGIN = 3.0
MAX_HALVINGS = 40

_LABEL_SWAP_AT_1 = {1: 1, 2: 3, 3: 2}  # anchor-1 label -> anchor-0 series shape


# ---------------------------------------------------------------------------
# square-root determinations
# ---------------------------------------------------------------------------

def sqrt_s(s: complex) -> complex:
    """Principal root; positive for s > 0, matching the base-point convention."""
    return cmath.sqrt(s)


def sqrt_one_minus_s(s: complex) -> complex:
    """Principal root of 1-s; positive for real s < 1."""
    return cmath.sqrt(1 - s)


def ray_local_root(s: complex) -> complex:
    """(1-s)^(1/2) along summation rays past s = 1: the i-orientation rule.

    Fixed as (s-1)^(1/2) = e^(-i pi/2) (1-s)^(1/2), i.e. (1-s)^(1/2) =
    i * principal_sqrt(s-1).  This is the lateral determination that keeps the
    "-" Borel sum continuous across the Stokes line and makes the +i prefactor
    of the "-" transform come out right; it is the package's only point of
    truth for that orientation.
    """
    return 1j * cmath.sqrt(s - 1)


def default_sqrt_rule(s: complex) -> complex:
    """s^(1/2) (1-s)^(1/2) with principal roots on both factors."""
    return sqrt_s(s) * sqrt_one_minus_s(s)


# ---------------------------------------------------------------------------
# exact local series
# ---------------------------------------------------------------------------

def _local_c_series(var: str, trunc: Fraction) -> PuiseuxSeries:
    """Series of t^(1/2) (1-t)^(1/2) in the local variable t at either base."""
    body = PuiseuxSeries(var, {Fraction(0): 1, Fraction(1): -1}, trunc)
    return PuiseuxSeries.monomial(var, Fraction(1, 2), 1, trunc) * body.sqrt()


def _newton_root_series(c_series: PuiseuxSeries, seed: PuiseuxSeries,
                        trunc: Fraction) -> PuiseuxSeries:
    """Solve 16 X^3 - 3 X - c = 0 in the truncated Puiseux ring by Newton."""
    x = seed.truncate(trunc)
    for _ in range(200):
        f = x * x * x * 16 - x * 3 - c_series
        if f.is_zero():
            return x
        fp = x * x * 48 - 3
        step = f / fp
        x = x - step
        v = step.valuation()
        if v is not None and v >= trunc:
            return x
    raise NumericError("series Newton did not stabilize")


@lru_cache(maxsize=None)
def _x_series_shape(shape: int, n_terms: int) -> PuiseuxSeries:
    """Anchor-0 expansion of X for the given seed shape, in the local variable.

    shape 1: +sqrt(3)/4 + t^(1/2)/6 + ...; shape 2: the -sqrt(3)/4 mirror;
    shape 3: the bounded branch -(1/3) t^(1/2) - ...
    """
    var = "t"
    trunc = Fraction(n_terms, 2)
    c = _local_c_series(var, trunc)
    if shape == 1:
        seed = PuiseuxSeries.monomial(var, 0, ExactScalar(0, Fraction(1, 4)), trunc)
    elif shape == 2:
        seed = PuiseuxSeries.monomial(var, 0, ExactScalar(0, Fraction(-1, 4)), trunc)
    elif shape == 3:
        seed = PuiseuxSeries.monomial(var, Fraction(1, 2), Fraction(-1, 3), trunc)
    else:
        raise PreconditionError(f"unknown branch shape {shape}")
    return _newton_root_series(c, seed, trunc)


@lru_cache(maxsize=None)
def _g_series_shape(shape: int, n_terms: int) -> PuiseuxSeries:
    """Anchor expansion of the scaled branch G = X / (t^(1/2)(1-t)^(1/2))."""
    x_series = _x_series_shape(shape, n_terms + 2)
    c = _local_c_series("t", Fraction(n_terms + 2, 2))
    return (x_series / c).truncate(Fraction(n_terms - 1, 2))


@dataclass(frozen=True)
class BranchLabel:
    """Identifies one root of the cubic family by its local expansion."""

    family: str          # "X" or "g"
    index: int           # 1, 2, 3
    anchor: int          # base point: 0 or 1

    def __post_init__(self):
        if self.family not in ("X", "g"):
            raise PreconditionError(f"unknown family {self.family!r}")
        if self.index not in (1, 2, 3):
            raise PreconditionError(f"branch index must be 1..3, got {self.index}")
        if self.anchor not in (0, 1):
            raise PreconditionError(f"anchor must be 0 or 1, got {self.anchor}")


@dataclass(frozen=True)
class BranchValue:
    """A branch label with its current value along a continuation path."""

    label: BranchLabel
    s: complex
    value: complex
    path_history: tuple = ()


@dataclass(frozen=True)
class GBranch:
    """A scaled branch value together with the x it belongs to (g = G/x)."""

    x: complex
    underlying: BranchValue

    @property
    def g_value(self) -> complex:
        return self.underlying.value / self.x


def branch_series(label: BranchLabel, order: int) -> PuiseuxSeries:
    """Exact local expansion, to ``order`` half-integer steps, at the anchor.

    The local variable is s^(1/2) at anchor 0 and (1-s)^(1/2) at anchor 1
    (series returned in the symbolic variable "t" = local s).  Family "g"
    returns the x-scaled branch G = x*g.
    """
    if order < 1:
        raise PreconditionError("order must be >= 1")
    shape = label.index if label.anchor == 0 else _LABEL_SWAP_AT_1[label.index]
    if label.family == "X":
        return _x_series_shape(shape, order)
    return _g_series_shape(shape, order)


@lru_cache(maxsize=None)
def _crossing_charts(n_terms: int) -> tuple:
    """Exact expansions at s = 1/2: (X for branch 2, X for branch 3, X simple,
    and the same three in G form), all in the local variable d = s - 1/2."""
    var = "d"
    trunc = Fraction(n_terms)
    c = PuiseuxSeries(var, {Fraction(0): Fraction(1, 4), Fraction(2): -1}, trunc).sqrt()
    quarter = Fraction(-1, 4)
    seed_plus = PuiseuxSeries(var, {Fraction(0): quarter,
                                    Fraction(1): ExactScalar(0, Fraction(1, 6))}, trunc)
    seed_minus = PuiseuxSeries(var, {Fraction(0): quarter,
                                     Fraction(1): ExactScalar(0, Fraction(-1, 6))}, trunc)
    seed_simple = PuiseuxSeries.monomial(var, 0, Fraction(1, 2), trunc)
    x_plus = _newton_root_series(c, seed_plus, trunc)
    x_minus = _newton_root_series(c, seed_minus, trunc)
    x_simple = _newton_root_series(c, seed_simple, trunc)
    return (x_plus, x_minus, x_simple,
            x_plus / c, x_minus / c, x_simple / c)


def crossing_chart_series(branch: str, family: str = "X",
                          n_terms: int = CHART_TERMS) -> PuiseuxSeries:
    """Local expansion at the branch crossing s = 1/2.

    ``branch``: "plus" / "minus" for the two crossing branches (labels 2 and 3
    from anchor 0, in that order), "simple" for the third root.
    """
    charts = _crossing_charts(n_terms)
    idx = {"plus": 0, "minus": 1, "simple": 2}[branch]
    return charts[idx + (0 if family == "X" else 3)]


# ---------------------------------------------------------------------------
# numeric roots
# ---------------------------------------------------------------------------

def _depressed_cubic_roots(p: complex, q: complex) -> tuple[complex, complex, complex]:
    """Roots of t^3 + p t + q by Cardano, deterministic branch choices."""
    if p == 0 and q == 0:
        return (0j, 0j, 0j)
    disc = (q / 2) ** 2 + (p / 3) ** 3
    u3 = -q / 2 + cmath.sqrt(disc)
    if abs(u3) < 1e-30:
        u3 = -q / 2 - cmath.sqrt(disc)
    u = u3 ** (1.0 / 3.0)
    omega = complex(-0.5, SQRT3 / 2)
    roots = []
    for k in range(3):
        uk = u * omega ** k
        roots.append(uk - p / (3 * uk))
    return tuple(roots)


def _polish_cubic(a3: complex, a1: complex, a0: complex, root: complex,
                  iterations: int = 8) -> complex:
    """Newton polish of a root of a3 t^3 + a1 t + a0 (guarded near F' = 0)."""
    t = root
    for _ in range(iterations):
        f = (a3 * t * t * t) + a1 * t + a0
        fp = 3 * a3 * t * t + a1
        if abs(fp) < 1e-13 * max(1.0, abs(a3 * t * t)):
            break
        step = f / fp
        t -= step
        if abs(step) <= 1e-16 * max(1.0, abs(t)):
            break
    return t


def solve_cubic_g(s: complex) -> tuple[complex, complex, complex]:
    """All roots of 16 s (1-s) G^3 - 3 G - 1 = 0, unordered but polished."""
    a3 = 16 * s * (1 - s)
    if abs(a3) < 1e-12:
        raise NumericError(f"cubic degenerates at s = {s}")
    p = -3 / a3
    q = -1 / a3
    return tuple(_polish_cubic(a3, -3, -1, r) for r in _depressed_cubic_roots(p, q))


def solve_cubic_x(s: complex, sqrt_rule=default_sqrt_rule,
                  cluster_tol: float = 1e-6) -> tuple[complex, complex, complex]:
    """All roots of 16 X^3 - 3 X - c = 0 with c = s^(1/2)(1-s)^(1/2).

    Near-double roots (c near +-1/2) are refined on the derivative 48 X^2 - 3,
    whose simple zero pins the double root to full precision; the remaining
    simple root then follows from the vanishing root sum.  Roots are returned
    sorted by (real, imag).
    """
    c = sqrt_rule(s)
    roots = [(_polish_cubic(16, -3, -c, r))
             for r in _depressed_cubic_roots(-3 / 16, -c / 16)]
    # double-root repair
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(roots[i] - roots[j]) < cluster_tol:
                mean = (roots[i] + roots[j]) / 2
                x_d = 0.25 if mean.real >= 0 else -0.25
                # Newton on F' = 48 X^2 - 3 from the cluster mean
                t = complex(mean)
                for _ in range(60):
                    step = (48 * t * t - 3) / (96 * t)
                    t -= step
                    if abs(step) < 1e-16:
                        break
                if abs(16 * t**3 - 3 * t - c) < 1e-10:
                    k = 3 - i - j
                    third = -2 * t
                    roots = [t, t, _polish_cubic(16, -3, -c, third)]
                break
    roots.sort(key=lambda z: (round(z.real, 13), round(z.imag, 13)))
    return tuple(roots)


# ---------------------------------------------------------------------------
# anchored values and continuation
# ---------------------------------------------------------------------------

def _series_complex_eval(series: PuiseuxSeries, local: complex) -> complex:
    root = None
    total = 0j
    for e, coeff in series.terms.items():
        if e.denominator == 1:
            power = local ** e.numerator
        else:
            if root is None:
                root = cmath.sqrt(local)
            power = root ** e.numerator
        total += complex(coeff) * power
    return total


def anchored_g_triple(anchor: int, local_root: complex,
                      n_terms: int = ANCHOR_SERIES_TERMS) -> tuple[complex, complex, complex]:
    """(G_1, G_2, G_3) near a base point, from the exact series.

    ``local_root`` is the chosen determination of s^(1/2) (anchor 0) or
    (1-s)^(1/2) (anchor 1); passing it explicitly is what selects the branch
    orientation, see ``ray_local_root``.
    """
    if local_root == 0:
        raise PreconditionError("branch values diverge at the base point itself")
    out = []
    for index in (1, 2, 3):
        shape = index if anchor == 0 else _LABEL_SWAP_AT_1[index]
        series = _g_series_shape(shape, n_terms)
        total = 0j
        for e, coeff in series.terms.items():
            out_power = local_root ** e.numerator if e.denominator == 2 \
                else local_root ** (2 * e.numerator)
            total += complex(coeff) * out_power
        out.append(total)
    return tuple(out)


def _chart_pair_values(delta: complex) -> tuple[complex, complex]:
    """(G for chart branch plus, minus) at s = 1/2 + delta, from exact series."""
    plus = crossing_chart_series("plus", "g")
    minus = crossing_chart_series("minus", "g")
    return (_series_complex_eval(plus, delta), _series_complex_eval(minus, delta))


def _chart_simple_value(delta: complex) -> complex:
    return _series_complex_eval(crossing_chart_series("simple", "g"), delta)


def _match_by_predictor(predicted: tuple, candidates: list,
                        scale: float) -> tuple | None:
    """Assign each predicted value the nearest candidate; None on ambiguity."""
    taken = [False] * 3
    result = [None] * 3
    for i, p in enumerate(predicted):
        dists = sorted(((abs(p - c) / scale, j) for j, c in enumerate(candidates)))
        best, jbest = dists[0]
        second = dists[1][0]
        if taken[jbest] or (best > 0 and second < MATCH_MARGIN * best):
            return None
        taken[jbest] = True
        result[i] = candidates[jbest]
    return tuple(result)


def _g_derivatives(s: complex, g: complex) -> complex:
    """dG/ds from implicit differentiation of the scaled cubic."""
    f_s = 16 * (1 - 2 * s) * g ** 3
    f_g = 48 * s * (1 - s) * g ** 2 - 3
    if abs(f_g) < 1e-12:
        return 0j
    return -f_s / f_g


def _step_triple(s0: complex, triple: tuple, s1: complex, depth: int = 0) -> tuple:
    """One continuation step for the ordered root triple of the scaled cubic."""
    if depth > MAX_HALVINGS:
        raise NumericError(f"continuation step underflow near s = {s0}")

    in_chart = abs(s1 - 0.5) < CHART_ZONE or abs(s0 - 0.5) < CHART_ZONE
    if in_chart:
        return _step_triple_chart(s0, triple, s1, depth)

    ds = s1 - s0
    predicted = tuple(g + _g_derivatives(s0, g) * ds for g in triple)
    candidates = list(solve_cubic_g(s1))
    scale = max(1.0, max(abs(g) for g in triple))
    matched = _match_by_predictor(predicted, candidates, scale)
    if matched is None:
        mid = (s0 + s1) / 2
        half = _step_triple(s0, triple, mid, depth + 1)
        return _step_triple(mid, half, s1, depth + 1)
    return matched


def _step_triple_chart(s0: complex, triple: tuple, s1: complex, depth: int) -> tuple:
    """Continuation step near the crossing, matched against the exact chart.

    Each tracked branch is classified against chart values at the current
    point; the classification (plus / minus / simple) is then re-evaluated at
    the target point.  The two crossing branches pass each other analytically,
    so the classification is stable through delta = 0.
    """
    d0, d1 = s0 - 0.5, s1 - 0.5
    if max(abs(d0), abs(d1)) > 2.5 * CHART_ZONE:
        # too far for the chart to be trusted; force smaller steps
        mid = (s0 + s1) / 2
        half = _step_triple(s0, triple, mid, depth + 1)
        return _step_triple(mid, half, s1, depth + 1)

    ref0 = (*_chart_pair_values(d0), _chart_simple_value(d0))
    ref1 = (*_chart_pair_values(d1), _chart_simple_value(d1))
    assignment = []
    for g in triple:
        dists = sorted((abs(g - r), k) for k, r in enumerate(ref0))
        assignment.append(dists[0][1])
    if sorted(assignment) != [0, 1, 2]:
        if abs(d0) < 1e-12:
            # started exactly at the collision: both crossing values coincide,
            # order is conventional
            seen = set()
            for i, g in enumerate(triple):
                dists = sorted((abs(g - r), k) for k, r in enumerate(ref0)
                               if k not in seen)
                assignment[i] = dists[0][1]
                seen.add(assignment[i])
        else:
            raise NumericError(f"chart classification ambiguous at s = {s0}")

    out = []
    for i in range(3):
        target = ref1[assignment[i]]
        if abs(d1) > CHART_TIGHT:
            target = _polish_cubic(16 * s1 * (1 - s1), -3, -1, target)
        out.append(target)
    return tuple(out)


COLLISION_NUDGE = 1e-4


def continue_triple(path: list, triple: tuple,
                    max_step: float = DEFAULT_STEP) -> tuple:
    """Continue an ordered root triple along a polyline of s-waypoints.

    Interior grid points falling onto the crossing point s = 1/2 are nudged
    along the direction of travel: the branches are analytic through the
    crossing, but their identities cannot be read off from the collided value
    itself, so the tracker must not sample exactly there.
    """
    grid = [complex(path[0])]
    for s_next in path[1:]:
        s_prev = grid[-1]
        span = abs(s_next - s_prev)
        n = max(1, int(span / max_step) + 1)
        for k in range(1, n + 1):
            grid.append(s_prev + (s_next - s_prev) * k / n)
    for i in range(1, len(grid) - 1):
        if abs(grid[i] - 0.5) < COLLISION_NUDGE:
            direction = grid[i + 1] - grid[i - 1]
            direction /= max(abs(direction), 1e-30)
            grid[i] = grid[i] + 2 * COLLISION_NUDGE * direction
    current = triple
    for k in range(1, len(grid)):
        current = _step_triple(grid[k - 1], current, grid[k])
    return current


def start_branch(label: BranchLabel, s: complex) -> BranchValue:
    """A BranchValue at a point near the label's anchor, from the exact series."""
    local = sqrt_s(s) if label.anchor == 0 else sqrt_one_minus_s(s)
    rho = abs(s - label.anchor)
    if rho > 0.35:
        raise PreconditionError("start point too far from the anchor for the series")
    triple = anchored_g_triple(label.anchor, local)
    value = triple[label.index - 1]
    if label.family == "X":
        value *= local * (sqrt_one_minus_s(s) if label.anchor == 0 else sqrt_s(s))
    return BranchValue(label, s, value, (s,))


def continue_branch(start: BranchValue, path: list,
                    max_step: float = DEFAULT_STEP) -> BranchValue:
    """Track one labeled branch along a polyline of s-waypoints.

    Drags the full root triple (nearest-root matching with a >= 3x margin,
    adaptive halving, crossing chart near s = 1/2) and returns the branch
    with updated value and history.  For family "X" the value is converted
    with the principal square-root rule, which is the meaningful convention
    on the real interval where X-labels are defined.
    """
    label = start.label
    s0 = start.s
    if label.family == "X":
        g_start = start.value / default_sqrt_rule(s0)
    else:
        g_start = start.value
    triple = list(solve_cubic_g(s0))
    # replace the nearest root by the exact tracked value, keep the others
    nearest = min(range(3), key=lambda i: abs(triple[i] - g_start))
    triple[nearest] = g_start
    order = [nearest] + [i for i in range(3) if i != nearest]
    ordered = tuple(triple[i] for i in order)
    final = continue_triple([s0, *path], ordered, max_step)
    value = final[0]
    s_end = path[-1]
    if label.family == "X":
        value *= default_sqrt_rule(s_end)
    return BranchValue(label, s_end, value, start.path_history + tuple(path))


# ---------------------------------------------------------------------------
# monodromy and discontinuities
# ---------------------------------------------------------------------------

def _loop_path(s: complex, center: complex, n_steps: int, radius_cap: float = 0.35):
    """A closed path from s once counterclockwise around ``center``.

    Walks radially in to a capped radius, circles, and walks back out, so the
    circle never strays near the other branch point or the crossing.
    """
    rho = abs(s - center)
    if rho < 1e-9:
        raise PreconditionError("cannot loop around the point itself")
    r0 = min(rho, radius_cap)
    direction = (s - center) / rho
    path = []
    if rho > r0:
        path.append(center + direction * r0)
    phase0 = cmath.phase(direction)
    for k in range(1, n_steps + 1):
        ang = phase0 + 2 * cmath.pi * k / n_steps
        path.append(center + r0 * cmath.exp(1j * ang))
    if rho > r0:
        path.append(s)
    return path


def monodromy_triple(s: complex, triple: tuple, center: complex,
                     n_steps: int = 24) -> tuple:
    """Continue the ordered triple once counterclockwise around ``center``."""
    return continue_triple([s, *_loop_path(s, center, n_steps)], triple,
                           max_step=0.12)


def discontinuity(value: BranchValue, singular_point: int,
                  n_steps: int = 48) -> complex:
    """Delta of a branch at one of the square-root points, evaluated at value.s.

    ``singular_point`` is the base point in s (0 for y = -(2/3) x^(3/2), 1 for
    y = +(2/3) x^(3/2)); the loop is counterclockwise, which in y is the same
    orientation for every x.  Returns continuation-around minus the value.
    With the labeling used here, Delta at 0 of branch 2 is g_1 - g_2 and Delta
    at 1 of branch 3 is g_1 - g_3.
    """
    if singular_point not in (0, 1):
        raise PreconditionError("singular point must be the base point 0 or 1")
    if value.label.family != "g":
        raise PreconditionError("discontinuity is defined for the scaled branches")
    triple = list(solve_cubic_g(value.s))
    nearest = min(range(3), key=lambda i: abs(triple[i] - value.value))
    rest = [triple[i] for i in range(3) if i != nearest]
    ordered = (value.value, *rest)
    looped = monodromy_triple(value.s, ordered, complex(singular_point), n_steps)
    return looped[0] - value.value


# ---------------------------------------------------------------------------
# exact identity verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchIdentityReport:
    order: Fraction
    plus_identity: bool
    minus_identity: bool
    sum_zero_anchor0: bool
    sum_zero_anchor1: bool
    two_g1_plus_g2_form: bool

    @property
    def passed(self) -> bool:
        return (self.plus_identity and self.minus_identity
                and self.sum_zero_anchor0 and self.sum_zero_anchor1
                and self.two_g1_plus_g2_form)


def _series_equal_through(a: PuiseuxSeries, b: PuiseuxSeries, order: Fraction) -> bool:
    exps = {e for e in a.terms if e <= order} | {e for e in b.terms if e <= order}
    return all(a.coeff(e) == b.coeff(e) for e in exps)


def verify_branch_identities(order: int = 6) -> BranchIdentityReport:
    """Termwise identities tying the Borel expansions to branch differences.

    Checks, as exact Puiseux identities through the given s-order:
    sqrt(pi) x psi_plus_B  = (X_1 - X_2)/(s(1-s))^(1/2)   at the base point 0,
    sqrt(pi) x psi_minus_B / i = (X_1 - X_3)/(s(1-s))^(1/2) at the base point 1,
    plus the root-sum relation g_3 = -g_1 - g_2 at both base points and the
    equivalent (2 g_1 + g_2) form of the minus combination.
    """
    if order < 2:
        raise PreconditionError("order must be >= 2")
    n_terms = 2 * order + 6
    half = ExactScalar(0, Fraction(1, 2))  # sqrt(3)/2
    limit = Fraction(order)

    g_at_0 = [_g_series_shape(i, n_terms) for i in (1, 2, 3)]
    g_at_1 = [_g_series_shape(_LABEL_SWAP_AT_1[i], n_terms) for i in (1, 2, 3)]

    borel_plus = borel_series(order + 2, "+").series
    lhs_plus = PuiseuxSeries("t", borel_plus.terms, borel_plus.truncation) * half
    rhs_plus = g_at_0[0] - g_at_0[1]
    plus_ok = _series_equal_through(lhs_plus, rhs_plus, limit)

    borel_minus = borel_series(order + 2, "-").series
    lhs_minus = PuiseuxSeries("t", borel_minus.terms, borel_minus.truncation) * half
    rhs_minus = g_at_1[0] - g_at_1[2]
    minus_ok = _series_equal_through(lhs_minus, rhs_minus, limit)

    zero0 = (g_at_0[0] + g_at_0[1] + g_at_0[2]).truncate(limit).is_zero()
    zero1 = (g_at_1[0] + g_at_1[1] + g_at_1[2]).truncate(limit).is_zero()

    alt = (g_at_1[0] * 2 + g_at_1[1])
    alt_ok = _series_equal_through(alt, rhs_minus, limit)

    return BranchIdentityReport(limit, plus_ok, minus_ok, zero0, zero1, alt_ok)


# ---------------------------------------------------------------------------
# the unscaled cubic in (x, y): numeric checks of the PDE system
# ---------------------------------------------------------------------------

def solve_cubic_g_xy(x: complex, y: complex) -> tuple[complex, complex, complex]:
    """Roots of (9 y^2 - 4 x^3) g^3 + 3 x g + 1 = 0."""
    a3 = 9 * y * y - 4 * x ** 3
    if abs(a3) < 1e-12:
        raise NumericError("cubic degenerates on the caustic 4x^3 = 9y^2")
    return tuple(_polish_cubic(a3, 3 * x, 1, r)
                 for r in _depressed_cubic_roots(3 * x / a3, 1 / a3))


def g_pde_residuals(x: complex, y: complex, g: complex) -> tuple[float, float]:
    """Relative residuals of the two holonomic equations satisfied by g.

    First equation: -g_xx + x g_yy = 0; second: 2x g_x + 3y g_y + 2g = 0.
    All partials come from implicit differentiation of the cubic.
    """
    a = 9 * y * y - 4 * x ** 3
    f_g = 3 * a * g * g + 3 * x
    f_x = -12 * x * x * g ** 3 + 3 * g
    f_y = 18 * y * g ** 3
    g_x = -f_x / f_g
    g_y = -f_y / f_g
    f_xx = -24 * x * g ** 3
    f_xg = -36 * x * x * g * g + 3
    f_yy = 18 * g ** 3
    f_yg = 54 * y * g * g
    f_gg = 6 * a * g
    g_xx = -(f_xx + 2 * f_xg * g_x + f_gg * g_x * g_x) / f_g
    g_yy = -(f_yy + 2 * f_yg * g_y + f_gg * g_y * g_y) / f_g
    r1 = -g_xx + x * g_yy
    scale1 = abs(g_xx) + abs(x * g_yy) + 1e-300
    r2 = 2 * x * g_x + 3 * y * g_y + 2 * g
    scale2 = abs(2 * x * g_x) + abs(3 * y * g_y) + abs(2 * g) + 1e-300
    return (abs(r1) / scale1, abs(r2) / scale2)
