"""Analytic initial data alpha(x) = -S'(x)/2 + i A(x) and its complexification.

An InitialDataSpec bundles the callables and constants the rest of the
toolkit needs: alpha and its derivative as functions of complex x, the real
limits mu-+ of Re alpha, decay information for tail truncation, the strip of
analyticity, and (when available) a closed-form inverse of alpha used to seed
and cross-check the numerical inverse map x(z).

Branch-point bookkeeping lives here too: ramification points are the zeros of
alpha'(x); their images z* = alpha(x*) are logarithmic branch points of the
scattering data, and each spec carries the cut polylines hanging from them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (
    AtLogPoint,
    NoConvergence,
    OutsideDomain,
    ParameterOutOfRange,
    RegionOutsideDomain,
)
from .numerics import ContourPath, RootSettings, find_root

__all__ = [
    "InitialDataSpec",
    "RamificationPoint",
    "ValidationReport",
    "alpha_tilde",
    "inverse_map",
    "ramification_points",
    "validate_assumptions",
    "builtin_family",
]


@dataclass(frozen=True)
class RamificationPoint:
    """Zero x* of alpha' together with its image z* = alpha(x*)."""

    x_star: complex
    z_star: complex
    kind: str = "simple"


@dataclass(frozen=True)
class InitialDataSpec:
    """Complexified initial datum alpha = a + i b and associated structure.

    ``decay_rate`` is the slowest exponential rate kappa such that both
    b(x) and a(x) - mu+- decay like exp(-kappa |x|); it drives truncation
    heuristics.  ``decay_exponent`` is the polynomial floor p from the decay
    assumption (any exponential datum satisfies it).  ``cuts`` are z-plane
    polylines hanging from log points; ``closed_form_inverse`` maps z to the
    tuple of closed-form preimage candidates when the family has one.
    """

    alpha: Callable[[complex], complex]
    alpha_prime: Callable[[complex], complex]
    mu_minus: float
    mu_plus: float
    family_tag: str = "custom"
    decay_exponent: float = 2.0
    decay_rate: float = 1.0
    strip_height: float = 1.5
    amplitude: Optional[Callable[[float], float]] = None
    phase: Optional[Callable[[float], float]] = None
    closed_form_inverse: Optional[Callable[[complex], tuple]] = None
    log_points: tuple = ()
    cuts: tuple = ()
    parameter: Optional[float] = None
    degenerate_endpoints: bool = False
    # True when alpha maps two real points to each boundary-curve value, so
    # real-axis field paths need detours around the second preimage.
    doubly_covered_boundary: bool = False

    def a_of(self, x: complex) -> complex:
        """Analytic continuation of Re alpha: (alpha + alpha~)/2."""
        return 0.5 * (self.alpha(x) + alpha_tilde(self, x))

    def b_of(self, x: complex) -> complex:
        """Analytic continuation of Im alpha: (alpha - alpha~)/(2i)."""
        return (self.alpha(x) - alpha_tilde(self, x)) / 2j


def alpha_tilde(spec: InitialDataSpec, x: complex) -> complex:
    """Schwarz reflection alpha~(x) = conj(alpha(conj(x)))."""
    return complex(spec.alpha(complex(x).conjugate())).conjugate()


# --- inverse map -------------------------------------------------------------


def _near_log_point(spec, z, tol=1e-9):
    return any(abs(z - complex(p.z_star)) <= tol for p in spec.log_points)


def _candidate_filter(spec, z, candidates, tol=1e-8):
    good = []
    scale = 1.0 + abs(z)
    for c in candidates:
        try:
            r = abs(spec.alpha(c) - z)
        except (OverflowError, ValueError, ZeroDivisionError):
            continue
        if math.isfinite(r) and r <= tol * scale:
            good.append(complex(c))
    return good


def _continuation_inverse(spec, z, seed=None, settings=None):
    """March x along the preimage of the straight z-segment anchor -> z."""
    settings = settings or RootSettings()
    if seed is not None:
        x = complex(seed)
        z_from = spec.alpha(x)
    else:
        # Anchor at the real point whose image is closest to z.
        best_x, best_d = 0.0, float("inf")
        n = 1200
        for i in range(n + 1):
            y = -30.0 + 60.0 * i / n
            try:
                d = abs(spec.alpha(y) - z)
            except (OverflowError, ValueError):
                continue
            if d < best_d:
                best_x, best_d = y, d
        x = complex(best_x)
        z_from = spec.alpha(x)
    dz_total = z - z_from
    steps = max(8, int(abs(dz_total) / 0.02))
    for k in range(1, steps + 1):
        z_t = z_from + dz_total * (k / steps)
        dp = spec.alpha_prime(x)
        if abs(dp) < 1e-13:
            raise NoConvergence(
                f"inverse continuation hit a ramification point near {x!r}")
        x = x + (z_t - spec.alpha(x)) / dp
        x = find_root(lambda u, zt=z_t: spec.alpha(u) - zt, x,
                      RootSettings(residual_tol=1e-11 * (1 + abs(z_t)),
                                   max_iterations=30))
    return find_root(lambda u: spec.alpha(u) - z, x,
                     RootSettings(residual_tol=settings.residual_tol
                                  * (1 + abs(z)),
                                  max_iterations=settings.max_iterations))


def inverse_map(spec: InitialDataSpec, z: complex,
                seed: Optional[complex] = None,
                settings: Optional[RootSettings] = None) -> complex:
    """Preimage x(z) of z under alpha, on the principal sheet.

    With a seed, Newton converges to the preimage nearest that seed (sheet
    selection by proximity).  Without one, closed-form candidates are used
    when the family has them; for real z both preimages are Schwarz partners
    and the one with Im x >= 0 is returned.  Falls back to continuation from
    a real-axis anchor.  Raises AtLogPoint within 1e-9 of a log point.
    """
    z = complex(z)
    settings = settings or RootSettings()
    if _near_log_point(spec, z):
        raise AtLogPoint(f"x(z) is branched at {z!r}")
    if seed is not None and spec.closed_form_inverse is None:
        return _continuation_inverse(spec, z, seed=seed, settings=settings)
    if spec.closed_form_inverse is not None:
        cands = _candidate_filter(spec, z, spec.closed_form_inverse(z))
        if seed is not None and cands:
            return min(cands, key=lambda c: abs(c - seed))
        if len(cands) == 1:
            return cands[0]
        if len(cands) > 1:
            # Schwarz pair of a real z, or numerically coincident roots.
            if abs(z.imag) < 1e-12:
                upper = [c for c in cands if c.imag >= -1e-14]
                if upper:
                    return min(upper, key=lambda c: -c.imag)
            return min(cands, key=lambda c: abs(c.imag))
    return _continuation_inverse(spec, z, seed=seed, settings=settings)


# --- ramification search ------------------------------------------------------


def ramification_points(spec: InitialDataSpec,
                        search_region: tuple,
                        grid: int = 64) -> list:
    """Zeros of alpha' inside the rectangle (re_min, re_max, im_min, im_max).

    Grid scan for local minima of |alpha'| followed by Newton polish;
    converged roots are deduplicated and returned with z* = alpha(x*).
    """
    re_min, re_max, im_min, im_max = (float(v) for v in search_region)
    if not (re_min < re_max and im_min < im_max):
        raise RegionOutsideDomain("search region rectangle is empty")
    if spec.strip_height and max(abs(im_min), abs(im_max)) > 50 * spec.strip_height:
        raise RegionOutsideDomain(
            "search region far outside the analyticity strip")

    vals = {}

    def mag(i, j):
        key = (i, j)
        if key not in vals:
            x = complex(re_min + (re_max - re_min) * i / grid,
                        im_min + (im_max - im_min) * j / grid)
            try:
                m = abs(spec.alpha_prime(x))
            except (OverflowError, ValueError, ZeroDivisionError):
                m = float("inf")
            vals[key] = m if math.isfinite(m) else float("inf")
        return vals[key]

    seeds = []
    for i in range(grid + 1):
        for j in range(grid + 1):
            m = mag(i, j)
            if not math.isfinite(m):
                continue
            neighbours = [mag(i2, j2)
                          for i2 in (i - 1, i, i + 1)
                          for j2 in (j - 1, j, j + 1)
                          if (i2, j2) != (i, j)
                          and 0 <= i2 <= grid and 0 <= j2 <= grid]
            if neighbours and m <= min(neighbours):
                seeds.append(complex(re_min + (re_max - re_min) * i / grid,
                                     im_min + (im_max - im_min) * j / grid))

    roots = []
    pad = 0.02 * max(re_max - re_min, im_max - im_min)
    for s in seeds:
        try:
            r = find_root(spec.alpha_prime, s,
                          RootSettings(residual_tol=1e-11, max_iterations=40))
        except Exception:
            continue
        if not (re_min - pad <= r.real <= re_max + pad
                and im_min - pad <= r.imag <= im_max + pad):
            continue
        if any(abs(r - q) < 1e-7 for q in roots):
            continue
        roots.append(r)
    roots.sort(key=lambda r: (round(r.real, 9), round(r.imag, 9)))
    return [RamificationPoint(x_star=r, z_star=spec.alpha(r)) for r in roots]


# --- assumption checks --------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    min_b: float
    min_alpha_prime: float
    decay_margin: float
    failures: tuple

    def __bool__(self):
        return self.passed


def validate_assumptions(spec: InitialDataSpec,
                         x_grid: Sequence[float]) -> ValidationReport:
    """Check the standing assumptions on a real grid.

    A1: b > 0 on the real line.  A2: alpha' does not vanish and the boundary
    curve alpha(R) does not self-intersect on the grid.  A4 (decay): products
    (a - mu+-) * x and b**2 * x tend to zero at the grid ends.
    """
    xs = sorted(float(x) for x in x_grid)
    failures = []
    bs, dps, pts = [], [], []
    for x in xs:
        al = spec.alpha(x)
        bs.append(al.imag)
        dps.append(abs(spec.alpha_prime(x)))
        pts.append(al)
    min_b = min(bs) if bs else float("nan")
    min_dp = min(dps) if dps else float("nan")
    if min_b <= 0:
        failures.append(f"A1: b <= 0 on the grid (min b = {min_b:.3e})")
    if min_dp <= 1e-12:
        failures.append(f"A2: alpha' vanishes on the grid (min {min_dp:.3e})")

    # Self-intersection scan: any two non-adjacent grid points mapping to the
    # same alpha value betray a doubly covered boundary curve.
    for i in range(len(pts)):
        for j in range(i + 2, len(pts)):
            if abs(pts[i] - pts[j]) < 1e-9 * (1 + abs(pts[i])):
                failures.append(
                    f"A2: alpha({xs[i]:.4g}) == alpha({xs[j]:.4g}); "
                    "boundary curve self-intersects")
                break
        else:
            continue
        break

    decay_margin = float("inf")
    if len(xs) >= 4:
        tails = [(xs[0], spec.mu_minus), (xs[-1], spec.mu_plus)]
        worst = 0.0
        for x_end, mu in tails:
            al = spec.alpha(x_end)
            worst = max(worst, abs((al.real - mu) * x_end), abs(al.imag ** 2 * x_end))
        decay_margin = worst
        if worst > 1e-2:
            failures.append(
                f"A4: tail products not small at grid ends ({worst:.3e}); "
                "extend the grid or the datum decays too slowly")
    return ValidationReport(passed=not failures, min_b=min_b,
                            min_alpha_prime=min_dp,
                            decay_margin=decay_margin,
                            failures=tuple(failures))


# --- built-in families --------------------------------------------------------


def _sech_family(mu: float) -> InitialDataSpec:
    if not mu > 0:
        raise ParameterOutOfRange("sech family needs mu > 0")
    half = 0.5 * mu
    t2 = half * half - 1.0  # T**2; negative for mu < 2

    def alpha(x):
        x = complex(x)
        return (half * cmath.sinh(x) + 1j) / cmath.cosh(x)

    def alpha_prime(x):
        x = complex(x)
        ch = cmath.cosh(x)
        return (half - 1j * cmath.sinh(x)) / (ch * ch)

    def closed_inverse(z):
        z = complex(z)
        # tanh x solves the quadratic obtained from alpha(x) = z with
        # eta = tanh x; each eta admits two preimages mod i pi, and the
        # i pi shift flips the branch of sech, so both are offered and the
        # caller filters by residual.
        if abs(t2) < 1e-14:
            if z == 0:
                return ()
            eta = 0.5 * (z + 1.0 / z)
            etas = (eta,)
        else:
            disc = cmath.sqrt(z * z - t2)
            etas = ((half * z + disc) / t2, (half * z - disc) / t2)
        out = []
        for eta in etas:
            if abs(eta - 1.0) < 1e-15 or abs(eta + 1.0) < 1e-15:
                continue
            w = cmath.atanh(eta)
            out.append(w)
            out.append(w - 1j * math.pi if w.imag > 0 else w + 1j * math.pi)
        return tuple(out)

    log_points = ()
    cuts = ()
    if mu < 2.0:
        t_val = 1j * math.sqrt(1.0 - half * half)  # T on the imaginary axis
        x_star = -1j * math.asin(half)
        log_points = (RamificationPoint(x_star=x_star, z_star=t_val),)
        cuts = (ContourPath((0.0 + 0j, t_val)),)
    elif mu == 2.0:
        log_points = (RamificationPoint(x_star=0.0 - 1j * math.pi / 2,
                                        z_star=0.0 + 0j),)

    return InitialDataSpec(
        alpha=alpha, alpha_prime=alpha_prime,
        mu_minus=-half, mu_plus=half,
        family_tag="sech", parameter=mu,
        decay_rate=1.0, strip_height=1.1,
        amplitude=lambda x: 1.0 / math.cosh(x),
        phase=lambda x: -mu * math.log(math.cosh(x)),
        closed_form_inverse=closed_inverse,
        log_points=log_points, cuts=cuts)


def _bronski_family(mu: float) -> InitialDataSpec:
    if mu < 0:
        raise ParameterOutOfRange("this family needs mu >= 0")

    def alpha(x):
        x = complex(x)
        ch = cmath.cosh(2 * x)
        return (mu * cmath.sinh(2 * x) + 1j * ch) / (ch * ch)

    def alpha_prime(x):
        x = complex(x)
        ch = cmath.cosh(2 * x)
        sh = cmath.sinh(2 * x)
        return (2 * mu * (1 - sh * sh) - 2j * sh * ch) / (ch * ch * ch)

    # Log points from the quartic in sinh(2x); computed numerically at
    # construction so the cuts are available for path routing.
    log_points = []
    cuts = []
    if mu == 0.0:
        log_points.append(RamificationPoint(x_star=0j, z_star=1j))
        cuts.append(ContourPath((1j, 11j)))
    else:
        disc = cmath.sqrt(1.0 - 8.0 * mu * mu)
        for sgn in (+1.0, -1.0):
            s2 = ((2 * mu * mu - 1.0) + sgn * disc) / (2.0 * (mu * mu + 1.0))
            for branch in (+1.0, -1.0):
                s = branch * cmath.sqrt(s2)
                # mu (1 - s^2) = i s sqrt(1+s^2) must hold with the right
                # root of cosh; reject squaring artefacts.
                ch = cmath.sqrt(1.0 + s * s)
                for chs in (ch, -ch):
                    if abs(mu * (1 - s * s) - 1j * s * chs) < 1e-9:
                        x_star = 0.5 * cmath.asinh(s)
                        # asinh picks one sheet; polish and keep uniques.
                        try:
                            x_star = find_root(alpha_prime, x_star,
                                               RootSettings(residual_tol=1e-12))
                        except Exception:
                            continue
                        if abs(cmath.cosh(2 * x_star)) < 1e-6:
                            continue
                        z_star = alpha(x_star)
                        if z_star.imag <= 0:
                            continue
                        if any(abs(x_star - p.x_star) < 1e-8 for p in log_points):
                            continue
                        log_points.append(
                            RamificationPoint(x_star=x_star, z_star=z_star))
        log_points.sort(key=lambda p: (round(p.x_star.real, 9),
                                       round(p.x_star.imag, 9)))
        for p in log_points:
            cuts.append(ContourPath((p.z_star, p.z_star + 10j)))

    return InitialDataSpec(
        alpha=alpha, alpha_prime=alpha_prime,
        mu_minus=0.0, mu_plus=0.0,
        family_tag="bronski", parameter=mu,
        decay_rate=2.0, strip_height=1.1,
        amplitude=lambda x: 1.0 / math.cosh(2 * x),
        phase=lambda x: mu / math.cosh(2 * x),
        closed_form_inverse=None,
        log_points=tuple(log_points), cuts=tuple(cuts),
        degenerate_endpoints=True,
        doubly_covered_boundary=(mu == 0.0))


def _double_hump_family(k: float) -> InitialDataSpec:
    if not 0.0 <= k <= 1.0:
        raise ParameterOutOfRange("double-hump family needs k in [0, 1]")

    def alpha(x):
        x = complex(x)
        s = 1.0 / cmath.cosh(x)
        return cmath.tanh(x) + 1j * (s - k * s * s)

    def alpha_prime(x):
        x = complex(x)
        s = 1.0 / cmath.cosh(x)
        th = cmath.tanh(x)
        return s * s + 1j * s * th * (2 * k * s - 1.0)

    log_points = []
    cuts = []
    if k > 0:
        # Roots of u^3 + 4 k^2 u + 4 k = 0 give sin(2 Im x*) at the
        # ramification points; recover them numerically instead, seeded from
        # a coarse scan of the strip below the axis (conjugates mirror above).
        probe = InitialDataSpec(alpha=alpha, alpha_prime=alpha_prime,
                                mu_minus=-1.0, mu_plus=1.0, strip_height=1.6)
        for p in ramification_points(probe, (-3.0, 3.0, -1.55, -0.01), grid=72):
            if p.z_star.imag > 1e-9:
                log_points.append(p)
        log_points.sort(key=lambda p: (round(p.x_star.real, 9),
                                       round(p.x_star.imag, 9)))
        for p in log_points:
            cuts.append(ContourPath((p.z_star, p.z_star + 10j)))

    return InitialDataSpec(
        alpha=alpha, alpha_prime=alpha_prime,
        mu_minus=-1.0, mu_plus=1.0,
        family_tag="double_hump", parameter=k,
        decay_rate=1.0, strip_height=1.1,
        amplitude=lambda x: (1.0 - k / math.cosh(x)) / math.cosh(x),
        phase=lambda x: -2.0 * math.log(math.cosh(x)),
        closed_form_inverse=None,
        log_points=tuple(log_points), cuts=tuple(cuts))


_FAMILIES = {
    "sech": _sech_family,
    "bronski": _bronski_family,
    "double_hump": _double_hump_family,
}


def builtin_family(name: str, parameter: float) -> InitialDataSpec:
    """Construct one of the built-in data families by name.

    Names: 'sech' (parameter mu > 0), 'bronski' (mu >= 0, zero phase limits),
    'double_hump' (k in [0, 1]).
    """
    try:
        maker = _FAMILIES[name]
    except KeyError:
        raise ParameterOutOfRange(
            f"unknown family {name!r}; choose from {sorted(_FAMILIES)}")
    return maker(float(parameter))
