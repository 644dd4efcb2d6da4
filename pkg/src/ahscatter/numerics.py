"""Low-level numerical kernels: contour quadrature, root finding, curve tracing.

All integration is over polyline paths in the complex plane.  Each segment is
mapped to the reference interval [0, 1] and integrated with an adaptive
Gauss-Kronrod 7-15 rule; the global worklist splits whichever piece currently
carries the largest error estimate, so the node placement is deterministic for
a given integrand and path.

Square-root endpoint singularities are removed analytically: a flagged
endpoint gets the substitution zeta = end + (other - end) * s**2, which turns
an integrable 1/sqrt factor into a bounded analytic one.  The quadrature never
evaluates the integrand at segment endpoints, so branch points sitting exactly
at a path end are safe even without the flag (though convergence is then slow).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (
    BudgetExceeded,
    DerivativeVanished,
    NoConvergence,
    NonFiniteIntegrand,
    SeedNotOnCurve,
    StagnationAtCriticalPoint,
)

__all__ = [
    "QuadratureSettings",
    "RootSettings",
    "ContourPath",
    "integrate_path",
    "find_root",
    "trace_implicit_curve",
]


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and budget for adaptive path quadrature.

    ``singular_start``/``singular_end`` flag inverse-square-root behaviour of
    the integrand at the first/last node of the path; flagged ends are handled
    by the s**2 substitution.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 4000
    singular_start: bool = False
    singular_end: bool = False

    def with_flags(self, start: bool, end: bool) -> "QuadratureSettings":
        return QuadratureSettings(self.abs_tol, self.rel_tol,
                                  self.max_subdivisions, start, end)


@dataclass(frozen=True)
class RootSettings:
    residual_tol: float = 1e-12
    max_iterations: int = 60
    finite_difference_step: float = 1e-7


@dataclass(frozen=True)
class ContourPath:
    """Oriented polyline in the complex plane.

    ``closed`` marks loops (the last node is understood to connect back to the
    first and must coincide with it for quadrature).  ``termination`` is set by
    the curve tracer to record why tracing stopped.
    """

    nodes: tuple
    closed: bool = False
    termination: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(complex(p) for p in self.nodes))
        if len(self.nodes) < 2:
            raise ValueError("a path needs at least two nodes")

    def segments(self):
        return list(zip(self.nodes[:-1], self.nodes[1:]))

    def reversed(self) -> "ContourPath":
        return ContourPath(tuple(reversed(self.nodes)), self.closed)

    def length(self) -> float:
        return sum(abs(b - a) for a, b in self.segments())

    @property
    def start(self) -> complex:
        return self.nodes[0]

    @property
    def end(self) -> complex:
        return self.nodes[-1]


# Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15 constants).
# Odd-index Kronrod abscissae are the 7-point Gauss nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f: Callable[[float], complex], a: float, b: float):
    """One Gauss-Kronrod 7-15 panel on the real interval [a, b].

    Returns (kronrod_value, error_estimate).  Raises NonFiniteIntegrand if the
    integrand produces NaN or infinity at any node.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    resk = 0.0 + 0.0j
    resg = 0.0 + 0.0j
    for i in range(8):
        x = _XGK[i]
        w = _WGK[i]
        if i == 7:
            fv = f(c)
            resk += w * fv
            resg += _WG[3] * fv
            if not (math.isfinite(fv.real) and math.isfinite(fv.imag)):
                raise NonFiniteIntegrand(f"integrand not finite at {c!r}")
            continue
        f1 = f(c - h * x)
        f2 = f(c + h * x)
        for fv in (f1, f2):
            if not (math.isfinite(fv.real) and math.isfinite(fv.imag)):
                raise NonFiniteIntegrand("integrand not finite inside panel "
                                         f"[{a!r}, {b!r}]")
        resk += w * (f1 + f2)
        if i % 2 == 1:
            resg += _WG[i // 2] * (f1 + f2)
    resk *= h
    resg *= h
    # |K15 - G7| estimates the 7-point error, which dominates the 15-point
    # one, so this is a conservative estimate for resk.
    return resk, abs(resk - resg)


def _segment_integrands(path: ContourPath, settings: QuadratureSettings):
    """Map each polyline segment onto [0, 1], applying endpoint substitutions.

    Returns a list of real-parameter integrands whose sum of integrals over
    [0, 1] equals the path integral.
    """
    segs = path.segments()
    out = []
    last = len(segs) - 1
    for k, (a, b) in enumerate(segs):
        d = b - a
        if d == 0:
            continue
        sub_start = settings.singular_start and k == 0
        sub_end = settings.singular_end and k == last
        if sub_start and sub_end:
            # Split at the midpoint so each half has one singular end.
            m = a + 0.5 * d
            out.append(_substituted(a, m))
            out.append(_substituted_reversed(m, b))
        elif sub_start:
            out.append(_substituted(a, b))
        elif sub_end:
            out.append(_substituted_reversed(a, b))
        else:
            out.append(_affine(a, b))
    return out


def _affine(a: complex, b: complex):
    d = b - a

    def make(f):
        def g(s: float) -> complex:
            return f(a + s * d) * d
        return g
    return make


def _substituted(a: complex, b: complex):
    """zeta = a + (b-a) s**2: regularises a 1/sqrt singularity at a."""
    d = b - a

    def make(f):
        def g(s: float) -> complex:
            return f(a + d * (s * s)) * (2.0 * s * d)
        return g
    return make


def _substituted_reversed(a: complex, b: complex):
    """zeta = b + (a-b) s**2 traversed so the integral still runs a -> b."""
    d = a - b

    def make(f):
        def g(s: float) -> complex:
            # s parametrises distance from b; orientation flip gives a -> b.
            return f(b + d * (s * s)) * (-2.0 * s * d)
        return g
    return make


def integrate_path(integrand: Callable[[complex], complex],
                   path: ContourPath,
                   settings: Optional[QuadratureSettings] = None):
    """Adaptively integrate ``integrand`` along ``path``.

    Returns (value, error_estimate).  The worklist is global across segments:
    the panel with the worst error estimate is bisected until the combined
    estimate meets max(abs_tol, rel_tol * |value|) or the subdivision budget
    runs out (BudgetExceeded, carrying the best value found).
    """
    settings = settings or QuadratureSettings()
    makers = _segment_integrands(path, settings)
    if not makers:
        return 0.0 + 0.0j, 0.0

    panels = []  # list of [err, lo, hi, val, g]
    for make in makers:
        g = make(integrand)
        val, err = _gk15(g, 0.0, 1.0)
        panels.append([err, 0.0, 1.0, val, g])

    # Panels narrower than this (in segment parameter) are never split
    # again: near an endpoint zero of a radical the integrand's rounding
    # noise grows without bound, and chasing it below this width only digs
    # into the noise until the abscissa collides with the zero itself.
    width_floor = 3e-5

    splits = 0
    while True:
        total = sum(p[3] for p in panels)
        total_err = sum(p[0] for p in panels)
        tol = max(settings.abs_tol, settings.rel_tol * abs(total))
        if total_err <= tol:
            return total, total_err
        if splits >= settings.max_subdivisions:
            raise BudgetExceeded(
                f"quadrature budget ({settings.max_subdivisions} splits) "
                f"exhausted; best estimate error {total_err:.3e} > {tol:.3e}",
                value=total, error_estimate=total_err)
        # Deterministic worst-first split: ties resolved by list order.
        splittable = [i for i in range(len(panels))
                      if panels[i][2] - panels[i][1] >= width_floor]
        if not splittable:
            raise BudgetExceeded(
                f"all quadrature panels at the width floor; best estimate "
                f"error {total_err:.3e} > {tol:.3e}",
                value=total, error_estimate=total_err)
        worst = max(splittable, key=lambda i: panels[i][0])
        err, lo, hi, _, g = panels[worst]
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            raise BudgetExceeded(
                "quadrature interval collapsed below machine resolution",
                value=sum(p[3] for p in panels),
                error_estimate=total_err)
        v1, e1 = _gk15(g, lo, mid)
        v2, e2 = _gk15(g, mid, hi)
        panels[worst] = [e1, lo, mid, v1, g]
        panels.append([e2, mid, hi, v2, g])
        splits += 1


def find_root(map_fn: Callable[[complex], complex],
              seed: complex,
              settings: Optional[RootSettings] = None) -> complex:
    """Newton iteration for a holomorphic scalar map, derivative by central
    differences.  Returns z with |map_fn(z)| <= residual_tol.
    """
    settings = settings or RootSettings()

    def safe(w):
        try:
            v = complex(map_fn(w))
        except (OverflowError, ValueError, ZeroDivisionError):
            return complex("inf")
        if math.isfinite(v.real) and math.isfinite(v.imag):
            return v
        return complex("inf")

    z = complex(seed)
    fz = safe(z)
    if not math.isfinite(abs(fz)):
        raise NonFiniteIntegrand(f"map not finite at seed {seed!r}")
    for _ in range(settings.max_iterations):
        if abs(fz) <= settings.residual_tol:
            return z
        h = settings.finite_difference_step * max(1.0, abs(z))
        dfz = (safe(z + h) - safe(z - h)) / (2.0 * h)
        if not math.isfinite(abs(dfz)):
            raise NonFiniteIntegrand(
                f"map not finite next to iterate {z!r}")
        if abs(dfz) <= 1e-14 * (1.0 + abs(fz)):
            raise DerivativeVanished(
                f"derivative magnitude {abs(dfz):.3e} too small at {z!r}")
        step = -fz / dfz
        # Damp absurd steps; keeps the iteration inside the sampled region.
        cap = 1.0 + abs(z)
        if abs(step) > cap:
            step *= cap / abs(step)
        z_new = z + step
        f_new = safe(z_new)
        # Backtrack up to 5 times if the residual grew.
        shrink = 0
        while (not math.isfinite(abs(f_new))
               or abs(f_new) > 2.0 * abs(fz)) and shrink < 5:
            step *= 0.5
            z_new = z + step
            f_new = safe(z_new)
            shrink += 1
        if not math.isfinite(abs(f_new)):
            raise NoConvergence(
                f"Newton left the domain of the map near {z!r}")
        z, fz = z_new, f_new
    if abs(fz) <= settings.residual_tol:
        return z
    raise NoConvergence(
        f"Newton stalled at {z!r} with residual {abs(fz):.3e} "
        f"after {settings.max_iterations} iterations")


@dataclass(frozen=True)
class TraceSettings:
    corrector_tol: float = 1e-9
    max_nodes: int = 4000
    min_step: float = 1e-5
    max_step: float = 0.1
    gradient_floor: float = 1e-9


def _numeric_gradient(field, z, h=1e-6):
    fx = (field(z + h) - field(z - h)) / (2.0 * h)
    fy = (field(z + 1j * h) - field(z - 1j * h)) / (2.0 * h)
    return complex(fx, fy)


def trace_implicit_curve(field: Callable[[complex], float],
                         seed: complex,
                         initial_direction: complex,
                         step: float = 1e-2,
                         bounds: Optional[tuple] = None,
                         gradient: Optional[Callable[[complex], complex]] = None,
                         settings: Optional[TraceSettings] = None) -> ContourPath:
    """Predictor-corrector tracing of the zero level curve of a real field.

    ``gradient``, if given, must return grad F encoded as Fx + i Fy.  Bounds
    is (re_min, re_max, im_min, im_max).  The returned path's ``termination``
    records why tracing stopped: 'bounds', 'closed', or 'max_nodes'.
    Gradient collapse raises StagnationAtCriticalPoint with the partial path
    attached.
    """
    settings = settings or TraceSettings()
    grad = gradient or (lambda z: _numeric_gradient(field, z))

    def correct(z, tol, max_iter=12):
        for _ in range(max_iter):
            fz = field(z)
            if abs(fz) <= tol:
                return z
            g = grad(z)
            g2 = g.real * g.real + g.imag * g.imag
            if g2 <= settings.gradient_floor ** 2:
                return None
            # Newton step along the gradient direction.
            z = z - fz * g / g2
        return z if abs(field(z)) <= tol else None

    z0 = correct(complex(seed), settings.corrector_tol)
    if z0 is None or abs(z0 - seed) > max(10 * step, 1.0):
        raise SeedNotOnCurve(f"could not project seed {seed!r} onto the curve")

    def in_bounds(z):
        if bounds is None:
            return True
        re_min, re_max, im_min, im_max = bounds
        return re_min <= z.real <= re_max and im_min <= z.imag <= im_max

    nodes = [z0]
    direction = complex(initial_direction)
    if direction == 0:
        raise ValueError("initial_direction must be nonzero")
    direction /= abs(direction)
    h = step
    termination = "max_nodes"
    z = z0
    while len(nodes) < settings.max_nodes:
        g = grad(z)
        gn = abs(g)
        if gn <= settings.gradient_floor:
            raise StagnationAtCriticalPoint(
                f"gradient collapsed at {z!r}",
                partial_path=ContourPath(tuple(nodes)) if len(nodes) > 1 else None)
        tangent = 1j * g / gn
        if (tangent.real * direction.real + tangent.imag * direction.imag) < 0:
            tangent = -tangent
        accepted = False
        while h >= settings.min_step:
            z_new = correct(z + h * tangent, settings.corrector_tol, max_iter=8)
            if z_new is not None and abs(z_new - (z + h * tangent)) <= 0.5 * h:
                accepted = True
                break
            h *= 0.5
        if not accepted:
            # One last attempt at the minimum step before declaring a stall.
            z_new = correct(z + settings.min_step * tangent,
                            settings.corrector_tol, max_iter=20)
            if z_new is None:
                raise StagnationAtCriticalPoint(
                    f"corrector failed near {z!r} at minimum step",
                    partial_path=ContourPath(tuple(nodes)) if len(nodes) > 1 else None)
            h = settings.min_step
        direction = z_new - z
        if abs(direction) == 0:
            raise StagnationAtCriticalPoint(
                f"tracer made no progress at {z!r}",
                partial_path=ContourPath(tuple(nodes)) if len(nodes) > 1 else None)
        direction /= abs(direction)
        z = z_new
        nodes.append(z)
        if not in_bounds(z):
            termination = "bounds"
            break
        if len(nodes) > 10 and abs(z - z0) < 0.75 * h:
            nodes.append(z0)
            return ContourPath(tuple(nodes), closed=True, termination="closed")
        h = min(h * 1.3, settings.max_step)
    return ContourPath(tuple(nodes), termination=termination)
