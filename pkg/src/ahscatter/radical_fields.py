"""Branch-tracked radical R(x, z) and the g/h field integrals.

R(x, z) = sqrt((z - alpha(x)) (z - alpha~(x))) is made single-valued along
each integration path by analytic continuation from a real anchor far to the
right (or left, for the mirrored variants), where R ~ -(z - mu).  Continuation
is a chained square-root tracker: the path is sampled densely enough that the
argument of R**2 moves by less than half a turn between neighbours, and each
sample takes the square root closest to its predecessor.  Paths that must
leave a branch point x(z) are re-anchored there through a local model
C * sqrt(x - x(z)) whose branch cut hangs along the x-plane cut ray of z, so
the value leaving the branch point is the continuation of the value arriving
on the bridge.

Path geometry: the x-plane cut of R for fixed z is taken as the horizontal
ray running from x(z) away from the anchor.  A leg from x(z) that would run
straight down that ray (the two-sided case z on the spectral curve) is routed
around it by a small rectangular detour; ``side=+1`` selects the detour above
the ray, which is the boundary value taken from the interior (left) side of
the oriented cut gamma_m, and ``side=-1`` the other.  For z strictly off the
curve the detour side is forced by the sign of Im x(z) and the value is
single-valued.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import (
    AtMuPlus,
    ContourThroughSingularity,
    OnCut,
    TailNotConverged,
)
from .initial_data import InitialDataSpec, alpha_tilde, inverse_map
from .numerics import ContourPath, QuadratureSettings, integrate_path

__all__ = [
    "FieldSample",
    "TrackedRadical",
    "radical_R",
    "h_field",
    "h_z_field",
    "g_field",
    "plemelj_g",
    "pinched_loop",
    "sample_fields",
]

MU_EXCLUSION = 1e-4     # exclusion disc radius around mu+- for g and f0
DETOUR_RHO = 1e-2       # rectangular detour height around an on-axis x(z)
ON_CUT_TOL = 1e-9


def _sqrt_cut(w: complex, cut_angle: float) -> complex:
    """Square root with branch cut along the ray arg(w) = cut_angle."""
    rot = cmath.exp(1j * (math.pi - cut_angle))
    return cmath.sqrt(w * rot) * cmath.exp(0.5j * (cut_angle - math.pi))


# Inside this distance of a known root the vanishing factor of P switches to
# a midpoint difference quotient.  Balances the two error sources: direct
# subtraction loses eps/|d| relative accuracy, the quotient loses |d|^2 / 24.
ROOT_QUOTIENT_RADIUS = 3e-6


def _p_factory(spec: InitialDataSpec, z: complex,
               root: Optional[complex] = None) -> Callable[[complex], complex]:
    """P(y) = (z - alpha(y)) (z - alpha~(y)).

    With ``root`` set to a point y0 where alpha(y0) = z, the first factor is
    evaluated near y0 as -(y - y0) alpha'(midpoint), dodging the catastrophic
    cancellation of z - alpha(y) (fatal when z was computed as alpha(y0): the
    plain difference is exactly zero over a whole neighbourhood of y0)."""
    z = complex(z)
    y0 = None if root is None else complex(root)

    def P(y: complex) -> complex:
        if y0 is not None:
            d = y - y0
            if abs(d) < ROOT_QUOTIENT_RADIUS:
                first = -d * spec.alpha_prime(y0 + 0.5 * d)
            else:
                first = z - spec.alpha(y)
        else:
            first = z - spec.alpha(y)
        return first * (z - alpha_tilde(spec, y))
    return P


class TrackedRadical:
    """sqrt(P) continued along a polyline from one anchored value.

    ``anchor`` is ("value", v) fixing sqrt(P) = v at the first or last node
    (``anchor_at_end``), or ("model", C, bp, cut_angle) fixing the branch near
    a simple zero bp of P via C * sqrt_cut(point - bp).  Queries interpolate
    the branch from the nearest sample on a given segment, so they stay valid
    between samples and right up to an endpoint zero of P.
    """

    def __init__(self, P, nodes, anchor, anchor_at_end=False,
                 max_refine=14):
        self.P = P
        self.nodes = [complex(p) for p in nodes]
        if len(self.nodes) < 2:
            raise ValueError("tracker needs a polyline")
        self._samples = []  # per segment: sorted list of (t, pt, Pval)
        self._floors = []   # per segment: |P| level treated as "at a zero"
        for a, b in zip(self.nodes[:-1], self.nodes[1:]):
            self._samples.append(self._sample_segment(a, b, max_refine))
        flat = [(k, i) for k, seg in enumerate(self._samples)
                for i in range(len(seg))]
        if anchor_at_end:
            flat.reverse()
        self._w = {}
        prev_key, prev_w, prev_p = None, None, None
        for key in flat:
            k, i = key
            t, pt, pv = self._samples[k][i]
            if abs(pv) <= self._floors[k]:
                continue  # skip endpoint zeros; queries extrapolate past them
            if prev_key is None:
                w = self._anchor_value(anchor, pt, pv)
            else:
                guide = prev_w * cmath.sqrt(pv / prev_p)
                r = cmath.sqrt(pv)
                w = r if abs(r - guide) <= abs(r + guide) else -r
            self._w[key] = w
            prev_key, prev_w, prev_p = key, w, pv

    @staticmethod
    def _anchor_value(anchor, pt, pv):
        kind = anchor[0]
        if kind == "value":
            v = complex(anchor[1])
            r = cmath.sqrt(pv)
            return r if abs(r - v) <= abs(r + v) else -r
        if kind == "model":
            _, coeff, bp, cut_angle = anchor
            guide = coeff * _sqrt_cut(pt - bp, cut_angle)
            r = cmath.sqrt(pv)
            return r if abs(r - guide) <= abs(r + guide) else -r
        raise ValueError(f"unknown anchor {anchor!r}")

    def _sample_segment(self, a, b, max_refine):
        d = b - a
        out = {}

        def pval(t):
            if t not in out:
                out[t] = self.P(a + t * d)
            return out[t]

        n0 = 8
        grid = [i / n0 for i in range(n0 + 1)]
        for t in grid:
            pval(t)
        seg_scale = max(abs(p) for p in out.values())
        # Endpoints are allowed to sit on a zero of P (legs leave branch
        # points); the floor below which a sample counts as "on the zero" is
        # relative, and generous only near the segment ends.
        floor_end = 1e-10 * seg_scale
        floor_mid = 1e-16 * seg_scale

        def pair_ok(t1, p1, t2, p2):
            near_end = t1 <= 0.02 or t2 >= 0.98
            floor = floor_end if near_end else floor_mid
            m1, m2 = abs(p1), abs(p2)
            if m1 <= floor or m2 <= floor:
                return True  # at a zero: the ray approach keeps arg steady
            ratio = p2 / p1
            if abs(cmath.phase(ratio)) > 0.5:
                return False
            mag = abs(ratio)
            return 0.25 <= mag <= 4.0

        def ok(t1, t2):
            p1, p2 = pval(t1), pval(t2)
            if t2 - t1 > 0.03:
                # coarse intervals must also agree through their midpoint,
                # or a full winding of arg P could slip through unseen
                tm = 0.5 * (t1 + t2)
                pm = pval(tm)
                return pair_ok(t1, p1, tm, pm) and pair_ok(tm, pm, t2, p2)
            return pair_ok(t1, p1, t2, p2)

        stack = list(zip(grid[:-1], grid[1:]))
        guard = 0
        while stack:
            t1, t2 = stack.pop()
            if ok(t1, t2):
                continue
            guard += 1
            if guard > 2 ** max_refine or (t2 - t1) < 1e-12:
                raise ContourThroughSingularity(
                    f"radical tracking cannot resolve P near "
                    f"{a + 0.5 * (t1 + t2) * d!r}; the path passes too close "
                    "to a branch point")
            tm = 0.5 * (t1 + t2)
            pval(tm)
            stack.append((t1, tm))
            stack.append((tm, t2))
        self._floors.append(floor_end)
        items = sorted(out.items())
        return [(t, a + t * d, p) for t, p in items]

    def query(self, segment: int, point: complex) -> complex:
        """Branch value of sqrt(P) at ``point`` lying on segment ``segment``."""
        seg = self._samples[segment]
        a = self.nodes[segment]
        b = self.nodes[segment + 1]
        d = b - a
        t = ((point - a) * d.conjugate()).real / (d.real * d.real + d.imag * d.imag)
        # nearest sample with a recorded branch value
        lo, hi = 0, len(seg) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if seg[mid][0] < t:
                lo = mid + 1
            else:
                hi = mid
        best = None
        for radius in range(len(seg)):
            for i in (lo - radius, lo + radius):
                if 0 <= i < len(seg) and (segment, i) in self._w:
                    if best is None or abs(seg[i][0] - t) < abs(seg[best][0] - t):
                        best = i
            if best is not None and radius > 1:
                break
        if best is None:
            raise ContourThroughSingularity(
                "no anchored sample on the query segment; it sits entirely "
                "on a zero of P")
        _, pt_s, pv_s = seg[best]
        w_s = self._w[(segment, best)]
        pv = self.P(point)
        return w_s * cmath.sqrt(pv / pv_s)

    def end_model_coefficient(self, bp: complex, cut_angle: float) -> complex:
        """Local coefficient C with sqrt(P) ~ C * sqrt_cut(x - bp) at the end
        of the path, for re-anchoring a leg that leaves the branch point bp."""
        for k in range(len(self._samples) - 1, -1, -1):
            seg = self._samples[k]
            for i in range(len(seg) - 1, -1, -1):
                if (k, i) in self._w:
                    t, pt, pv = seg[i]
                    return self._w[(k, i)] / _sqrt_cut(pt - bp, cut_angle)
        raise ContourThroughSingularity("tracker holds no anchored samples")


def _integrate_tracked(spec, path_nodes, tracker, f_of,
                       settings: QuadratureSettings):
    """Integrate f_of(y, R(y)) over the polyline, segment by segment.

    Endpoint-singularity flags of ``settings`` apply to the path's global
    start and end.  Per-segment tolerance is the global one scaled down.
    """
    nsegs = len(path_nodes) - 1
    per = QuadratureSettings(
        abs_tol=settings.abs_tol / max(1, nsegs),
        rel_tol=settings.rel_tol,
        max_subdivisions=settings.max_subdivisions)
    total = 0.0 + 0.0j
    err = 0.0
    for k in range(nsegs):
        flags = per.with_flags(settings.singular_start and k == 0,
                               settings.singular_end and k == nsegs - 1)
        seg_path = ContourPath([path_nodes[k], path_nodes[k + 1]])

        def integrand(y, _k=k):
            return f_of(y, tracker.query(_k, y))

        v, e = integrate_path(integrand, seg_path, flags)
        total += v
        err += e
    return total, err


# --- path construction --------------------------------------------------------


def _anchor_abscissa(spec, z, extra=0.0):
    base = max(14.0, 10.0 / spec.decay_rate)
    return base + max(0.0, extra)


def _anchor_value(spec, z, xa, direction):
    """R at the real anchor point xa, normalised R ~ -(z - mu)."""
    mu = spec.mu_plus if direction > 0 else spec.mu_minus
    P = _p_factory(spec, z)
    r = cmath.sqrt(P(xa))
    target = -(complex(z) - mu)
    if target == 0:
        # z at the endpoint itself: R is positive real on the axis.
        return r if r.real >= 0 else -r
    # nearest-to-target discriminates at any scale: the candidates are
    # close to -+target, so one difference cancels and the other doubles
    return r if abs(r - target) <= abs(r + target) else -r


def _interior_real_preimages(spec, z, lo, hi):
    """Real preimages of z strictly inside (lo, hi), for data whose boundary
    curve is doubly covered (degenerate endpoint families)."""
    if not getattr(spec, "doubly_covered_boundary", False):
        return []
    z = complex(z)
    n = 400
    best = []
    for i in range(n + 1):
        u = lo + (hi - lo) * i / n
        best.append((u, abs(spec.alpha(u) - z)))
    # local minima below a coarse threshold, then Newton polish on the line
    cands = []
    for i in range(1, n):
        if best[i][1] < best[i - 1][1] and best[i][1] < best[i + 1][1] \
                and best[i][1] < 0.05 * (1 + abs(z)):
            cands.append(best[i][0])
    end_tol = 1e-9 * (1 + max(abs(lo), abs(hi)))

    def polish(u, deflate_at=None):
        """Newton on alpha(u) - z, deflated by (u - deflate_at) so a known
        root at an endpoint does not capture the iteration.  Iterates to
        step convergence so duplicate finds agree to machine accuracy."""
        for _ in range(60):
            fu = spec.alpha(u) - z
            du = spec.alpha_prime(u)
            if deflate_at is None:
                if abs(du) < 1e-13:
                    return None
                step = (fu / du).real
            else:
                d = u - deflate_at
                denom = du * d - fu
                if abs(denom) < 1e-300:
                    return None
                step = (fu * d / denom).real
            u = u - step
            if not lo <= u <= hi:
                return None
            if abs(step) <= 1e-14 * (1 + abs(u)):
                break
        if abs(spec.alpha(u) - z) > 1e-10 * (1 + abs(z)):
            return None
        return u

    roots = []

    def accept(u):
        if u is not None and lo + end_tol < u < hi - end_tol \
                and not any(abs(u - r) < 1e-8 * (1 + abs(u)) for r in roots):
            roots.append(u)

    for u0 in cands:
        accept(polish(u0))
    # An endpoint that is itself a preimage can mask a twin a fraction of a
    # grid cell away (no strict local minimum forms), and plain Newton from
    # nearby seeds falls back into the endpoint root; deflation finds the
    # twin regardless of basin.
    cell = (hi - lo) / n
    for e in (lo, hi):
        if abs(spec.alpha(e) - z) <= 1e-9 * (1 + abs(z)):
            sgn = 1.0 if e == lo else -1.0
            for frac in (0.5, 0.1, 0.02):
                accept(polish(e + sgn * cell * frac, deflate_at=e))
    return sorted(roots)


def _real_axis_nodes(spec, z, x_from, x_to):
    """Nodes for a path along the real axis from x_from to x_to, with
    semicircular detours above any interior real preimage of z."""
    nodes = [complex(x_from)]
    lo, hi = min(x_from, x_to), max(x_from, x_to)
    zeros = _interior_real_preimages(spec, z, lo, hi)
    order = zeros if x_from <= x_to else list(reversed(zeros))
    for u in order:
        r = 1e-3 * (1 + abs(u))
        # a preimage close to an endpoint still needs its detour, just a
        # smaller one that keeps the nodes ordered along the axis
        r = min(r, 0.45 * abs(u - lo), 0.45 * abs(u - hi))
        sgn = 1.0 if x_to >= x_from else -1.0
        # semicircle above the axis, traversed in the direction of travel
        entry = u - sgn * r
        nodes.append(complex(entry))
        for j in range(1, 8):
            ang = math.pi * (1 - j / 8) if sgn > 0 else math.pi * j / 8
            nodes.append(u + r * cmath.exp(1j * ang))
        nodes.append(complex(u + sgn * r))
    nodes.append(complex(x_to))
    return nodes


def _h_leg_nodes(spec, x_z, x_target, side, direction):
    """Leg from the branch point x(z) to x_target, detouring around the cut
    ray when the leg would run straight down it."""
    d = complex(x_target) - complex(x_z)
    into_cut = (d.real < 0) if direction > 0 else (d.real > 0)
    if abs(d.imag) <= 1e-12 and into_cut:
        sigma = float(side) if side is not None else 1.0
        rho = min(DETOUR_RHO, 0.3 * abs(d)) or DETOUR_RHO
        lift = 1j * sigma * rho
        return [complex(x_z), complex(x_z) + lift,
                complex(x_target) + lift, complex(x_target)]
    return [complex(x_z), complex(x_target)]


def _effective_side(x_z, side):
    """Side of the cut ray a detour must take for the value of the field to
    be the single-valued one at z; explicit ``side`` only decides the
    genuinely two-sided case Im x(z) == 0."""
    if abs(x_z.imag) > 1e-12:
        return -1.0 if x_z.imag > 0 else 1.0
    return float(side) if side is not None else 1.0


# --- public field evaluators ----------------------------------------------------


def radical_R(spec: InitialDataSpec, x: complex, z: complex,
              branch: str = "principal") -> complex:
    """R(x, z) on the branch continued from the real anchor.

    ``branch='principal'`` (or 'right') anchors at large positive real x with
    R ~ -(z - mu+); 'left' mirrors to the other end.  Continuation runs along
    the straight segment from the anchor to x.
    """
    direction = -1 if branch == "left" else +1
    z = complex(z)
    x = complex(x)
    P = _p_factory(spec, z)
    if abs(P(x)) == 0.0:
        return 0.0 + 0.0j
    xa = direction * _anchor_abscissa(spec, z, abs(x.real) + 2 - 14.0)
    tracker = TrackedRadical(P, [xa, x],
                             ("value", _anchor_value(spec, z, xa, direction)))
    return tracker.query(0, x)


def _field_quadrature(settings):
    return settings or QuadratureSettings(abs_tol=1e-11, rel_tol=1e-11)


def _exponential_tail(sample, X, needed, max_extend=10, step=6.0):
    """Estimate integral of ``sample`` over [X, inf) by a two-point exponential
    fit; returns (X_used, tail, est_error).  Extends X until the estimate is
    safely below ``needed``."""
    X_use = X
    for _ in range(max_extend):
        g0 = sample(X_use)
        g1 = sample(X_use + 1.0)
        g2 = sample(X_use + 2.0)
        a0, a1, a2 = abs(g0), abs(g1), abs(g2)
        if not (math.isfinite(a0) and math.isfinite(a1) and math.isfinite(a2)):
            raise TailNotConverged(
                f"tail sample not finite near X = {X_use}")
        if a0 == 0.0:
            return X_use, 0.0 + 0.0j, 0.0
        if a1 == 0.0 or a2 == 0.0:
            # integrand underflowed within two units: nothing left to add
            return X_use, 0.0 + 0.0j, a0
        if max(a0, a1, a2) < 0.01 * needed:
            # samples are rounding noise well under the target: ratios are
            # meaningless down here, and the true tail is below needed too
            return X_use, 0.0 + 0.0j, 10.0 * max(a0, a1, a2)
        rho1 = g1 / g0
        rho2 = g2 / g1
        if a1 < 1e-300 or abs(rho1) >= 0.97:
            X_use += step
            continue
        kappa = -cmath.log(rho1)
        tail = g0 / kappa
        mismatch = abs(rho2 - rho1) / max(abs(rho1), 1e-30)
        est = abs(tail) * min(1.0, mismatch) + a0 * 1e-15
        if abs(tail) < needed and est < needed:
            return X_use, tail, est
        if est < 0.05 * needed or abs(tail) > needed:
            # tail itself is significant but well modelled: accept it
            if mismatch < 0.05:
                return X_use, tail, est
        X_use += step
    raise TailNotConverged(
        f"tail beyond X = {X_use} did not stabilise below {needed:.3e}")


def h_field(spec: InitialDataSpec, x: float, z: complex,
            side: Optional[int] = None,
            settings: Optional[QuadratureSettings] = None,
            direction: int = +1,
            x_z: Optional[complex] = None) -> complex:
    """h(x, z) = -integral of R(y, z) dy from x(z) to x.

    ``side`` picks the boundary value when z lies on the spectral curve with
    x(z) real and the leg runs down the cut ray: +1 is the limit from the
    interior (left) side of gamma_m.  For Im z < 0 the Schwarz reflection of
    the upper-half value is returned.
    """
    z = complex(z)
    if z.imag < 0:
        flipped = None if side is None else -side
        return complex(h_field(spec, x, z.conjugate(), side=flipped,
                               settings=settings,
                               direction=direction)).conjugate()
    settings = _field_quadrature(settings)
    if x_z is None:
        x_z = inverse_map(spec, z)
    x_z = complex(x_z)
    P = _p_factory(spec, z, root=x_z)
    x = float(x)
    if abs(complex(x) - x_z) < 1e-14:
        return 0.0 + 0.0j
    cut_angle = math.pi if direction > 0 else 0.0
    xa = direction * _anchor_abscissa(
        spec, z, max(abs(x_z.real), abs(x)) + 2 - 14.0)
    bridge = TrackedRadical(P, [xa, x_z],
                            ("value", _anchor_value(spec, z, xa, direction)))
    coeff = bridge.end_model_coefficient(x_z, cut_angle)
    sigma = _effective_side(x_z, side)
    leg_nodes = _h_leg_nodes(spec, x_z, x, sigma, direction)
    leg = TrackedRadical(P, leg_nodes, ("model", coeff, x_z, cut_angle))
    flags = settings.with_flags(True, False)
    val, _ = _integrate_tracked(spec, leg_nodes, leg,
                                lambda y, R: R, flags)
    return -val


def h_z_field(spec: InitialDataSpec, x: float, z: complex,
              side: Optional[int] = None,
              settings: Optional[QuadratureSettings] = None,
              direction: int = +1,
              x_z: Optional[complex] = None) -> complex:
    """dh/dz = -integral of (z - a(y)) / R(y, z) dy from x(z) to x: the
    integrated term at the moving endpoint vanishes since R(x(z), z) = 0."""
    z = complex(z)
    if z.imag < 0:
        flipped = None if side is None else -side
        return complex(h_z_field(spec, x, z.conjugate(), side=flipped,
                                 settings=settings,
                                 direction=direction)).conjugate()
    settings = _field_quadrature(settings)
    if x_z is None:
        x_z = inverse_map(spec, z)
    x_z = complex(x_z)
    P = _p_factory(spec, z, root=x_z)
    x = float(x)
    if abs(complex(x) - x_z) < 1e-14:
        return 0.0 + 0.0j
    cut_angle = math.pi if direction > 0 else 0.0
    xa = direction * _anchor_abscissa(
        spec, z, max(abs(x_z.real), abs(x)) + 2 - 14.0)
    bridge = TrackedRadical(P, [xa, x_z],
                            ("value", _anchor_value(spec, z, xa, direction)))
    coeff = bridge.end_model_coefficient(x_z, cut_angle)
    sigma = _effective_side(x_z, side)
    leg_nodes = _h_leg_nodes(spec, x_z, x, sigma, direction)
    leg = TrackedRadical(P, leg_nodes, ("model", coeff, x_z, cut_angle))
    flags = settings.with_flags(True, False)

    def integrand(y, R):
        return (z - spec.a_of(y)) / R

    val, _ = _integrate_tracked(spec, leg_nodes, leg, integrand, flags)
    return -val


def g_field(spec: InitialDataSpec, x: float, z: complex,
            f0_at_mu_plus: complex = 0.0,
            side: Optional[int] = None,
            settings: Optional[QuadratureSettings] = None,
            direction: int = +1) -> complex:
    """g(x, z) built from the one-sided primitive of z - mu + R.

    g = -(1/2) [ integral_{+inf}^{x} (z - mu+ + R(y, z)) dy + mu+ x ]
        + f0(mu+) / 2, with the tail beyond the truncation point integrated
    against an exponential fit.  ``side`` as in h_field.
    """
    z = complex(z)
    if z.imag < 0:
        flipped = None if side is None else -side
        return complex(g_field(spec, x, z.conjugate(),
                               f0_at_mu_plus=complex(f0_at_mu_plus).conjugate(),
                               side=flipped, settings=settings,
                               direction=direction)).conjugate()
    settings = _field_quadrature(settings)
    mu = spec.mu_plus if direction > 0 else spec.mu_minus
    if abs(z - mu) < MU_EXCLUSION:
        raise AtMuPlus(f"g is not evaluated within {MU_EXCLUSION} of mu")
    x = float(x)
    try:
        x_z = complex(inverse_map(spec, z))
    except Exception:
        x_z = None

    P = _p_factory(spec, z, root=x_z)
    xa0 = direction * _anchor_abscissa(spec, z, abs(x) + 2 - 14.0)

    def tail_sample(y):
        # R ~ -(z - a(y)) out here, and the exclusion zone around mu keeps
        # |z - a| well above b, so the local target fixes the branch at each
        # point; a cached square-root sign would flip with rounding noise
        # whenever P runs along the negative real axis.
        pv = P(y)
        r = cmath.sqrt(pv)
        target = -(z - spec.a_of(y))
        r = r if abs(r - target) <= abs(r + target) else -r
        return (z - mu) + r

    needed = max(settings.abs_tol * 10, 1e-13)
    if direction > 0:
        X_used, tail, _ = _exponential_tail(tail_sample, abs(xa0), needed)
        xa = X_used
    else:
        X_used, tail, _ = _exponential_tail(lambda s: tail_sample(-s),
                                            abs(xa0), needed)
        xa = -X_used
        tail = -tail  # integral toward -inf reverses orientation

    # Path from the anchor to x along the axis, detouring around x(z) when it
    # sits between them on (or next to) the axis.
    nodes = [complex(xa)]
    per_side_needed = (x_z is not None and abs(x_z.imag) <= DETOUR_RHO
                       and (min(xa, x) < x_z.real < max(xa, x)))
    if per_side_needed:
        sigma = _effective_side(x_z, side)
        rho = DETOUR_RHO
        lift = 1j * sigma * rho
        xr = x_z.real
        sgn = -1.0 if xa > x else 1.0   # direction of travel along the axis
        nodes.append(complex(xr - sgn * rho))
        nodes.append(complex(xr - sgn * rho) + lift)
        nodes.append(complex(xr + sgn * rho) + lift)
        nodes.append(complex(xr + sgn * rho))
        inner = _real_axis_nodes(spec, z, xr + sgn * rho, x)
        nodes.extend(inner[1:])
    else:
        axis = _real_axis_nodes(spec, z, xa, x)
        nodes.extend(axis[1:])

    tracker = TrackedRadical(P, nodes,
                             ("value", _anchor_value(spec, z, xa, direction)))

    def integrand(y, R):
        return (z - mu) + R

    val, _ = _integrate_tracked(spec, nodes, tracker, integrand, settings)
    # integral from +inf to x = (-tail beyond anchor) + path integral
    total = -tail + val if direction > 0 else -tail + val
    return -0.5 * (total + mu * x) + 0.5 * complex(f0_at_mu_plus)


@dataclass(frozen=True)
class FieldSample:
    """h, g and f = 2g - h at one (x, z) pair."""

    x: float
    z: complex
    h: complex
    g: complex
    f: complex


def sample_fields(spec: InitialDataSpec, x: float, z: complex,
                  f0_at_mu_plus: complex = 0.0,
                  side: Optional[int] = None,
                  settings: Optional[QuadratureSettings] = None) -> FieldSample:
    h = h_field(spec, x, z, side=side, settings=settings)
    g = g_field(spec, x, z, f0_at_mu_plus=f0_at_mu_plus, side=side,
                settings=settings)
    return FieldSample(x=float(x), z=complex(z), h=h, g=g, f=2.0 * g - h)


# --- z-plane radical and the Plemelj representation ---------------------------


def _segment_intersections(a, b, nodes):
    """Count transversal crossings of segment [a, b] with a polyline, and the
    minimum distance between them (coarse, for near-tangency detection)."""
    count = 0
    min_d = float("inf")
    d1 = b - a
    for p, q in zip(nodes[:-1], nodes[1:]):
        d2 = q - p
        denom = d1.real * (-d2.imag) - d1.imag * (-d2.real)
        rhs = p - a
        if abs(denom) > 1e-30:
            t = (rhs.real * (-d2.imag) - rhs.imag * (-d2.real)) / denom
            s = (d1.real * rhs.imag - d1.imag * rhs.real) / denom
            if 0.0 < t < 1.0 and 0.0 < s < 1.0:
                count += 1
        for u, v, w in ((a, p, q), (b, p, q), (p, a, b), (q, a, b)):
            dv = w - v
            L2 = dv.real ** 2 + dv.imag ** 2
            if L2 == 0:
                continue
            tt = max(0.0, min(1.0, ((u - v) * dv.conjugate()).real / L2))
            min_d = min(min_d, abs(u - (v + tt * dv)))
    return count, min_d


def z_plane_radical(alpha_end: complex, mu_plus: float, z: complex,
                    cut_nodes: Optional[Sequence[complex]] = None) -> complex:
    """R(z) = sqrt((z - alpha)(z - conj alpha)) on the branch cut along
    gamma_m (the polyline ``cut_nodes``, default the V through mu+), with
    R ~ -z at infinity and R > 0 on the real axis left of mu+."""
    A = complex(alpha_end)
    z = complex(z)
    if cut_nodes is None:
        cut_nodes = [A.conjugate(), complex(mu_plus), A]

    def P(zeta):
        return (zeta - A) * (zeta - A.conjugate())

    span = max(abs(A), abs(mu_plus), abs(z)) + 3.0
    za = complex(-4.0 * span)
    r = cmath.sqrt(P(za))
    target = -za
    anchor = r if abs(r - target) <= abs(r + target) else -r
    cut = list(cut_nodes)
    _, z_dist = _segment_intersections(z, z + 1e-30 + 0j, cut)
    if z_dist < ON_CUT_TOL:
        raise OnCut(f"z = {z!r} lies on the cut")
    nodes = [za, z]
    crossings, min_d = _segment_intersections(za, z, cut)
    if min_d < 0.5 * z_dist:
        # straight track grazes the cut (e.g. through its vertex on the
        # axis); go over the top instead and recount crossings
        H = max(p.imag for p in cut) + 1.0
        nodes = [za, za + 1j * H, complex(z.real, H), z]
        crossings = 0
        for a, b in zip(nodes[:-1], nodes[1:]):
            c, d = _segment_intersections(a, b, cut)
            crossings += c
            if d < ON_CUT_TOL:
                raise OnCut(f"rerouted track still touches the cut at {z!r}")
    tracker = TrackedRadical(P, nodes, ("value", anchor))
    return tracker.query(len(nodes) - 2, z) * (-1.0) ** crossings


def pinched_loop(alpha_end: complex, mu_plus: float,
                 offset: float = 0.03, gap: float = 3e-4,
                 leg_samples: int = 24) -> ContourPath:
    """Closed, negatively oriented loop hugging the V-shaped cut
    conj(alpha) -> mu+ -> alpha at distance ``offset``, pinched to ``gap``
    near mu+.  Built as a polyline; starts and ends just right of mu+."""
    A = complex(alpha_end)
    Ab = A.conjugate()
    mp = complex(float(mu_plus))
    arm = abs(A - mp)
    if arm < 1e-6:
        raise OnCut("arc endpoint coincides with mu+; no loop to build")
    if arm < 4 * offset:
        offset = arm / 4
        gap = min(gap, offset / 10)

    def offset_leg(frm, to, side_sign):
        """Sample points along [frm, to] displaced to one side, with the
        displacement tapering to ``gap`` near mu+ and stopping short of the
        far endpoint cap."""
        d = to - frm
        L = abs(d)
        u = d / L
        n = 1j * u * side_sign
        pts = []
        for i in range(leg_samples + 1):
            s = i / leg_samples
            zeta = frm + s * d
            dist_mu = min(abs(zeta - mp), L)
            delta = min(offset, max(gap, 0.8 * dist_mu))
            # stop before entering the cap region at the non-mu end
            tip = to if abs(to - mp) > abs(frm - mp) else frm
            if abs(zeta - tip) < offset and abs(tip - mp) > 2 * offset:
                continue
            pts.append(zeta + delta * n)
        return pts

    def cap(tip, start_pt, end_pt):
        r1 = abs(start_pt - tip)
        away = cmath.phase(tip - mp)

        def wrap(a):
            while a <= -math.pi:
                a += 2 * math.pi
            while a > math.pi:
                a -= 2 * math.pi
            return a
        psi1 = wrap(cmath.phase(start_pt - tip) - away)
        psi2 = wrap(cmath.phase(end_pt - tip) - away)
        pts = []
        steps = 10
        for j in range(1, steps):
            psi = psi1 + (psi2 - psi1) * j / steps
            r = r1 + (abs(end_pt - tip) - r1) * j / steps
            pts.append(tip + r * cmath.exp(1j * (away + psi)))
        return pts

    # Negative orientation: start right of mu+, descend the outer (-) side of
    # the lower leg, cap around conj A, climb its inner (+) side, cross the
    # wedge left of mu+, climb the inner (+) side of the upper leg, cap
    # around A, descend its outer (-) side, and close.
    start = mp + gap
    lower_minus = offset_leg(mp, Ab, +1)   # mu+ -> conj A, right of the leg
    lower_plus = offset_leg(Ab, mp, +1)    # conj A -> mu+, wedge side
    upper_plus = offset_leg(mp, A, +1)     # mu+ -> A, wedge side
    upper_minus = offset_leg(A, mp, +1)    # A -> mu+, outer side
    nodes = [start]
    nodes += lower_minus
    nodes += cap(Ab, nodes[-1], lower_plus[0])
    nodes += lower_plus
    nodes.append(mp - gap)
    nodes += upper_plus
    nodes += cap(A, nodes[-1], upper_minus[0])
    nodes += upper_minus
    nodes.append(start)
    return ContourPath(nodes, closed=True)


def plemelj_g(scattering, gamma_hat_m: Optional[ContourPath], x: float,
              z: complex,
              settings: Optional[QuadratureSettings] = None,
              time: float = 0.0) -> complex:
    """g(z) from the Plemelj integral R(z)/(4 pi i) * loop integral of
    f(zeta) / ((zeta - z) R(zeta)) over the pinched loop around gamma_m,
    negatively oriented.  f = f0 - x zeta - 2 t zeta**2.

    ``scattering`` must expose f0(zeta), mu_plus, and the arc endpoint
    alpha_of_x(x) (ScatteringData built from a spec does).  Off-contour z
    only; points within the loop's offset of the cut raise OnCut.
    """
    settings = settings or QuadratureSettings(abs_tol=1e-10, rel_tol=1e-10)
    A = complex(scattering.alpha_of_x(float(x)))
    mp = float(scattering.mu_plus)
    z = complex(z)
    if gamma_hat_m is None:
        gamma_hat_m = pinched_loop(A, mp)
    cut_nodes = [A.conjugate(), complex(mp), A]
    # z must sit strictly outside the loop, which hugs the cut at its offset
    _, dist = _segment_intersections(z, z + 1e-30 + 0j, cut_nodes)
    if dist < 0.04:
        raise OnCut(f"z = {z!r} inside the exclusion band of the cut")

    def P(zeta):
        return (zeta - A) * (zeta - A.conjugate())

    nodes = list(gamma_hat_m.nodes)
    anchor_pt = nodes[0]
    r = cmath.sqrt(P(anchor_pt))
    # the loop starts just right of mu+, where R is negative real
    anchor = r if r.real <= 0 else -r
    tracker = TrackedRadical(P, nodes, ("value", anchor))
    Rz = z_plane_radical(A, mp, z, cut_nodes)

    def phase(zeta):
        return (scattering.f0(zeta) - float(x) * zeta
                - 2.0 * float(time) * zeta * zeta)

    def f_of(zeta, Rzeta):
        return phase(zeta) / ((zeta - z) * Rzeta)

    val, _ = _integrate_tracked(None, nodes, tracker, f_of, settings)
    return Rz * val / (4j * math.pi)
