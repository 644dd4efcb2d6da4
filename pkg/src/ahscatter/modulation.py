"""Moment conditions in time and the breaking diagnostics built on them.

The pair of loop conditions that pin alpha(x, t) collapse, for data whose
scattering function carries a logarithmic point at mu+, onto two-sided
integrals along the arc itself; we integrate along the V-shaped polyline
through mu+ (deformed around any log cuts) with the radical tracked on its
positive side.  Newton continuation in t then transports alpha, and the
break scan watches the three §-independent signatures at once: blowing up
of alpha_x, vanishing of the endpoint coefficient, and interior zeros of
h_z.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .ah_transform import MU_EXCLUSION, f0_prime as _f0_prime_raw
from .errors import (
    BudgetExceeded,
    ContourHitsCut,
    JacobianSingular,
    NoConvergence,
    OutsideDomain,
    StepUnderflow,
)
from .initial_data import inverse_map
from .numerics import ContourPath, QuadratureSettings, integrate_path
from .radical_fields import TrackedRadical, z_plane_radical

__all__ = [
    "ModulationState",
    "BreakReport",
    "moment_residuals",
    "continue_alpha",
    "detect_break",
]

_GL12_NODES = (
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192,
)
_GL12_WEIGHTS = (
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118,
)


@dataclass(frozen=True)
class ModulationState:
    """One accepted point of the continuation: alpha solving the moment
    conditions at (x, t), with the residual pair at acceptance."""

    x: float
    t: float
    alpha: complex
    residual: Tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "t": self.t,
            "alpha": [self.alpha.real, self.alpha.imag],
            "residual": list(self.residual),
        }


@dataclass(frozen=True)
class BreakReport:
    """A detected breaking event.

    kind is 'triple_point' (alpha_x blow-up with the endpoint coefficient
    collapsing in the same cell), 'double_point' (an interior zero of h_z
    away from alpha), or 'singular_break' (the trajectory ran into a log
    point; left unclassified).
    """

    kind: str
    x_b: float
    t_b: float
    z_b: complex
    alpha_x_magnitude: float
    leading_coeff: complex

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "x_b": self.x_b,
            "t_b": self.t_b,
            "z_b": [self.z_b.real, self.z_b.imag],
            "alpha_x_magnitude": self.alpha_x_magnitude,
            "leading_coeff": [self.leading_coeff.real,
                              self.leading_coeff.imag],
        }


# --- the arc and the collapsed moment integrals -------------------------------


def _split_at_imaginary_axis(nodes: List[complex]) -> List[complex]:
    out = [nodes[0]]
    for p, q in zip(nodes[:-1], nodes[1:]):
        if p.real * q.real < 0.0:
            s = p.real / (p.real - q.real)
            out.append(complex(0.0, p.imag + s * (q.imag - p.imag)))
        out.append(q)
    return out


def _nearest_curve_parameter(spec, A: complex,
                             half_width: float = 30.0) -> float:
    """Real u minimising |alpha(u) - A|, by coarse grid plus local refinement."""
    A = complex(A)
    n = 600
    best_u, best_d = 0.0, float("inf")
    for j in range(n + 1):
        u = -half_width + 2.0 * half_width * j / n
        d = abs(complex(spec.alpha(u)) - A)
        if d < best_d:
            best_u, best_d = u, d
    h = 2.0 * half_width / n
    lo, hi = best_u - h, best_u + h
    for _ in range(40):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if abs(complex(spec.alpha(m1)) - A) <= abs(complex(spec.alpha(m2)) - A):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)


def _moment_arc(spec, alpha: complex) -> Tuple[List[complex], int]:
    """Polyline conj(alpha) -> mu+ -> alpha whose legs hug the image curve
    of alpha, seam-split at the imaginary axis; returns the nodes and the
    index of the mu+ vertex.

    A straight chord is only a valid stand-in for the main arc when no
    branch point of f0' lies between them, and families with interior
    ramification points put such branch points into that lens.  The image
    curve itself is always on the correct side: the evaluator continues
    the preimage from the real axis, so its values are continuous along
    (and near) the whole curve, including where the curve passes over a
    log point.  The leg therefore follows the curve from the vertex down
    to the point nearest alpha and hops off only for the final
    (modulation-displaced) step.  Rerouting around log-cut rays would be
    wrong here: a detour under a cut anchor leaves the curve's side of
    the branch point and picks up the other preimage basin."""
    A = complex(alpha)
    mp = complex(float(spec.mu_plus))
    if abs(A - mp) < 1e-3:
        raise ContourHitsCut(
            "arc endpoint alpha is within 1e-3 of mu+; moment contour "
            "degenerates")
    u0 = _nearest_curve_parameter(spec, A)
    ladder: List[complex] = []
    u = u0
    stop = 0.12
    while len(ladder) < 40:
        u += 0.4
        w = complex(spec.alpha(u))
        if abs(w - mp) <= stop:
            break
        ladder.append(w)
    upper = [mp] + list(reversed(ladder))
    w0 = complex(spec.alpha(u0))
    if abs(w0 - A) > 1e-9 * (1.0 + abs(A)):
        upper.append(w0)
    upper.append(A)
    upper = _split_at_imaginary_axis(upper)
    lower = [w.conjugate() for w in reversed(upper)]
    nodes = lower + upper[1:]
    return nodes, len(lower) - 1


def _arc_trackers(spec, A: complex, nodes: List[complex], k_mu: int):
    """Radical sqrt((z-A)(z-conj A)) on the positive side of the arc, as two
    trackers meeting at the mu+ vertex where the side is unambiguous."""

    def P(z):
        return (z - A) * (z - A.conjugate())

    mp = complex(float(spec.mu_plus))
    u1 = mp - nodes[k_mu - 1]
    u2 = nodes[k_mu + 1] - mp
    bis = 1j * u1 / abs(u1) + 1j * u2 / abs(u2)
    if abs(bis) < 1e-12:
        bis = 1j * u1 / abs(u1)
    zw = mp + 1e-6 * bis / abs(bis)
    vw = z_plane_radical(A, spec.mu_plus, zw, cut_nodes=nodes)
    lower = TrackedRadical(P, nodes[:k_mu + 1], ("value", vw),
                           anchor_at_end=True)
    upper = TrackedRadical(P, nodes[k_mu:], ("value", vw))
    return lower, upper


def _vertex_tolerant_f0p(scattering) -> Callable[[complex], complex]:
    """f0' evaluator usable on the whole arc, vertex included.

    Near mu+ the transform integrand is a quotient of differences that all
    shrink with the distance r to the vertex, so rounding puts a floor
    under the achievable quadrature error: measured across the built-in
    families it stays below 1e-8 down to r = 1e-4, below 2e-7 down to
    1e-6, and saturates near 2e-6 beyond that.  The inner tolerance rides
    above those floors, which costs the arc integrals only O(tol * r)
    because the slack is confined to a neighbourhood of measure r.  A
    single eased retry absorbs outliers of the (angle- and family-erratic)
    floor; a second failure is a real one and propagates.  Within the mu+
    exclusion disc the preimage is supplied explicitly, since a supplied
    x(z) certifies z to the evaluation guard."""
    if scattering.kind != "numeric":
        return scattering.f0_prime
    spec = scattering.spec
    mu_p = complex(spec.mu_plus)

    def f0p(z: complex) -> complex:
        z = complex(z)
        if z.imag < 0:
            return complex(f0p(z.conjugate())).conjugate()
        r = abs(z - mu_p)
        if r >= 0.25:
            tol = None
        elif r >= 1e-4:
            tol = 1e-8
        elif r >= 1e-6:
            tol = 2e-7
        else:
            tol = 5e-6
        # passing near a log point slows the transform the same way: the
        # preimage path skirts the x-plane ramification point, so demanding
        # full precision there just exhausts the split budget
        rl = min((abs(z - complex(p.z_star)) for p in spec.log_points),
                 default=math.inf)
        if rl < 0.5:
            tol = max(tol or 0.0, 2e-9)
        settings = scattering.settings if tol is None else \
            QuadratureSettings(abs_tol=tol, rel_tol=tol)
        xz = inverse_map(spec, z) if r < MU_EXCLUSION else None
        try:
            return _f0_prime_raw(spec, z, settings=settings, x_z=xz)
        except BudgetExceeded as stop:
            eased = max(4.0 * stop.error_estimate, 10.0 * (tol or 1e-11))
            return _f0_prime_raw(
                spec, z,
                settings=QuadratureSettings(abs_tol=eased, rel_tol=eased),
                x_z=xz)

    return f0p


def _collapsed_moments(scattering, alpha: complex,
                       settings: Optional[QuadratureSettings] = None
                       ) -> Tuple[complex, complex]:
    """The two moment integrals (1/i pi) Int f0'/R_+ and
    (1/i pi) Int (zeta-a) f0'/R_+ along the arc."""
    spec = scattering.spec
    A = complex(alpha)
    if A.imag <= 0:
        raise OutsideDomain("alpha must lie in the open upper half plane")
    if settings is None:
        if scattering.kind != "numeric":
            settings = QuadratureSettings(abs_tol=1e-10, rel_tol=1e-10)
        else:
            # the evaluator noise near the vertex (see _vertex_tolerant_f0p)
            # caps the accuracy a segment estimate can settle to, so the
            # numeric route trades a few digits for termination
            settings = QuadratureSettings(abs_tol=2.5e-7, rel_tol=3e-8)
    nodes, k_mu = _moment_arc(spec, A)
    tr_lower, tr_upper = _arc_trackers(spec, A, nodes, k_mu)
    # both evaluator kinds return the branch continued from the vertex on
    # the whole arc (axis-reflected logs put every seam on a ray the arc
    # only meets at a node), so f0p needs no per-segment adjustment
    _f0p = _vertex_tolerant_f0p(scattering)
    _seen: dict = {}

    def f0p(y: complex) -> complex:
        v = _seen.get(y)
        if v is None:
            v = _f0p(y)
            _seen[y] = v
        return v
    a = A.real
    m1 = 0j
    m2 = 0j
    nseg = len(nodes) - 1
    per_abs = settings.abs_tol / max(1, nseg)
    if scattering.kind == "numeric":
        # tighter per-segment targets than the evaluator's own floor would
        # only burn quadrature budget chasing its noise
        per_abs = max(per_abs, 1e-8)
    per = QuadratureSettings(abs_tol=per_abs,
                             rel_tol=settings.rel_tol,
                             max_subdivisions=settings.max_subdivisions)
    for k in range(nseg):
        # singular ends: the radical vanishes at the alpha tips, and f0' has
        # its logarithmic branch point at the mu+ vertex; the substitution
        # regularises both kinds
        flags = per.with_flags(k == 0 or k == k_mu,
                               k == nseg - 1 or k == k_mu - 1)
        seg = ContourPath([nodes[k], nodes[k + 1]])
        if k < k_mu:
            tracker, base = tr_lower, 0
        else:
            tracker, base = tr_upper, k_mu

        def fval(y, _k=k, _t=tracker, _b=base):
            return f0p(y) / _t.query(_k - _b, y)

        v1, _ = integrate_path(fval, seg, flags)
        v2, _ = integrate_path(lambda y, _f=fval: (y - a) * _f(y), seg, flags)
        m1 += v1
        m2 += v2
    return m1 / (1j * math.pi), m2 / (1j * math.pi)


def moment_residuals(scattering, alpha: complex, x: float, t: float,
                     settings: Optional[QuadratureSettings] = None
                     ) -> Tuple[float, float]:
    """Residual pair of the moment conditions at (alpha, x, t): zero exactly
    when alpha = alpha(x, t)."""
    m1, m2 = _collapsed_moments(scattering, alpha, settings)
    A = complex(alpha)
    r1 = m1.real - (float(x) + 4.0 * float(t) * A.real)
    r2 = m2.real + 2.0 * float(t) * A.imag ** 2
    return r1, r2


# --- continuation --------------------------------------------------------------


def _newton_polish(scattering, alpha: complex, x: float, t: float,
                   tol: float, settings, max_iter: int = 14
                   ) -> Tuple[complex, Tuple[float, float], int]:
    al = complex(alpha)
    for it in range(max_iter):
        r1, r2 = moment_residuals(scattering, al, x, t, settings)
        size = max(abs(r1), abs(r2))
        if size <= tol:
            return al, (r1, r2), it
        h = 1e-6 * (1.0 + abs(al))
        ra = moment_residuals(scattering, al + h, x, t, settings)
        rb = moment_residuals(scattering, al + 1j * h, x, t, settings)
        j11 = (ra[0] - r1) / h
        j21 = (ra[1] - r2) / h
        j12 = (rb[0] - r1) / h
        j22 = (rb[1] - r2) / h
        det = j11 * j22 - j12 * j21
        scale = max(abs(j11), abs(j12), abs(j21), abs(j22)) ** 2
        if abs(det) <= 1e-13 * max(scale, 1e-30):
            raise JacobianSingular(
                f"moment Jacobian singular at x = {x}, t = {t}, "
                f"alpha = {al:.6f} (det = {det:.3e})")
        da = (-r1 * j22 + r2 * j12) / det
        db = (-r2 * j11 + r1 * j21) / det
        step = complex(da, db)
        lam = 1.0
        accepted = False
        for _ in range(7):
            cand = al + lam * step
            if cand.imag <= 0.0:
                lam *= 0.5
                continue
            rc = moment_residuals(scattering, cand, x, t, settings)
            if max(abs(rc[0]), abs(rc[1])) < size:
                al = cand
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            raise NoConvergence(
                f"Newton step rejected at x = {x}, t = {t}: residual "
                f"{size:.3e} would not decrease")
    raise NoConvergence(
        f"moment Newton did not reach {tol:.1e} in {max_iter} iterations "
        f"at x = {x}, t = {t}")


def continue_alpha(scattering, x: float, t_target: float, seed: complex,
                   t_step: float,
                   tol: float = 1e-9,
                   settings: Optional[QuadratureSettings] = None
                   ) -> List[ModulationState]:
    """Transport alpha from the t=0 seed to t_target by damped Newton steps
    in t, shrinking the step on failed solves and growing it again on easy
    ones.  States are recorded at every accepted time."""
    x = float(x)
    t_target = float(t_target)
    if t_target < 0:
        raise ValueError("t_target must be >= 0")
    r0 = moment_residuals(scattering, seed, x, 0.0, settings)
    if max(abs(r0[0]), abs(r0[1])) > 1e-6:
        raise NoConvergence(
            f"seed does not solve the t=0 moment conditions at x = {x}: "
            f"residual {max(abs(r0[0]), abs(r0[1])):.3e}")
    al, res, _ = _newton_polish(scattering, seed, x, 0.0, tol, settings)
    states = [ModulationState(x=x, t=0.0, alpha=al, residual=res)]
    if t_target == 0.0:
        return states
    t = 0.0
    h = min(float(t_step), t_target)
    h_floor = float(t_step) / 1024.0
    while t < t_target - 1e-15:
        h = min(h, t_target - t)
        try:
            al_new, res, iters = _newton_polish(
                scattering, al, x, t + h, tol, settings)
        except NoConvergence:
            h *= 0.5
            if h < h_floor:
                raise StepUnderflow(
                    f"continuation step fell below {h_floor:.2e} at "
                    f"x = {x}, t = {t}")
            continue
        t += h
        al = al_new
        states.append(ModulationState(x=x, t=t, alpha=al, residual=res))
        if iters <= 3:
            h = min(float(t_step), 1.5 * h)
    return states


# --- break detection ------------------------------------------------------------


def _cached_arc_quadrature(scattering, A: complex, x: float, t: float):
    """Fixed Gauss nodes along the arc with f = f0 - x z - 2 t z^2 and R_+
    precomputed, for reusable h_z evaluations at many z.  ``scattering``
    must be the numeric kind: closed forms carry branch seams whose jumps
    vary along the arc."""
    spec = scattering.spec
    nodes, k_mu = _moment_arc(spec, A)
    tr_lower, tr_upper = _arc_trackers(spec, A, nodes, k_mu)
    pts: List[complex] = []
    wts: List[complex] = []
    Rs: List[complex] = []
    nseg = len(nodes) - 1
    for k in range(nseg):
        p, q = nodes[k], nodes[k + 1]
        tracker, base = (tr_lower, 0) if k < k_mu else (tr_upper, k_mu)
        tip_start = k == 0
        tip_end = k == nseg - 1
        for gn, gw in zip(_GL12_NODES, _GL12_WEIGHTS):
            s = 0.5 * (gn + 1.0)
            if tip_start:
                # zeta = p + (q - p) s^2 regularises the sqrt at the tip;
                # the weight carries the Jacobian (q - p) s of that map
                zeta = p + (q - p) * s * s
                dz = (q - p) * s
            elif tip_end:
                u = 1.0 - s
                zeta = q + (p - q) * u * u
                dz = (q - p) * u
            else:
                zeta = p + (q - p) * s
                dz = 0.5 * (q - p)
            pts.append(zeta)
            wts.append(gw * dz)
            Rs.append(tracker.query(k - base, zeta))
    fvals = [scattering.f0(zeta) - x * zeta - 2.0 * t * zeta * zeta
             for zeta in pts]
    return pts, wts, Rs, fvals, A, nodes


def _h_z_from_cache(cache, scattering, x: float, t: float,
                    z: complex) -> complex:
    """h_z(z) = 2 g_z(z) - f'(z) from the cached arc data; z off the arc."""
    pts, wts, Rs, fvals, A, nodes = cache
    z = complex(z)
    i0 = 0j
    i1 = 0j
    for zeta, w, R, f in zip(pts, wts, Rs, fvals):
        base = f / ((zeta - z) * R)
        i0 += w * base
        i1 += w * base / (zeta - z)
    Rz = z_plane_radical(A, scattering.spec.mu_plus, z, cut_nodes=nodes)
    gz = ((z - A.real) / Rz * i0 + Rz * i1) / (2j * math.pi)
    fp = scattering.f0_prime(z) - x - 4.0 * t * z
    return 2.0 * gz - fp


def _numeric_twin(scattering):
    if scattering.kind == "numeric":
        return scattering
    from .ah_transform import ScatteringData

    return ScatteringData.from_spec(scattering.spec,
                                    settings=scattering.settings)


def _double_point_scan(oracle, A: complex, x: float, t: float,
                       tol_hz: float = 1e-8) -> List[Tuple[complex, float]]:
    """Interior zeros of h_z near the arc and the complementary side,
    excluding a disc around alpha.  Returns (z, |h_z|) hits."""
    cache = _cached_arc_quadrature(oracle, A, x, t)
    nodes = cache[5]
    spec = oracle.spec
    mp = float(spec.mu_plus)
    mm = float(spec.mu_minus)
    probes: List[complex] = []
    # wedge-side offsets of the arc segments
    for p, q in zip(nodes[:-1], nodes[1:]):
        u = q - p
        if abs(u) < 1e-12:
            continue
        n = 1j * u / abs(u)
        mid = 0.5 * (p + q)
        probes.append(mid + 0.05 * n)
    # a lifted segment toward mu- standing in for the complementary arc
    for s in (0.15, 0.35, 0.55, 0.75, 0.9):
        probes.append(A + s * (complex(mm) - A) + 0.04j)
    hits: List[Tuple[complex, float]] = []
    for z in probes:
        if z.imag <= 0.01 or abs(z - A) < 1e-2 or abs(z - mp) < 0.05:
            continue
        try:
            mag = abs(_h_z_from_cache(cache, oracle, x, t, z))
        except Exception:
            continue
        if mag <= tol_hz:
            hits.append((z, mag))
    return hits


def detect_break(scattering, x_range, t_range, grids
                 ) -> List[BreakReport]:
    """Scan the (x, t) window for breaking events.

    ``grids`` gives the resolution: a mapping with keys 'x' and 't', or a
    pair (nx, nt).  For each x the continuation runs over the t grid; the
    scan then watches |alpha_x| blowing up with a grid-consistent growth
    exponent, the endpoint coefficient sqrt(2 i b)/(3 alpha') collapsing in
    the same cell, proximity to log points, and (on the final row) interior
    zeros of h_z.  Events are reported at the earliest offending time per
    x; coincident double and triple signatures are both kept.
    """
    if hasattr(grids, "get"):
        nx = int(grids.get("x", 17))
        nt = int(grids.get("t", 9))
    else:
        nx, nt = (int(v) for v in grids)
    x_lo, x_hi = (float(v) for v in x_range)
    t_lo, t_hi = (float(v) for v in t_range)
    if nx < 5:
        raise ValueError("x grid needs at least 5 points for the "
                         "finite-difference stencils")
    xs = [x_lo + (x_hi - x_lo) * j / (nx - 1) for j in range(nx)]
    ts = [t_lo + (t_hi - t_lo) * k / (max(nt, 2) - 1) for k in range(max(nt, 2))]
    hx = xs[1] - xs[0]
    spec = scattering.spec

    # continuation table alpha[j][k]; None past a failed column.  Each
    # column walks the exact grid times, seeding Newton from the previous
    # one, with a single midpoint bootstrap before giving up on a step.
    table: List[List[Optional[complex]]] = []
    singular_hits: dict = {}
    for j, xj in enumerate(xs):
        column: List[Optional[complex]] = []
        al: Optional[complex] = complex(spec.alpha(xj))
        t_prev = 0.0
        for tk in ts:
            if al is None:
                column.append(None)
                continue
            try:
                al, _res, _ = _newton_polish(scattering, al, xj, tk,
                                             1e-9, None)
            except (JacobianSingular, NoConvergence) as stop:
                try:
                    mid, _res, _ = _newton_polish(
                        scattering, al, xj, 0.5 * (t_prev + tk), 1e-9, None)
                    al, _res, _ = _newton_polish(scattering, mid, xj, tk,
                                                 1e-9, None)
                except (JacobianSingular, NoConvergence) as stop2:
                    singular_hits[j] = str(stop2)
                    al = None
                    column.append(None)
                    continue
            t_prev = tk
            column.append(al)
        table.append(column)

    reports: List[BreakReport] = []
    log_pts = [complex(p.z_star) for p in spec.log_points]
    for j in range(2, nx - 2):
        xj = xs[j]
        earliest: List[BreakReport] = []
        for k, tk in enumerate(ts):
            row = [table[i][k] for i in range(nx)]
            if any(row[i] is None for i in (j - 2, j - 1, j, j + 1, j + 2)):
                continue
            ax_fine = (row[j + 1] - row[j - 1]) / (2.0 * hx)
            ax_coarse = (row[j + 2] - row[j - 2]) / (4.0 * hx)
            mag = abs(ax_fine)
            if mag < 1e4:
                continue
            growth = math.log(max(abs(ax_coarse), 1e-300) /
                              max(mag, 1e-300)) / math.log(2.0)
            if growth > -0.9:
                continue
            b = row[j].imag
            lc = cmath.sqrt(2j * b) / (3.0 * ax_fine)
            if abs(lc) <= 1e-3:
                earliest.append(BreakReport(
                    kind="triple_point", x_b=xj, t_b=tk, z_b=row[j],
                    alpha_x_magnitude=mag, leading_coeff=lc))
                break
        al_col = table[j]
        for k, tk in enumerate(ts):
            if al_col[k] is None:
                continue
            near = [p for p in log_pts if abs(al_col[k] - p) < 0.02]
            if near:
                earliest.append(BreakReport(
                    kind="singular_break", x_b=xj, t_b=tk, z_b=al_col[k],
                    alpha_x_magnitude=float("nan"),
                    leading_coeff=0j))
                break
        if earliest:
            t_min = min(r.t_b for r in earliest)
            reports.extend(r for r in earliest if r.t_b <= t_min + 1e-12)

    # interior h_z zeros on the final row, on a thinned x subgrid
    oracle = _numeric_twin(scattering)
    stride = max(1, nx // 6)
    for j in range(2, nx - 2, stride):
        al = table[j][-1]
        if al is None:
            continue
        try:
            hits = _double_point_scan(oracle, al, xs[j], ts[-1])
        except ContourHitsCut:
            continue
        for z_hit, mag in hits:
            reports.append(BreakReport(
                kind="double_point", x_b=xs[j], t_b=ts[-1], z_b=z_hit,
                alpha_x_magnitude=0.0, leading_coeff=0j))
    return reports
