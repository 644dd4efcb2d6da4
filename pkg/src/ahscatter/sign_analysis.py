"""Sign certification for the genus-zero construction.

Three layers of evidence, none a proof, each localizing a failure if one
occurs: w(z) sampled on the real axis outside [mu-, mu+] must be negative;
the zero level curve of Im h launched from mu+ must land on alpha(x) without
touching a log cut, with Im h < 0 on both flanks; and Im h must be positive
on at least one side of the complementary arc.  The sufficient conditions
(argument spread, segment inclusion, vertical line test) justify w < 0
structurally where they hold, so the report records which one applied.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    OutsideDomain,
    StagnationAtCriticalPoint,
    TraceStalled,
)
from .initial_data import InitialDataSpec, inverse_map
from .numerics import ContourPath, QuadratureSettings, TraceSettings, trace_implicit_curve
from .radical_fields import _segment_intersections, h_field, h_z_field
from .ah_transform import w_of_z

__all__ = [
    "SignReport",
    "w_of_z",
    "sufficient_conditions",
    "certify_genus_zero",
]


_SEGMENT_SAMPLES = 120


def _vertical_segment(x_z: complex, lower: bool):
    """Open-interval samples of the segment x(z) -> Re x(z) (or on to the
    conjugate when ``lower``): the endpoints map onto the boundary curve,
    where the inclusion margins vanish by construction."""
    top = complex(x_z)
    bottom = complex(x_z).conjugate() if lower else complex(top.real, 0.0)
    n = _SEGMENT_SAMPLES
    return [top + (bottom - top) * (i / (n + 1.0)) for i in range(1, n + 1)]


def sufficient_conditions(spec: InitialDataSpec, z: float) -> dict:
    """Margins of the three structural reasons for w(z) < 0 at a real z
    outside [mu-, mu+].

    The argument condition bounds the angle between z - alpha(y) and
    z - alpha(conj y) along the vertical segment; segment inclusion asks the
    whole segment [x(z), conj x(z)] to stay inside the preimage region
    (equivalently Im alpha > 0 along it); the vertical line test compares
    Re alpha(y) against z.  Each entry reports its worst margin, positive
    when the condition holds.
    """
    z = float(z)
    if spec.mu_minus <= z <= spec.mu_plus and not spec.degenerate_endpoints:
        raise OutsideDomain(
            f"z = {z} lies between mu- and mu+; the conditions address the "
            "exterior rays only")
    mirrored = z <= spec.mu_minus
    x_z = complex(inverse_map(spec, z))

    arg_worst = 0.0
    for y in _vertical_segment(x_z, lower=False):
        u = spec.alpha(y) - z
        v = spec.alpha(y.conjugate()) - z
        if not mirrored:
            u, v = -u, -v
        spread = abs(cmath.phase(u) - cmath.phase(v))
        arg_worst = max(arg_worst, spread)
    arg_margin = math.pi - arg_worst

    seg_margin = math.inf
    vlt_margin = math.inf
    for y in _vertical_segment(x_z, lower=True):
        al = spec.alpha(y)
        seg_margin = min(seg_margin, al.imag)
        vlt = (z - al.real) if not mirrored else (al.real - z)
        vlt_margin = min(vlt_margin, vlt)

    return {
        "arg_condition_holds": arg_margin >= 0.0,
        "segment_inclusion_holds": seg_margin > 0.0,
        "vertical_line_test_holds": vlt_margin >= 0.0,
        "arg_margin": arg_margin,
        "segment_margin": seg_margin,
        "vertical_line_margin": vlt_margin,
    }


@dataclass
class SignReport:
    """Evidence gathered by certify_genus_zero at one x."""

    x: float
    w_ok: bool
    w_margin: float
    lambda_curve: Optional[ContourPath]
    lambda_reaches_alpha: bool
    gamma_c_sign_ok: bool
    sufficient_condition_used: str
    failures: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return (self.w_ok and self.lambda_reaches_alpha
                and self.gamma_c_sign_ok and not self.failures)

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "w_ok": self.w_ok,
            "w_margin": self.w_margin,
            "lambda_nodes": [[p.real, p.imag]
                             for p in (self.lambda_curve.nodes
                                       if self.lambda_curve else ())],
            "lambda_reaches_alpha": self.lambda_reaches_alpha,
            "gamma_c_sign_ok": self.gamma_c_sign_ok,
            "sufficient_condition_used": self.sufficient_condition_used,
            "failures": list(self.failures),
            "certified": self.certified,
        }


def _w_grid(spec, n_side):
    out = []
    span = 3.0
    for i in range(n_side):
        d = 0.05 + span * (i / (n_side - 1.0)) ** 2
        out.append(spec.mu_plus + d)
        out.append(spec.mu_minus - d)
    return out


def _near_any_cut(spec, z, clearance):
    for cut in spec.cuts:
        nodes = list(cut.nodes)
        for a, b in zip(nodes[:-1], nodes[1:]):
            d = b - a
            L2 = d.real ** 2 + d.imag ** 2
            if L2 == 0:
                continue
            t = max(0.0, min(1.0, ((z - a) * d.conjugate()).real / L2))
            if abs(z - (a + t * d)) < clearance:
                return True
    return any(abs(z - complex(p.z_star)) < clearance
               for p in spec.log_points)


def _landing_confirmed(field_im, alpha, approach, radii=(0.5, 0.25, 0.1, 0.04)):
    """Check that the zero level curve continues into ``alpha``: at shrinking
    radii around it, bracket a sign change of Im h over a small angular window
    centred on the approach direction.  Proximity of the traced path alone is
    not evidence; the gradient collapses at the branch point and the tracer
    stops early."""
    psi = cmath.phase(approach)
    base = abs(approach)
    for frac in radii:
        r = base * frac
        thetas = [psi + dt for dt in
                  (-0.7, -0.45, -0.2, 0.0, 0.2, 0.45, 0.7)]
        vals = [field_im(alpha + r * cmath.exp(1j * th)) for th in thetas]
        bracket = None
        for (t1, v1), (t2, v2) in zip(zip(thetas, vals), zip(thetas[1:], vals[1:])):
            if v1 == 0.0 or v1 * v2 < 0.0:
                bracket = (t1, v1, t2, v2)
                break
        if bracket is None:
            return False
    return True


def certify_genus_zero(spec: InitialDataSpec, scattering, x: float,
                       w_points_per_side: int = 8,
                       flank_offset: float = 0.02,
                       settings: Optional[QuadratureSettings] = None) -> SignReport:
    """Trace the Im h = 0 curve from mu+ toward alpha(x) and assemble the
    sign evidence for the genus-zero ansatz at this x.

    ``scattering`` is accepted for interface parity with the callers that
    own one; the x-plane field evaluations only need the spec.  Raises
    TraceStalled when the tracer dies at a genuine interior critical point
    (a break candidate), as opposed to the expected gradient collapse at the
    branch point alpha(x).
    """
    x = float(x)
    settings = settings or QuadratureSettings(abs_tol=1e-8, rel_tol=1e-8)
    failures: list = []

    # layer 1: w on the real axis outside [mu-, mu+]
    w_margin = -math.inf
    for zr in _w_grid(spec, w_points_per_side):
        if _near_any_cut(spec, complex(zr), 0.05):
            continue
        w_margin = max(w_margin, w_of_z(spec, zr, check=False,
                                        settings=settings))
    w_ok = w_margin < 0.0
    if not w_ok:
        failures.append(f"w reaches {w_margin:.3e} >= 0 on the real grid")

    # structural justification label
    label = "numeric_grid"
    try:
        probes = [spec.mu_plus + 0.3, spec.mu_plus + 1.0,
                  spec.mu_minus - 0.3, spec.mu_minus - 1.0]
        conds = [sufficient_conditions(spec, zp) for zp in probes]
        if all(c["vertical_line_test_holds"] for c in conds):
            label = "vertical_line_test"
        elif all(c["segment_inclusion_holds"] for c in conds):
            label = "segment_inclusion"
        elif all(c["arg_condition_holds"] for c in conds):
            label = "arg_condition"
    except Exception:
        pass

    alpha = complex(spec.alpha(x))

    def field_im(z):
        return h_field(spec, x, z, settings=settings).imag

    def field_grad(z):
        # for analytic h: grad Im h = (Im h_z, Re h_z)
        hz = h_z_field(spec, x, z, settings=settings)
        return complex(hz.imag, hz.real)

    # layer 2: the level curve from mu+ to alpha(x)
    seed_h = 0.05 * max(abs(alpha - spec.mu_plus), 0.2)
    seed = complex(spec.mu_plus, seed_h)
    span = abs(alpha) + abs(spec.mu_plus) + 2.0
    bounds = (spec.mu_minus - span, spec.mu_plus + span, -0.05, span)
    trace_settings = TraceSettings(corrector_tol=1e-8, max_nodes=600,
                                   min_step=1e-4, max_step=0.05)
    curve = None
    reaches = False
    try:
        curve = trace_implicit_curve(field_im, seed, 1j, step=0.02,
                                     bounds=bounds, gradient=field_grad,
                                     settings=trace_settings)
        nodes = list(curve.nodes)
    except StagnationAtCriticalPoint as stall:
        curve = stall.partial_path
        nodes = list(curve.nodes) if curve else []
        if not nodes:
            raise TraceStalled(
                f"level-curve tracer stalled immediately at x = {x}")
        if abs(nodes[-1] - alpha) > 0.1 * (1 + abs(alpha)):
            raise TraceStalled(
                f"level curve hit a critical point at {nodes[-1]:.4f}, "
                f"far from alpha(x) = {alpha:.4f}; break candidate")

    if nodes:
        k_near = min(range(len(nodes)), key=lambda i: abs(nodes[i] - alpha))
        near = nodes[k_near]
        if abs(near - alpha) <= 0.15 * (1 + abs(alpha)):
            if _landing_confirmed(field_im, alpha, near - alpha):
                reaches = True
                nodes = nodes[:k_near + 1] + [alpha]
                curve = ContourPath(tuple(nodes), termination="landed")
        if not reaches:
            failures.append(
                f"level curve closest approach to alpha(x) is "
                f"{abs(near - alpha):.3e}")
        for a, b in zip(nodes[:-1], nodes[1:]):
            hit = _near_any_cut(spec, a, 1e-3)
            if not hit:
                for cut in spec.cuts:
                    crossings, _ = _segment_intersections(a, b,
                                                          list(cut.nodes))
                    if crossings:
                        hit = True
                        break
            if hit:
                failures.append(f"level curve crosses a log cut near {a:.4f}")
                break

    # flank signs along the traced curve.  The computed field is one smooth
    # branch, so across a genuine zero level curve Im h must change sign;
    # same-sign flanks mean the tracer is riding a ridge or a cut artifact.
    # The main-arc inequalities themselves (Im h < 0 for the two boundary
    # branches) follow from this flip plus the outer-side negativity checked
    # below, since the branches differ by a global sign.
    if reaches and len(nodes) > 4:
        mu_p = complex(spec.mu_plus)
        for i in range(2, len(nodes) - 2, max(1, len(nodes) // 8)):
            p = nodes[i]
            t = nodes[i + 1] - nodes[i - 1]
            t /= abs(t)
            # near either endpoint the offset disc must not wrap around the
            # branch point into the sector where Im h is legitimately positive
            mag = min(flank_offset * (1.0 + abs(p)),
                      0.3 * abs(p - alpha), 0.3 * abs(p - mu_p))
            # shrink the probe until it no longer straddles a neighbouring
            # zero curve (near mu+ the adjacent curves pinch together)
            flipped = any(
                field_im(p + s * mag * 1j * t)
                * field_im(p - s * mag * 1j * t) < 0.0
                for s in (1.0, 0.5, 0.25, 0.1))
            if not flipped:
                failures.append(
                    f"Im h does not change sign across the level curve "
                    f"near {p:.4f}")
                break

    monotone = all(
        spec.a_of(complex(u)).real <= spec.a_of(complex(u + 0.25)).real + 1e-12
        for u in [-12.0 + 0.5 * i for i in range(48)])

    # outer-side negativity: just outside the boundary arc between alpha(x)
    # and mu+ the field satisfies Im h < 0 outright (the argument-sum bound
    # holds there when a is monotone).  Together with the sign flip across
    # the traced curve this pins the main-arc inequalities.
    if monotone:
        for dy in (0.4, 0.9, 1.6, 2.6, 4.0):
            z0 = complex(spec.alpha(x + dy))
            tangent = spec.alpha_prime(x + dy)
            if abs(tangent) < 1e-8 or _near_any_cut(spec, z0, 0.05) \
                    or abs(z0 - spec.mu_plus) < 0.05 or abs(z0 - alpha) < 0.05:
                continue
            probe = z0 + 0.02 * (1.0 + abs(z0)) * 1j * tangent / abs(tangent)
            val = field_im(probe)
            if val >= 0.0:
                failures.append(
                    f"Im h = {val:.3e} >= 0 just outside the boundary arc "
                    f"at {probe:.4f}")
                break

    # layer 3: the complementary arc
    gamma_c_ok = False
    side_hits = 0
    samples = 0
    for j in range(1, 7):
        y = x - 0.45 * j
        zc = complex(spec.alpha(y))
        if _near_any_cut(spec, zc, 0.05) or abs(zc - spec.mu_plus) < 0.05:
            continue
        tangent = spec.alpha_prime(y)
        if tangent == 0:
            continue
        n_off = 0.02 * 1j * tangent / abs(tangent)
        samples += 1
        if field_im(zc + n_off) > 0.0 or field_im(zc - n_off) > 0.0:
            side_hits += 1
    if samples:
        gamma_c_ok = side_hits == samples
    if not gamma_c_ok:
        failures.append(
            f"Im h > 0 held on {side_hits}/{samples} complementary-arc "
            "samples")
    if not monotone:
        label = f"{label} (a(x) non-monotone: sampled, not certified)"

    return SignReport(
        x=x,
        w_ok=w_ok,
        w_margin=w_margin,
        lambda_curve=curve,
        lambda_reaches_alpha=reaches,
        gamma_c_sign_ok=gamma_c_ok,
        sufficient_condition_used=label,
        failures=failures,
    )
