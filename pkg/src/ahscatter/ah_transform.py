"""Forward and inverse transforms between initial data and scattering data.

The forward map sends alpha to f0 via one-sided integrals of the radical:

    f0(z)  = int_{x(z)}^{+inf} [ (z - mu+) + R(y, z) ] dy
             + (z - mu+) x(z) + f0(mu+),
    f0'(z) = int_{x(z)}^{+inf} [ 1 + (z - a(y)) / R(y, z) ] dy + x(z),

with R branch-tracked from the right anchor (R ~ -(z - mu+)) and the tail
beyond the truncation abscissa fitted exponentially.  The inverse map
recovers the real point x whose boundary value is a given z on the curve
alpha(R), by integrating f0' against the one-sided radical along the curve:

    x(alpha) = -(2/pi) Im int_{x_t}^{+inf}
                  f0'(alpha(y)) alpha'(y) / R_+(alpha(y)) dy,

where alpha(x_t) = alpha and R_+ is the boundary value continued from
+|mu+ - alpha| at the mu+ end of the curve.  Since the integration runs on
the parametrising real line, the inner f0' evaluations know their preimage
exactly and skip the Newton solve.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    AtMuPlus,
    NoConvergence,
    PathNotOnSigma,
)
from .initial_data import InitialDataSpec, builtin_family, inverse_map
from .numerics import QuadratureSettings
from .radical_fields import (
    MU_EXCLUSION,
    ROOT_QUOTIENT_RADIUS,
    TrackedRadical,
    _anchor_abscissa,
    _anchor_value,
    _exponential_tail,
    _integrate_tracked,
    _p_factory,
    _real_axis_nodes,
)

__all__ = [
    "forward_f0",
    "f0_prime",
    "w_of_z",
    "inverse_x",
    "roundtrip_residual",
    "branch_jump_delta_f",
    "ScatteringData",
    "sech_closed_forms",
]


def _default_settings(settings):
    return settings or QuadratureSettings(abs_tol=1e-11, rel_tol=1e-11)


def _exclusions(spec, z, direction=+1):
    mu = spec.mu_plus if direction > 0 else spec.mu_minus
    if abs(complex(z) - mu) < MU_EXCLUSION:
        raise AtMuPlus(
            f"scattering integrals degenerate within {MU_EXCLUSION} of mu")


def _outgoing_nodes(spec, z, x_from, direction, xa):
    """Polyline from x_from out to the anchor abscissa, along the real axis
    when the start is (nearly) real, else a straight run."""
    x_from = complex(x_from)
    if abs(x_from.imag) <= 1e-12:
        nodes = [complex(p) for p in _real_axis_nodes(spec, z, x_from.real, xa)]
        # P is rooted at x_from itself, and the start substitution only
        # regularises a root sitting exactly on the first node, so keep the
        # true start even while routing the rest of the path along the axis.
        nodes[0] = x_from
        return nodes
    return [x_from, complex(xa)]


def _one_sided_integral(spec, z, x_z, integrand_of, direction, settings,
                        tail_rate_hint=1.0):
    """Shared engine for f0 and f0': integral from x_z out to +-inf of
    integrand_of(y, R), tail by exponential fit, returns (value, anchor_used).
    """
    z = complex(z)
    P = _p_factory(spec, z, root=x_z)
    xa_base = _anchor_abscissa(spec, z, abs(complex(x_z).real) + 2 - 14.0)

    def raw_radical(y):
        # Far beyond the data's support R ~ -(z - a(y)), and b(y) decays
        # faster than |z - a(y)| can, so matching each value against that
        # local target is sound.  A sign cached from one sample is not: P
        # runs close to the negative real axis when z is nearly real, and
        # rounding noise then flips the principal square root's half-plane
        # from one tail point to the next.
        pv = P(y)
        r = cmath.sqrt(pv)
        target = -(z - spec.a_of(y))
        return r if abs(r - target) <= abs(r + target) else -r

    def tail_sample(s):
        y = s if direction > 0 else -s
        return integrand_of(y, raw_radical(y))

    needed = max(settings.abs_tol * 10, 1e-13)
    X_used, tail, _ = _exponential_tail(tail_sample, xa_base, needed)
    xa = direction * X_used
    if direction < 0:
        tail = -tail  # the tail integral runs toward -inf

    nodes = _outgoing_nodes(spec, z, x_z, direction, xa)
    tracker = TrackedRadical(P, nodes, ("value",
                                        _anchor_value(spec, z, xa, direction)),
                             anchor_at_end=True)
    flags = settings.with_flags(True, False)
    val, _ = _integrate_tracked(spec, nodes, tracker, integrand_of, flags)
    return val + tail, xa


def forward_f0(spec: InitialDataSpec, z: complex,
               f0_at_mu_plus: complex = 0.0,
               settings: Optional[QuadratureSettings] = None,
               direction: int = +1,
               x_z: Optional[complex] = None) -> complex:
    """f0(z) for Im z >= 0, normalised so f0(mu+) equals ``f0_at_mu_plus``.

    Evaluation within MU_EXCLUSION of mu+- raises AtMuPlus, and exactly at a
    logarithmic branch point AtLogPoint; on the cuts the value returned is
    the limit from the side the preimage Newton converged on, so callers
    probing a cut should offset z themselves.  ``direction=-1`` gives the
    left-normalised variant anchored at -inf with mu-.
    """
    settings = _default_settings(settings)
    z = complex(z)
    if z.imag < 0:
        return complex(forward_f0(spec, z.conjugate(),
                                  f0_at_mu_plus=complex(f0_at_mu_plus).conjugate(),
                                  settings=settings,
                                  direction=direction)).conjugate()
    mu = spec.mu_plus if direction > 0 else spec.mu_minus
    if x_z is None:
        # the exclusion protects the preimage solve, which degenerates as
        # x(z) runs off to infinity; a supplied preimage certifies z
        _exclusions(spec, z, direction)
        x_z = inverse_map(spec, z)
    x_z = complex(x_z)

    def integrand(y, R):
        return (z - mu) + R

    val, _ = _one_sided_integral(spec, z, x_z, integrand, direction, settings)
    return val + (z - mu) * x_z + complex(f0_at_mu_plus)


def f0_prime(spec: InitialDataSpec, z: complex,
             settings: Optional[QuadratureSettings] = None,
             direction: int = +1,
             x_z: Optional[complex] = None) -> complex:
    """f0'(z), same anchoring and exclusions as forward_f0."""
    settings = _default_settings(settings)
    z = complex(z)
    if z.imag < 0:
        return complex(f0_prime(spec, z.conjugate(), settings=settings,
                                direction=direction)).conjugate()
    if x_z is None:
        _exclusions(spec, z, direction)
        x_z = inverse_map(spec, z)
    x_z = complex(x_z)

    def integrand(y, R):
        return 1.0 + (z - spec.a_of(y)) / R

    val, _ = _one_sided_integral(spec, z, x_z, integrand, direction, settings)
    return val + x_z


def _f0_prime_on_curve(spec, y, settings):
    """f0'(alpha(y)) for a parameter point y on (or detoured just off) the
    real line: the preimage of alpha(y) is y itself, no root solve needed."""
    z = spec.alpha(y)
    return f0_prime(spec, z, settings=settings, x_z=complex(y))


def _real_preimage_on_curve(spec, z, grid_half_width=30.0):
    """Real x_t with alpha(x_t) = z, or PathNotOnSigma if z leaves the curve."""
    z = complex(z)
    best_x, best_d = 0.0, float("inf")
    n = 1200
    for i in range(n + 1):
        y = -grid_half_width + 2 * grid_half_width * i / n
        d = abs(spec.alpha(y) - z)
        if d < best_d:
            best_x, best_d = y, d
    x = best_x
    for _ in range(60):
        f = spec.alpha(x) - z
        if abs(f) <= 1e-13 * (1 + abs(z)):
            break
        dp = spec.alpha_prime(x)
        if abs(dp) < 1e-14:
            break
        x -= (f / dp).real
    if abs(spec.alpha(x) - z) > 1e-9 * (1 + abs(z)):
        raise PathNotOnSigma(
            f"z = {z!r} is not on the boundary curve alpha(R) "
            f"(closest approach {best_d:.3e})")
    return x


def inverse_x(spec: InitialDataSpec, z: complex,
              settings: Optional[QuadratureSettings] = None) -> float:
    """Real x with alpha(x) = z, recovered from f0' alone.

    The integral runs along the parametrised curve from the target back to
    the mu+ end; its radical is branch-tracked from +|mu+ - z| there.  The
    answer is compared against nothing: the real-axis Newton solve below only
    locates the *path endpoint* x_t, and the returned value is the integral.
    """
    settings = settings or QuadratureSettings(abs_tol=1e-10, rel_tol=1e-10)
    z = complex(z)
    x_t = _real_preimage_on_curve(spec, z)
    zb = z.conjugate()

    def P(y):
        d = y - x_t
        if abs(d) < ROOT_QUOTIENT_RADIUS:
            # difference-quotient form: alpha(y) - z vanishes at x_t and the
            # plain subtraction has no correct digits left this close in
            first = d * spec.alpha_prime(x_t + 0.5 * d)
        else:
            first = spec.alpha(y) - z
        return first * (spec.alpha(y) - zb)

    def inner_settings(y):
        # The f0' factor is multiplied by alpha'(y), which vanishes
        # exponentially along the tail, so its tolerance may relax by the
        # same factor.  Far out, |z - mu+| is so small that rounding noise in
        # alpha caps the achievable inner accuracy near 1e-9 absolute; without
        # the relaxation the inner quadrature would chase that noise forever.
        ap = abs(spec.alpha_prime(complex(y)))
        tol = 1e-11 / max(ap, 1e-14)
        return QuadratureSettings(abs_tol=min(max(tol, 1e-10), 1e-4),
                                  rel_tol=1e-10)

    def integrand(y, Rp):
        return (_f0_prime_on_curve(spec, y, inner_settings(y))
                * spec.alpha_prime(y) / Rp)

    def tail_sample(s):
        # beyond the anchor the radical is +sqrt with no zeros in the way
        al = spec.alpha(s)
        r = cmath.sqrt((al - z) * (al - zb))
        if r.real < 0:
            r = -r
        return integrand(s, r)

    needed = max(settings.abs_tol * 10, 1e-12)
    X_used, tail, _ = _exponential_tail(
        tail_sample, max(20.0, abs(x_t) + 8.0), needed)

    nodes = [complex(p) for p in _real_axis_nodes(spec, z, x_t, X_used)]
    anchor_pt = nodes[-1]
    av = cmath.sqrt(P(anchor_pt))
    if av.real < 0:
        av = -av
    tracker = TrackedRadical(P, nodes, ("value", av), anchor_at_end=True)
    flags = settings.with_flags(True, False)
    val, _ = _integrate_tracked(spec, nodes, tracker, integrand, flags)
    return -(2.0 / math.pi) * (val + tail).imag


def roundtrip_residual(spec: InitialDataSpec, x_samples,
                       settings: Optional[QuadratureSettings] = None) -> float:
    """Max over samples of |inverse_x(alpha(x)) - x|: end-to-end consistency.

    When the curve is doubly covered (alpha even, so z = alpha(x) is blind to
    the sign of x) the residual is measured against the canonical sheet
    representative -|x|: that is the preimage the grid scan in inverse_x
    resolves deterministically, and the only roundtrip that is well defined
    from z alone.  The integral itself is sheet-faithful: started from the
    +|x| preimage it returns +|x|.
    """
    try:
        samples = [float(v) for v in x_samples]
    except TypeError:
        samples = [float(x_samples)]
    worst = 0.0
    for x in samples:
        target = -abs(x) if spec.doubly_covered_boundary else x
        got = inverse_x(spec, spec.alpha(x), settings=settings)
        worst = max(worst, abs(got - target))
    return worst


def w_of_z(spec: InitialDataSpec, z: float, check: bool = True,
           settings: Optional[QuadratureSettings] = None) -> float:
    """w(z) = sign(mu+ - z) Im f0(z) for real z, via the vertical leg from
    the axis up to the preimage x(z) (the horizontal parts of the contour
    are real and drop out of the imaginary part).

    With ``check``, a second contour through a shifted corner must agree to
    1e-6 or NoConvergence is raised.
    """
    settings = _default_settings(settings)
    z = float(z)
    if abs(z - spec.mu_plus) < 1e-12 or abs(z - spec.mu_minus) < 1e-12:
        return 0.0
    x_z = complex(inverse_map(spec, z))
    if abs(x_z.imag) < 1e-14:
        return 0.0

    def leg_im(corner):
        nodes = [complex(p) for p in
                 _real_axis_nodes(spec, z, _anchor_abscissa(
                     spec, z, abs(corner) + 2 - 14.0), corner)]
        nodes.append(x_z)
        P = _p_factory(spec, z, root=x_z)
        xa = nodes[0]
        tracker = TrackedRadical(
            P, nodes, ("value", _anchor_value(spec, z, xa.real, +1)))
        flags = settings.with_flags(False, True)
        # only the final leg contributes an imaginary part, but integrating
        # all of them keeps the bookkeeping honest
        val, _ = _integrate_tracked(spec, nodes, tracker,
                                    lambda y, R: R, flags)
        return (-val).imag

    w1 = leg_im(x_z.real)
    sign = 1.0 if z < spec.mu_plus else -1.0
    if check:
        w2 = leg_im(x_z.real + 1.0)
        if abs(w1 - w2) > 1e-6:
            raise NoConvergence(
                f"w(z) contour dependence: {w1:.3e} vs {w2:.3e} at z = {z}")
    return sign * w1


def branch_jump_delta_f(spec: InitialDataSpec, z: complex,
                        x: float = 0.0,
                        delta: float = 1e-7,
                        f0_at_mu_plus: complex = 0.0,
                        settings: Optional[QuadratureSettings] = None) -> complex:
    """Jump f+ - f- of f = f0 - x z across the log cut through z.

    The + side is the left of the cut's own orientation (its polyline runs
    from the branch point outward), so the probe offset is i times the local
    tangent.  One Richardson step in the probe offset sharpens the limit.
    """
    settings = _default_settings(settings)
    z = complex(z)
    tangent = None
    for cut in spec.cuts:
        nodes = list(cut.nodes)
        for a, b in zip(nodes[:-1], nodes[1:]):
            d = b - a
            L2 = d.real ** 2 + d.imag ** 2
            if L2 == 0:
                continue
            t = ((z - a) * d.conjugate()).real / L2
            if -0.05 <= t <= 1.05 and abs(z - (a + t * d)) < 1e-6 + 0.02:
                tangent = d / abs(d)
                break
        if tangent is not None:
            break
    if tangent is None:
        raise PathNotOnSigma(f"z = {z!r} is not on any registered log cut")
    probe_dir = 1j * tangent

    def probe(d):
        fp = forward_f0(spec, z + d * probe_dir, f0_at_mu_plus=f0_at_mu_plus,
                        settings=settings) - float(x) * (z + d * probe_dir)
        fm = forward_f0(spec, z - d * probe_dir, f0_at_mu_plus=f0_at_mu_plus,
                        settings=settings) - float(x) * (z - d * probe_dir)
        return fp - fm

    d1 = probe(delta)
    d2 = probe(0.5 * delta)
    return 2.0 * d2 - d1


# --- closed forms for the sech family ------------------------------------------


def _log_decreasing(w: complex) -> complex:
    """log of a factor of the form c - z evaluated as a limit from Im z > 0:
    on the negative real axis the argument is -pi, which plain complex
    subtraction (losing the signed zero) would flip to +pi."""
    w = complex(w)
    if w.imag == 0.0 and w.real < 0.0:
        return math.log(-w.real) - 1j * math.pi
    return cmath.log(w)


def _log_increasing(w: complex) -> complex:
    """log of a factor of the form z - c from Im z > 0: the principal branch
    already gives +pi on the negative real axis."""
    w = complex(w)
    if w.imag == 0.0 and w.real < 0.0:
        return math.log(-w.real) + 1j * math.pi
    return cmath.log(w)


def sech_closed_forms(mu: float):
    """Closed-form (f0, f0', w, f0(mu+)) for the sech family.

    Branch choices take all logs as limits from Im z > 0.  Returns a tuple
    (f0, f0p, w, constant) of callables and the value at mu+.
    """
    mu = float(mu)
    half = 0.5 * mu
    t2 = half * half - 1.0
    T = cmath.sqrt(complex(t2))
    if T.real < 0 or (T.real == 0 and T.imag < 0):
        T = -T

    def xlog(c, w, log_fn):
        # c * log(w) with the 0 * log(0) limit
        if w == 0:
            return 0.0 + 0.0j
        return c * log_fn(w)

    def f0(z):
        z = complex(z)
        if z.imag < 0:
            return complex(f0(z.conjugate())).conjugate()
        terms = (half - z) * 0.5j * math.pi
        terms += xlog(half - z, half - z, _log_decreasing)
        terms += xlog(0.5 * (z + T), z + T, _log_increasing)
        terms += xlog(0.5 * (z - T), z - T, _log_increasing)
        if abs(T) > 0:
            terms -= T * cmath.atanh(T / half)
        terms += half * math.log(2.0)
        return terms

    def f0p(z):
        z = complex(z)
        if z.imag < 0:
            return complex(f0p(z.conjugate())).conjugate()
        return (-0.5j * math.pi - _log_decreasing(half - z)
                + 0.5 * _log_increasing(z + T)
                + 0.5 * _log_increasing(z - T))

    def w(z):
        z = float(z)
        if mu >= 2.0 and abs(z) <= T.real:
            return 0.5 * math.pi * (half - T.real)
        return 0.5 * math.pi * (half - abs(z))

    constant = f0(complex(half))
    return f0, f0p, w, constant


# --- packaged scattering data ---------------------------------------------------


@dataclass
class ScatteringData:
    """f0 and f0' bundled with their normalisation and provenance.

    ``kind`` is 'numeric' (quadrature-backed) or 'closed_form' (family
    formula).  Values for Im z < 0 follow from the Schwarz symmetry
    f0(conj z) = conj f0(z).
    """

    spec: InitialDataSpec
    mu_plus: float
    f0_at_mu_plus: complex
    kind: str = "numeric"
    _f0: Optional[Callable[[complex], complex]] = field(default=None, repr=False)
    _f0p: Optional[Callable[[complex], complex]] = field(default=None, repr=False)
    settings: Optional[QuadratureSettings] = None

    @classmethod
    def from_spec(cls, spec: InitialDataSpec, closed_form: bool = False,
                  settings: Optional[QuadratureSettings] = None):
        if closed_form:
            if spec.family_tag != "sech":
                raise ValueError(
                    "closed-form scattering data exists only for the sech "
                    "family here")
            cf0, cf0p, _w, const = sech_closed_forms(spec.parameter)
            return cls(spec=spec, mu_plus=spec.mu_plus,
                       f0_at_mu_plus=const, kind="closed_form",
                       _f0=cf0, _f0p=cf0p, settings=settings)
        return cls(spec=spec, mu_plus=spec.mu_plus, f0_at_mu_plus=0.0,
                   kind="numeric", settings=settings)

    def alpha_of_x(self, x: float) -> complex:
        return complex(self.spec.alpha(float(x)))

    def f0(self, z: complex) -> complex:
        z = complex(z)
        if self._f0 is not None:
            return self._f0(z)
        if z.imag < 0:
            return complex(self.f0(z.conjugate())).conjugate()
        return forward_f0(self.spec, z, f0_at_mu_plus=self.f0_at_mu_plus,
                          settings=self.settings)

    def f0_prime(self, z: complex) -> complex:
        z = complex(z)
        if self._f0p is not None:
            return self._f0p(z)
        if z.imag < 0:
            return complex(self.f0_prime(z.conjugate())).conjugate()
        return f0_prime(self.spec, z, settings=self.settings)

    def to_dict(self) -> dict:
        return {
            "family": self.spec.family_tag,
            "parameter": self.spec.parameter,
            "mu_plus": self.mu_plus,
            "f0_at_mu_plus": [complex(self.f0_at_mu_plus).real,
                              complex(self.f0_at_mu_plus).imag],
            "kind": self.kind,
        }

    @classmethod
    def from_dict(cls, payload: dict):
        spec = builtin_family(payload["family"], payload["parameter"])
        data = cls.from_spec(spec,
                             closed_form=(payload["kind"] == "closed_form"))
        if payload["kind"] != "closed_form":
            re, im = payload["f0_at_mu_plus"]
            data.f0_at_mu_plus = complex(re, im)
        return data
