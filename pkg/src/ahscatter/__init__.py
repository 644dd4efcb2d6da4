"""Numerical toolkit for the semiclassical scattering transform of focusing NLS.

Modules:

- ``numerics``: adaptive complex contour quadrature, Newton root finding,
  predictor-corrector level-curve tracing.
- ``initial_data``: complexified initial data alpha(x), built-in families,
  inverse map x(z), ramification points, assumption checks.
- ``radical_fields``: branch-tracked radical R(x, z) and the g/h fields.
- ``ah_transform``: forward scattering function f0(z), its derivative, the
  inverse transform x(alpha), jump data on cuts.
- ``sign_analysis``: decay rate w(z), sufficient sign conditions, genus-zero
  certification along the level curve of Im h.
- ``modulation``: moment conditions in time, continuation of alpha(x, t),
  breaking detection.
- ``symmetry``: parity relations for symmetric data.
- ``zs_oracle``: direct Zakharov-Shabat integration at small epsilon and the
  semiclassical limit check.
- ``cli``: the ``ahscatter`` command-line driver.
"""

__version__ = "0.1.0"
