import time

import ahscatter.modulation as mod
from ahscatter.ah_transform import ScatteringData
from ahscatter.initial_data import builtin_family
from ahscatter.numerics import QuadratureSettings

spec = builtin_family("sech", 2.0)
scn = ScatteringData.from_spec(spec, closed_form=True)

t0 = time.time()
states = mod.continue_alpha(scn, 0.0, 0.05, complex(spec.alpha(0.0)), 0.01)
st = states[-1]
print(f"continue_alpha x=0 -> t=0.05: alpha={st.alpha:+.10f} "
      f"res=({st.residual[0]:+.2e},{st.residual[1]:+.2e}) "
      f"steps={len(states)}  ({time.time()-t0:.1f}s)")

# alpha should drift off the t=0 curve point; sanity: still upper half
assert st.alpha.imag > 0

oracle = ScatteringData.from_spec(spec, settings=QuadratureSettings(1e-7, 1e-7))
t0 = time.time()
cache = mod._cached_arc_quadrature(oracle, st.alpha, 0.0, 0.05)
print(f"arc cache: {len(cache[0])} points  ({time.time()-t0:.1f}s)")
t0 = time.time()
hits = mod._double_point_scan(oracle, st.alpha, 0.0, 0.05)
print(f"double-point scan hits={hits}  ({time.time()-t0:.1f}s)")
