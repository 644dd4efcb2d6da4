import time

import ahscatter.modulation as mod
from ahscatter.ah_transform import ScatteringData
from ahscatter.initial_data import builtin_family

spec = builtin_family("double_hump", 0.5)
nodes, k_mu = mod._moment_arc(spec, complex(spec.alpha(0.3)))
print("k_mu =", k_mu, " nodes:")
for j, w in enumerate(nodes):
    print(f"  [{j}] {w.real:+.6f}{w.imag:+.6f}j")

raw = mod._f0_prime_raw
def shim(spec_, z, settings=None, x_z=None):
    try:
        return raw(spec_, z, settings=settings, x_z=x_z)
    except Exception as e:
        print(f"FAIL at z = {z!r}  x_z={x_z!r}  -> {type(e).__name__}: {e}")
        raise
mod._f0_prime_raw = shim

scn = ScatteringData.from_spec(spec, closed_form=False)
t0 = time.time()
try:
    r1, r2 = mod.moment_residuals(scn, complex(spec.alpha(0.3)), 0.3, 0.0)
    print(f"r1={r1:+.3e} r2={r2:+.3e}  ({time.time()-t0:.1f}s)")
except Exception as e:
    print(f"{type(e).__name__}: {e}  ({time.time()-t0:.1f}s)")
