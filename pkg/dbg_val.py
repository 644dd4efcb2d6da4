import time

from ahscatter.ah_transform import ScatteringData
from ahscatter.initial_data import builtin_family
from ahscatter.modulation import moment_residuals

for name, par, xs, cf in [
    ("sech", 2.0, [0.0, 1.0, -2.0], True),
    ("sech", 2.0, [1.0], False),
    ("bronski", 0.25, [0.5], False),
    ("double_hump", 0.5, [0.3], False),
]:
    spec = builtin_family(name, par)
    scn = ScatteringData.from_spec(spec, closed_form=cf)
    for x in xs:
        A = complex(spec.alpha(x))
        t0 = time.time()
        try:
            r1, r2 = moment_residuals(scn, A, x, 0.0)
            print(f"{name}({par}) x={x:+.1f} {'cf' if cf else 'numeric':7s}"
                  f" r1={r1:+.3e} r2={r2:+.3e}  ({time.time()-t0:.1f}s)")
        except Exception as e:
            print(f"{name}({par}) x={x:+.1f} {'cf' if cf else 'numeric':7s}"
                  f" {type(e).__name__}: {e}  ({time.time()-t0:.1f}s)")
