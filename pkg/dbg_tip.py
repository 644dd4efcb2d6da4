import ahscatter.modulation as mod
from ahscatter.ah_transform import ScatteringData
from ahscatter.errors import BudgetExceeded
from ahscatter.initial_data import builtin_family
from ahscatter.numerics import ContourPath, QuadratureSettings, integrate_path

spec = builtin_family("sech", 2.0)
scn = ScatteringData.from_spec(spec, closed_form=True)
A = 1.000002j
nodes, k_mu = mod._moment_arc(spec, A)
print("nseg =", len(nodes) - 1, "k_mu =", k_mu)
tr_lower, tr_upper = mod._arc_trackers(spec, A, nodes, k_mu)
f0p = scn.f0_prime

p, q = nodes[0], nodes[1]

def fval(y):
    return f0p(y) / tr_lower.query(0, y)

# substituted integrand, same map as the singular-start branch
def g(s):
    y = p + (q - p) * s * s
    return fval(y) * 2.0 * (q - p) * s

base = g(0.5)
print("g(0.5) =", base)
for s in (1e-4, 1e-3, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
    v = g(s)
    print(f"  g({s:.4f}) = {v:+.12e}  rel dev {abs(v-base)/abs(base):.3e}")

# fine-grid noise scan around s = 0.5
import numpy as np
ss = np.linspace(0.4, 0.6, 2001)
vs = np.array([g(s) for s in ss])
# remove smooth trend with a quadratic fit, look at residual scatter
co = np.polyfit(ss, vs, 4)
res = vs - np.polyval(co, ss)
print("residual scatter about quartic fit:",
      float(np.abs(res).max()), "rel", float(np.abs(res).max()/abs(base)))

for tol in (1e-8, 1e-10, 5.56e-12):
    st = QuadratureSettings(abs_tol=tol, rel_tol=1e-10).with_flags(True, False)
    try:
        v, e = integrate_path(fval, ContourPath([p, q]), st)
        print(f"tol={tol:.2e}: I={v:+.10e} err={e:.3e}")
    except BudgetExceeded as ex:
        print(f"tol={tol:.2e}: BudgetExceeded est={ex.error_estimate:.3e}")
