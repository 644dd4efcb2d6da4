import ahscatter.modulation as mod
from ahscatter.ah_transform import ScatteringData
from ahscatter.errors import BudgetExceeded
from ahscatter.initial_data import builtin_family

spec = builtin_family("sech", 2.0)
scn = ScatteringData.from_spec(spec, closed_form=True)
A0 = complex(spec.alpha(0.0))

raw = mod.integrate_path
def shim(f, path, settings):
    try:
        return raw(f, path, settings)
    except BudgetExceeded as e:
        p, q = path.nodes[0], path.nodes[-1]
        print(f"STALL seg {p:+.6f} -> {q:+.6f} est={e.error_estimate:.3e} "
              f"flags=({settings.singular_start},{settings.singular_end})")
        # probe the integrand for a jump
        for s in (0.45, 0.49, 0.499, 0.501, 0.51, 0.55):
            y = p + (q - p) * s
            print(f"   f({s:.3f}) = {f(y):+.6f}")
        raise
mod.integrate_path = shim

# off-curve alpha, as continuation produces after one t step
A = A0 + (0.004 + 0.003j)
try:
    r = mod.moment_residuals(scn, A, 0.0, 0.01)
    print("ok", r)
except BudgetExceeded:
    nodes, k_mu = mod._moment_arc(spec, A)
    print("k_mu =", k_mu)
    for j, w in enumerate(nodes):
        print(f"  [{j}] {w.real:+.6f}{w.imag:+.6f}j")
