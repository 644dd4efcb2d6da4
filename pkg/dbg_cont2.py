import ahscatter.modulation as mod
from ahscatter.ah_transform import ScatteringData
from ahscatter.errors import BudgetExceeded
from ahscatter.initial_data import builtin_family

spec = builtin_family("sech", 2.0)
scn = ScatteringData.from_spec(spec, closed_form=True)

raw_cm = mod._collapsed_moments
def shim_cm(scattering, alpha, settings=None):
    try:
        return raw_cm(scattering, alpha, settings)
    except BudgetExceeded as e:
        print(f"FAIL alpha={alpha!r} est={e.error_estimate:.3e}")
        raise
mod._collapsed_moments = shim_cm

raw_ip = mod.integrate_path
def shim_ip(f, path, settings):
    try:
        return raw_ip(f, path, settings)
    except BudgetExceeded as e:
        p, q = path.nodes[0], path.nodes[-1]
        print(f"STALL seg {p:+.6f} -> {q:+.6f} est={e.error_estimate:.3e} "
              f"flags=({settings.singular_start},{settings.singular_end}) "
              f"abs_tol={settings.abs_tol:.2e}")
        for s in (0.05, 0.25, 0.45, 0.499, 0.501, 0.55, 0.75, 0.95):
            y = p + (q - p) * s
            try:
                print(f"   f({s:.3f}) = {f(y):+.6f}")
            except Exception as ex:
                print(f"   f({s:.3f}) raises {type(ex).__name__}")
        raise
mod.integrate_path = shim_ip

try:
    states = mod.continue_alpha(scn, 0.0, 0.05, complex(spec.alpha(0.0)), 0.01)
    st = states[-1]
    print(f"done: alpha={st.alpha:+.10f} steps={len(states)}")
except BudgetExceeded:
    pass
