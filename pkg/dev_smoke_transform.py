import cmath, math, time
from ahscatter.initial_data import builtin_family
from ahscatter.ah_transform import (
    forward_f0, f0_prime, w_of_z, inverse_x, roundtrip_residual,
    sech_closed_forms, ScatteringData, branch_jump_delta_f)

spec2 = builtin_family("sech", 2.0)
cf0, cf0p, cw, K2 = sech_closed_forms(2.0)
print("K(mu=2) =", K2, " expect ln2 =", math.log(2))

print("\n--- f0' numeric vs closed form, mu=2 ---")
for z in (0.4 + 0.7j, 1.8, 0.5, -0.3 + 0.2j, 2.5 + 0.1j):
    t0 = time.time()
    num = f0_prime(spec2, z)
    dt = time.time() - t0
    print(f"z={z}: num={num:.12f} closed={cf0p(z):.12f} |d|={abs(num-cf0p(z)):.2e} ({dt*1e3:.0f} ms)")

print("\n--- f0 numeric (with closed K) vs closed form ---")
for z in (0.4 + 0.7j, 1.8, 0.5):
    num = forward_f0(spec2, z, f0_at_mu_plus=K2)
    print(f"z={z}: num={num:.12f} closed={cf0(z):.12f} |d|={abs(num-cf0(z)):.2e}")

print("\n--- w(z) vs (pi/2)(1-|z|), mu=2 ---")
for z in (0.3, -0.6, 1.5, 0.9):
    t0 = time.time()
    wv = w_of_z(spec2, z)
    print(f"z={z}: w={wv:.12f} closed={cw(z):.12f} |d|={abs(wv-cw(z)):.2e} ({(time.time()-t0)*1e3:.0f} ms)")

print("\n--- roundtrips ---")
for name, par, xs in (
    ("sech", 2.0, (0.1, -1.0, 2.5)),
    ("sech", 1.0, (0.1, -1.0)),
    ("sech", 3.0, (0.5,)),
    ("bronski", 0.5, (0.3, -0.7)),
    ("bronski", 0.0, (0.3, -0.7, 1.5)),
    ("double_hump", 0.5, (0.2, -1.2)),
):
    sp = builtin_family(name, par)
    for x in xs:
        t0 = time.time()
        try:
            res = roundtrip_residual(sp, x)
            print(f"{name}({par}) x={x}: residual={res:.2e} ({time.time()-t0:.1f} s)")
        except Exception as e:
            print(f"{name}({par}) x={x}: {type(e).__name__}: {e}")

print("\n--- sech mu=1 branch jump on the cut [0, 0.866i]: expect i*pi*(z-T) ---")
spec1 = builtin_family("sech", 1.0)
T1 = spec1.log_points[0].z_star
for frac in (0.3, 0.7):
    zc = frac * T1
    d = branch_jump_delta_f(spec1, zc)
    expect = 1j * math.pi * (zc - T1)
    print(f"z={zc:.4f}: jump={d:.10f} expect={expect:.10f} |d|={abs(d-expect):.2e}")
