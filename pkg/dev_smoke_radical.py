import cmath, math, time
from ahscatter.initial_data import builtin_family, inverse_map
from ahscatter.radical_fields import (
    radical_R, h_field, h_z_field, g_field, z_plane_radical,
    pinched_loop, plemelj_g, TrackedRadical, _segment_intersections)
from ahscatter.numerics import integrate_path, ContourPath, QuadratureSettings

spec = builtin_family("sech", 2.0)

# 1. anchored branch: R(0, 2) should be -sqrt(5)
r = radical_R(spec, 0.0, 2.0)
print("R(0,2) =", r, " expect", -math.sqrt(5))

# 2. normalization R/z -> -1
for z in (1e6, 1e6 * 1j, -1e6 + 2e6j):
    rr = radical_R(spec, 0.3, z)
    print("R/z at |z| big:", rr / z)

# 3. FD consistency: dh/dx = -R, dh/dz = h_z
z = 0.4 + 0.7j
x = 0.3
d = 1e-5
hp = h_field(spec, x + d, z)
hm = h_field(spec, x - d, z)
print("dh/dx vs -R:", (hp - hm) / (2 * d), -radical_R(spec, x, z))
hzp = h_field(spec, x, z + d)
hzm = h_field(spec, x, z - d)
hz = h_z_field(spec, x, z)
print("dh/dz vs h_z:", (hzp - hzm) / (2 * d), hz)

# h at x = x(z) should vanish
x_z = inverse_map(spec, z)
print("x(z) =", x_z, "h at x(z) re-landed:", h_field(spec, x_z.real, z) if abs(x_z.imag) < 1e-12 else "(complex preimage, skip)")

# 4. dg/dx = -(z + R)/2
t0 = time.time()
gp = g_field(spec, x + d, z)
gm = g_field(spec, x - d, z)
print("dg/dx vs -(z+R)/2:", (gp - gm) / (2 * d), -(z + radical_R(spec, x, z)) / 2)
print("   g timing per eval: %.3f s" % ((time.time() - t0) / 2))

# 5. Schwarz: h(x, conj z) = conj h(x, z)
print("Schwarz h:", h_field(spec, x, z.conjugate()), h_field(spec, x, z).conjugate())

# 6. z-plane radical: for A = alpha(0) = i, R(zeta) on the real axis inside
A = spec.alpha(0.0)
print("z-radical at 0 (expect +1):", z_plane_radical(A, spec.mu_plus, 0.0))
print("z-radical at 3 (expect -sqrt(10)):", z_plane_radical(A, spec.mu_plus, 3.0), -math.sqrt(10))
print("z-radical at 1e6j / z:", z_plane_radical(A, spec.mu_plus, 1e6j) / 1e6j)

# 7. loop: winding and synthetic Plemelj
loop = pinched_loop(A, spec.mu_plus)
p_mid = 0.5 * (A + spec.mu_plus)   # on the upper leg
val, err = integrate_path(lambda zt: 1.0 / (zt - p_mid), loop)
print("winding around arc point (expect -2*pi*i):", val, err)


class Synthetic:
    def __init__(self, spec, fn):
        self.spec = spec
        self.mu_plus = spec.mu_plus
        self.fn = fn
    def alpha_of_x(self, x):
        return self.spec.alpha(x)
    def f0(self, zeta):
        return self.fn(zeta)


# with f0 = x*zeta the phase f = f0 - x*zeta vanishes identically; build
# constants through the f0 slot instead (x = 0 so the -x*zeta term is off)
syn1 = Synthetic(spec, lambda zt: 1.0 + 0j)
for zq in (2.5, 0.3 + 1.5j, -1.0 - 0.8j):
    gv = plemelj_g(syn1, None, 0.0, zq)
    print("plemelj f=1 at", zq, "->", gv, "(expect 0.5)")

syn2 = Synthetic(spec, lambda zt: zt)
for zq in (2.5, 0.3 + 1.5j):
    gv = plemelj_g(syn2, None, 0.0, zq)
    expect = 0.5 * (zq + z_plane_radical(A, spec.mu_plus, zq))
    print("plemelj f=zeta at", zq, "->", gv, "expect", expect)

# 8. degenerate family: tracker survives the doubly covered axis
b0 = builtin_family("bronski", 0.0)
zb = b0.alpha(0.7)   # on the boundary curve; second preimage at -0.7
from ahscatter.radical_fields import _interior_real_preimages
print("interior preimages of alpha(0.7) on (-14, 0.7):",
      _interior_real_preimages(b0, zb, -14.0, 0.69999))
t0 = time.time()
h_deg = h_field(b0, -3.0, 0.4 + 0.9j)
print("bronski mu=0 h(-3, 0.4+0.9i) =", h_deg, " %.2f s" % (time.time() - t0))
