import cmath

import ahscatter.modulation as mod
from ahscatter.ah_transform import ScatteringData
from ahscatter.initial_data import builtin_family

spec = builtin_family("sech", 2.0)
scn = ScatteringData.from_spec(spec, closed_form=True)
A = 1.000002j
nodes, k_mu = mod._moment_arc(spec, A)
tr_lower, tr_upper = mod._arc_trackers(spec, A, nodes, k_mu)
p, q = nodes[0], nodes[1]

for s in (1e-4, 1e-3, 1e-2, 0.1, 0.5):
    y = p + (q - p) * s * s
    f0v = scn.f0_prime(y)
    Rtr = tr_lower.query(0, y)
    Rdir = cmath.sqrt((y - A) * (y - A.conjugate()))
    # direct sqrt up to sign; compare magnitudes and the ratio tracker/direct
    ratio = Rtr / Rdir
    print(f"s={s:.0e}: f0'={f0v:+.12f}  |Rtr|={abs(Rtr):.6e} "
          f"Rtr/Rdir={ratio:+.6f}")
    # normalized: g should equal 2*sqrt(q-p)*f0'/sqrt(y-A) up to branch
    gnorm = 2.0 * (q - p) * s * f0v / Rtr
    print(f"          g={gnorm:+.15e}")
