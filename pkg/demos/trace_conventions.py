"""
Horizontal traces and two sign slips
====================================

The Lee forms and torsion forms are traces over the horizontal distribution.
On a manifold where xi is not geodesic the full-frame trace gives a
different answer, and two of the listed linear relations only hold with a
flipped sign.  This script shows both effects on small examples.
"""

from pimanifold.catalog import build_f1_example, build_f11_example
from pimanifold.levi_civita import fundamental_data, koszul_levi_civita, lee_forms
from pimanifold.verify import analyze, run_identity_suite

# %%
# On the three-dimensional instance with [e0, e1] = e0 the Reeb field is not
# geodesic, so the trace over xi picks up an extra term.
m = build_f11_example(1)
lc = koszul_levi_civita(m)
F = fundamental_data(m, lc).F
theta_h, theta_star_h, *_ = lee_forms(m, F, trace="horizontal")
theta_f, theta_star_f, *_ = lee_forms(m, F, trace="full")
def show(form):
    return " ".join(str(v) for v in form.components)


print("theta  horizontal:", show(theta_h), "  full:", show(theta_f))
print("theta* horizontal:", show(theta_star_h), "  full:", show(theta_star_f))

# %%
# The closed form of F for this class matches the horizontal version only.
print("class:", analyze(m).classification.label.value)

# %%
# On [e1, e2] = e2 both sign variants are evaluated; the printed one leaves a
# residual and the signed one holds.
f1 = build_f1_example()
for r in run_identity_suite(f1):
    if r.id in ("lee.theta-star-phi2", "lee.theta-star-phi2-signed", "tforms.t_star-phi", "tforms.t_star-phi-signed"):
        print(f"{r.status:8} {r.category:16} {r.id}  max {r.max_abs_residual}")
