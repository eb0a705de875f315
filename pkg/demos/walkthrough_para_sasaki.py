"""
A five-dimensional para-Sasaki-like Lie group
=============================================

Builds the two-parameter family, walks through its Levi-Civita connection,
curvature, class and the first natural connection, all in exact rationals.
"""

from fractions import Fraction

from pimanifold import (
    build_para_sasaki_example,
    classify,
    curvature_bundle,
    first_natural_pipeline,
    fundamental_data,
    koszul_levi_civita,
    validate,
)
from pimanifold.specfile import format_combo

# %%
# The structure: brackets of the left-invariant frame e0..e4 depend on two
# rationals lambda and mu.  Validation checks the Jacobi identity and every
# compatibility condition between phi, xi, eta and g.
m = build_para_sasaki_example(lam=Fraction(1, 2), mu=Fraction(1, 3))
print(m.name, "valid:", validate(m).all_zero)

# %%
# Koszul formula on the frame.  Only a dozen covariant derivatives survive.
lc = koszul_levi_civita(m)
for i in range(m.dim):
    for j in range(m.dim):
        terms = [(c, k) for k, c in enumerate(lc.gamma[i, j]) if c]
        if terms:
            print(f"D_e{i} e{j} =", format_combo(terms))

# %%
# Curvature.  The Ricci tensor is concentrated on the Reeb direction.
bundle = curvature_bundle(m, lc)
print("rho nonzero:", {idx: str(v) for idx, v in bundle.ricci.nonzero()})
print("tau =", bundle.tau, " tau* =", bundle.tau_star)

# %%
# The fundamental tensor F and its Lee forms decide the class.
data = fundamental_data(m, lc)
report = classify(m, lc, data)
print("class", report.label.value, "theta(xi) =", report.theta_xi)
print("para-Sasaki:", report.para_sasaki, "paracontact:", report.paracontact)

# %%
# The first natural connection differs from the Levi-Civita one only along
# e0, has constant torsion and is flat.
fnc = first_natural_pipeline(m, lc, data, bundle)
print("torsion:", {idx: str(v) for idx, v in fnc.torsion.T3.nonzero()})
print("t* =", " ".join(str(v) for v in fnc.torsion.t_star.components))
print("flat:", fnc.bundle.R.is_zero(), "and via the potential:", fnc.R_via_potential.is_zero())
