"""Contract the ten negative curves and study the rank-one surface that
results: canonical pullback, discrepancies, quotient singularities, and the
divisor class group.

Run:  python demos/02_contraction_and_pullback.py
"""

from blowdown import QDivisor, contract
from blowdown.explorer import frobenius_construction

construction = frobenius_construction(3, 3)
model = construction.model
con = contract(model, construction.contracted_names)
print(f"contracting {len(con.contracted)} curves: {', '.join(con.contracted)}")
print(f"target Picard rank: {con.target_rank}")

# the canonical class of the target, pulled back with the orthogonality
# correction supported on the contracted curves
k_target = con.pushforward(model.canonical_divisor())
pullback = con.pullback(k_target)
print("\npullback(K_T) - K_S has coefficients:")
for name, coeff in sorted(pullback.named.items()):
    print(f"  {name}: {coeff}")

discreps, classification = con.discrepancies()
print(f"\ndiscrepancies ({classification.value}):")
for name, a in sorted(discreps.items()):
    print(f"  a({name}) = {a}")

print("\nsingular points of the target:")
for report in con.classify_singularities():
    chain = " - ".join(report.component)
    print(f"  1/{report.hj_type[0]}(1,{report.hj_type[1]})  "
          f"[{report.label.value}]  from {chain} "
          f"(self-intersections {[-b for b in report.self_intersections]})")

group = con.class_group()
torsion = " + ".join(f"Z/{t}" for t in group.torsion) or "0"
print(f"\nclass group of the target: Z^{group.rank} + {torsion}")

# positivity against the general fibre witness
ample = QDivisor({"E2": 1, "E3": 1, "E1": -1})
print(f"\ndeg(-K_T) = {-con.degree_against(k_target)}")
print(f"deg(E1)   = {con.degree_against(QDivisor({'E1': 1}))}")
print(f"deg(A)    = {con.degree_against(ample)}  (A = E2 + E3 - E1)")
print(f"K_T = r*A with r = {con.numerically_proportional(k_target, ample)}")
