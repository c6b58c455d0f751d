"""The affine cone over the rank-one surface, polarized by A: compute the
proportionality constant, the crepancy of the partial resolution, the cone's
class group, and the non-Cohen-Macaulay certificate.

Run:  python demos/04_cone_certificate.py
"""

from blowdown import (
    QDivisor,
    build_cone,
    cone_klt_decision,
    contract,
    local_cohomology_certificate,
    verify_kvv_failure,
)
from blowdown.explorer import frobenius_construction

construction = frobenius_construction(3, 3)
con = contract(construction.model, construction.contracted_names)
ample = QDivisor({"E2": 1, "E3": 1, "E1": -1})

cone = build_cone(con, ample)
print(f"K_T = r*A with r = {cone.r}")
print(f"section discrepancy -(1+r) = {cone.section_discrepancy} "
      f"(crepant partial resolution: {cone.crepant_partial_resolution})")
torsion = " + ".join(f"Z/{t}" for t in cone.class_group.torsion) or "0"
print(f"cone class group: Z^{cone.class_group.rank} + {torsion}")

# the decision table cannot settle kltness here: A is not Cartier and the
# Q-factorial row assumes characteristic zero
decision = cone_klt_decision("klt", l_cartier=False, base_q_factorial=True, r=cone.r)
print(f"\ndecision table: {decision.conclusion} (rows {decision.rows_applied})")
for caveat in decision.caveats:
    print(f"  caveat: {caveat}")
print(f"  {cone.klt_note}")

# local cohomology at the vertex decomposes over powers of A; the m = -1
# summand is nonzero by the vanishing-failure pipeline, so the cone is not
# Cohen-Macaulay
kvv = verify_kvv_failure(con, ample)
certified = local_cohomology_certificate(cone, -1, kvv.h1_nonzero)
print(f"\nh1 certificate at m = -1: {kvv.h1_nonzero}")
print(f"Cohen-Macaulay: {certified.cm} (summand index {certified.cm_certificate_m})")
