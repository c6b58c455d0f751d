"""The vanishing-failure pipeline: pull back the ample divisor A, floor it,
certify the floor relatively nef, and let Riemann-Roch force h^1 != 0.

Run:  python demos/03_vanishing_failure.py
"""

from blowdown import QDivisor, contract, verify_kvv_failure
from blowdown.explorer import frobenius_construction

construction = frobenius_construction(3, 3)
con = contract(construction.model, construction.contracted_names)
ample = QDivisor({"E2": 1, "E3": 1, "E1": -1})

report = verify_kvv_failure(con, ample)

print("-psi*A expands, with orthogonality corrections, to:")
for name, coeff in sorted(report.pullback_expansion.named.items()):
    print(f"  {str(coeff):>5} * {name}")

print("\nits floor:")
for name, coeff in sorted(report.floor.named.items()):
    print(f"  {str(coeff):>3} * {name}")

print(f"\nrelatively nef: {report.relatively_nef} "
      f"({report.nef_hypothesis_note})")
for name, degree in sorted(report.nef_degrees.items()):
    print(f"  floor . {name} = {degree}")

print(f"\nK . floor   = {report.k_dot_floor}")
print(f"floor^2     = {report.floor_squared}")
print(f"chi(floor)  = {report.euler_char}")
print(f"\nchi = h0 - h1 + h2 with h0, h2 >= 0, so chi <= -1 forces h1 >= 1:")
print(f"  h1 != 0: {report.h1_nonzero}")
print(f"  not globally F-split: {report.not_globally_f_split}")
print(f"  no W2-liftable log resolution: {report.no_w2_liftable_log_resolution}")
