"""Build the reference surface: a quadric, a curve of class (1, 3) tangent to
every vertical fibre to order three, and three towers of three blow-ups that
separate the curve from three chosen fibres.

Run:  python demos/01_blowup_tower.py
"""

from blowdown import new_quadric

model = new_quadric()
print(f"base: {model.base}, rank {model.rank}, K = {model.canonical_class}")
print(f"K^2 = {model.intersect(model.canonical_divisor(), model.canonical_divisor())}")

# the curve and three fibres it is triply tangent to
model.declare_curve("C", (1, 3))
for i in (1, 2, 3):
    model.declare_curve(f"F{i}", (1, 0))
print(f"\nC^2 = {model.intersect('C', 'C')}, C.F1 = {model.intersect('C', 'F1')}")

# each tower blows up the moving intersection point of C and the fibre:
# the second and third centres are infinitely near, sitting on the previous
# exceptional curve
for i in (1, 2, 3):
    model.blow_up(f"G{i}", [("C", 1), (f"F{i}", 1)])
    model.blow_up(f"H{i}", [("C", 1), (f"F{i}", 1), (f"G{i}", 1)])
    model.blow_up(f"E{i}", [("C", 1), (f"F{i}", 1), (f"H{i}", 1)])
    print(f"after tower {i}: C.F{i} = {model.intersect('C', f'F{i}')}, "
          f"C^2 = {model.intersect('C', 'C')}")

print(f"\nfinal rank: {model.rank} (so the lattice has signature "
      f"{model.lattice_signature()})")

print("\nintersection table of the first tower:")
names = ["C", "F1", "G1", "H1", "E1"]
header = "      " + "".join(f"{n:>5}" for n in names)
print(header)
for a in names:
    row = "".join(f"{str(model.intersect(a, b)):>5}" for b in names)
    print(f"{a:>5} {row}")

print("\nevery declared curve is rational:")
for name in names:
    print(f"  genus({name}) = {model.arithmetic_genus(name)}")
