"""The polynomial identities for m = 4 and the characteristic-p witness.

Run: python demos/char_p.py
"""
from mdv import gnwpoly

m = 4
system = gnwpoly.gnw_system(m)
for name, f in system.polynomials().items():
    print(f"{name}: {f.to_string()}")
for name, row in gnwpoly.verify_identities(m).items():
    print(f"identity ({name}) vanishes: {row['zero']}")
print(gnwpoly.symbolic_power_checks(m))

for p in (3, 5, 7):
    w = gnwpoly.char_p_witness(m, p)
    print(f"p = {p}: degree {w.degree} (expected {w.expected_degree}), terms {len(w.h)}, "
          f"g_c divides h: {w.g_c_divides_h}, vanishes on curve: {w.vanishes_on_curve}")
