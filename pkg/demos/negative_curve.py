"""Negative curve on the blow-up of P(25, 72, 29) and the class orthogonal to it.

Run: python demos/negative_curve.py
"""
from mdv import wps

m = 4
curve = wps.negative_curve(m)
t = curve.triple
print(f"triple {t.weights}, curve {curve.f.to_string()}")
print(f"class {curve.cls.d} H - {curve.cls.l} E, self-intersection {curve.self_intersection}")
print(f"multiplicity at (1,1,1): {wps.multiplicity_at_e(curve.f, t)}")

# D_1 meets the curve in zero; its degree-(7m-3)(8m-3) sections are spanned by six monomials
d1 = wps.orthogonal_class(m, 1)
print(f"D_1 = {d1.d} H - {d1.l} E, D_1 . C = {wps.class_intersection(t, d1, curve.cls)}")
print("monomials:", wps.monomials_of_weighted_degree(t, d1.d))

# their second derivatives at (1,1,1) form an invertible 6x6 matrix, so D_1 has no section
r = wps.d1_determinant(m)
print(f"determinant {r.determinant}, closed form {r.closed_form}, equal in absolute value: {r.equal}")
print("sections of D_1 and D_2:", [lv.dimension for lv in wps.scan_levels(t, curve, 2)])
