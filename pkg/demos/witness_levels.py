"""Witness search on P(1, 2, 3) with the curve y = x^2.

The curve has class 2H - E and self-intersection -1/3.  The orthogonal
class is 3H - E, and every multiple of it has a section not containing the
curve.

Run: python demos/witness_levels.py
"""
from mdv import wps
from mdv.poly import parse_polynomial

t = wps.WeightedTriple(1, 2, 3)
curve = wps.CurveData(parse_polynomial("y - x^2"), wps.DivClass(2, 1), t)
print("self-intersection:", curve.self_intersection)
print("orthogonal class:", wps.primitive_orthogonal_class(t, curve.cls))
for k, section in wps.huneke_witness_search(t, curve, 4):
    print(f"level {k}: {section.to_string()}")
