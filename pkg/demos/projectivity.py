"""Support functions on the shipped fans, and a refutation for the one without.

Run: python demos/projectivity.py
"""
from mdv import fan
from mdv.corpus import fixture_path

for name in ("p2", "p1xp1", "hirzebruch2", "nonprojective"):
    f = fan.load_fan(fixture_path(f"fans/{name}.json"))
    cert = fan.certify_projective(f)
    if cert is None:
        print(f"{name}: no strictly convex support function")
    else:
        print(f"{name}: values {[str(v) for v in cert.values]}")
