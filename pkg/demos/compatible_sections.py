"""Compatible systems of sections for n = 5..10.

Run: python demos/compatible_sections.py
"""
from mdv import boundary

for n in range(5, 11):
    check = boundary.compatible_system_check(n)
    line = f"n = {n}: {len(boundary.all_index_sets(n))} sections, passed {check.passed}"
    if check.passed:
        seq = boundary.transform_sequence(n)
        line += f", removal events {len(seq.removal_events)}"
    else:
        line += f", counterexample {check.counterexample}"
    print(line)
