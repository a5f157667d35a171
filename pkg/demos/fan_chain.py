"""Quotient to a weighted projective plane, then a chain of lifted fans.

Run: python demos/fan_chain.py
"""
from mdv import lmchain

for sizes in [(3, 3, 3), (3, 4, 6), (27, 74, 31)]:
    q = lmchain.quotient_data(lmchain.partition_from_sizes(sizes))
    print(f"n = {q.partition.n}: weights {q.weights}, images {q.images}")

for n in (6, 7):
    report = lmchain.build_chain(n)
    print(f"n = {n}: bottom {report.base}")
    for s in report.steps:
        print(f"  rank {s.rank}: {s.rays} rays, {s.cones} cones, complete {s.complete}, "
              f"projective {s.projective}")
    print("  top rays match:", report.top_rays_match)
