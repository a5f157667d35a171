from itertools import combinations
from math import gcd
import time

import pytest
import sympy

from mdv import fan as F
from mdv import lmchain as L
from mdv.lmchain import ChainError, LmError, QuotientError


def brute_force_rays(n):
    r = n - 3
    basis = [tuple(int(k == i) for k in range(r)) for i in range(r)] + [(-1,) * r]
    out = set()
    for size in range(1, n - 2):
        for subset in combinations(range(n - 2), size):
            v = [sum(basis[i][k] for i in subset) for k in range(r)]
            g = 0
            for x in v:
                g = gcd(g, x)
            out.add(tuple(x // g for x in v))
    return out


# rays


def test_lm_rays_examples():
    assert set(L.lm_rays(5).rays) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}
    assert len(L.lm_rays(6)) == 14
    with pytest.raises(LmError):
        L.lm_rays(4)


@pytest.mark.parametrize("n", range(5, 13))
def test_lm_rays_count_and_symmetry(n):
    rays = L.lm_rays(n).rays
    assert len(rays) == 2 ** (n - 2) - 2
    assert set(rays) == brute_force_rays(n)
    assert all(tuple(-x for x in v) in set(rays) for v in rays)


# partitions and quotients


def test_partition_validation():
    with pytest.raises(LmError, match="disjoint"):
        L.LmPartition(11, frozenset({1, 2, 3}), frozenset({3, 4, 5}), frozenset({6, 7, 8, 9}), 1, 4, 6)
    with pytest.raises(LmError):
        L.partition_from_sizes((2, 3, 4))
    with pytest.raises(LmError):
        L.partition_from_sizes((3, 3))


def test_partition_from_sizes():
    p = L.partition_from_sizes((3, 3, 3))
    assert p.n == 11 and p.weights == (1, 1, 1) and p.marks == (1, 4, 7)
    assert len(p.kernel_generators()) == p.n - 5


def _gcd_of_maximal_minors(M):
    A = sympy.Matrix(M)
    k = A.rows
    g = 0
    for cols in combinations(range(A.cols), k):
        g = gcd(g, int(A[:, list(cols)].det()))
        if g == 1:
            return 1
    return g


@pytest.mark.parametrize("sizes,weights", [((3, 3, 3), (1, 1, 1)), ((3, 4, 6), (1, 2, 4)), ((3, 4, 5), (1, 2, 3))])
def test_quotient_small_cases(sizes, weights):
    part = L.partition_from_sizes(sizes)
    q = L.quotient_data(part)
    assert q.weights == weights
    assert q.properties["rank_two_quotient"] and q.properties["images_generate"]
    assert q.properties["weighted_relation"]
    # saturation oracle: the generator matrix has maximal minors with gcd 1
    assert _gcd_of_maximal_minors(part.kernel_generators()) == 1
    # the projection kills exactly the generated sublattice
    for g in part.kernel_generators():
        assert q.project(g) == (0, 0)
    assert sympy.Matrix(q.projection).rank() == 2
    a, b, c = weights
    v1, v2, v3 = q.images
    assert tuple(a * s + b * t + c * u for s, t, u in zip(v1, v2, v3)) == (0, 0)


def test_quotient_p2_case_gives_projective_plane():
    q = L.quotient_data(L.partition_from_sizes((3, 3, 3)))
    f = L.weighted_plane_fan(q)
    assert len(f.rays) == 3 and F.is_complete(f)
    assert F.certify_projective(f) is not None


def test_quotient_non_coprime_weights_reported():
    q = L.quotient_data(L.partition_from_sizes((3, 4, 6)))
    assert not q.properties["weights_coprime"]
    assert not q.properties["images_primitive"]
    assert q.properties["images_independent"]


def test_quotient_large_case():
    q = L.quotient_data(L.partition_from_sizes((27, 74, 31)))
    assert q.partition.n == 134
    assert q.weights == (25, 72, 29)
    assert q.properties["images_primitive"] and q.properties["images_independent"]
    f = L.weighted_plane_fan(q)
    assert F.is_complete(f)


def test_quotient_error_carries_property_name():
    err = QuotientError("images_generate", "boom")
    assert err.prop == "images_generate" and "boom" in str(err)


# chains


def test_chain_n6():
    report = L.build_chain(6)
    assert report.ok
    assert len(report.steps) == 1
    step = report.steps[0]
    assert step.rank == 3 and step.rays == 14
    assert step.complete and step.simplicial and step.cone_onto_cone and step.projective
    assert report.top_rays_match


def test_chain_n7():
    report = L.build_chain(7)
    assert report.ok
    ranks = sorted(s.rank for s in report.steps)
    assert ranks == [3, 4]
    for s in report.steps:
        assert s.complete and s.simplicial and s.cone_onto_cone and s.validated
        assert s.projective is True
    top = report.fans[-1]
    assert set(top.rays) == set(L.lm_rays(7).rays)
    # independent completeness oracle on the top fan
    assert F.is_complete(F.make_fan(top.rank, top.rays, top.max_cones))


def test_chain_intermediate_fans_complete():
    report = L.build_chain(7)
    for f in report.fans:
        assert F.is_complete(f, require_validated=False)


def test_chain_with_explicit_kernels():
    report = L.build_chain(6, [(1, 0, 1)])
    assert report.ok


def test_chain_rejects_bad_kernels():
    with pytest.raises(ChainError) as exc:
        L.build_chain(6, [])
    assert exc.value.step == 0
    with pytest.raises(ChainError) as exc:
        L.build_chain(6, [(1, 2, 0)])
    assert exc.value.step == 1
    with pytest.raises(ChainError):
        L.build_chain(7, [(1, 1, 0, 0), (1, 1, 0, 0)])
    with pytest.raises(ChainError):
        L.build_chain(6, [(1, 1)])


def test_chain_budget_truncates():
    report = L.build_chain(7, budget=50)
    assert report.truncated and not report.ok



def test_budget_is_checked_before_building():
    # the rank-four lift at n = 11 is expensive; the predicted count stops it early
    start = time.perf_counter()
    report = L.build_chain(11, budget=200)
    assert report.truncated and [s.rank for s in report.steps] == [3]
    assert time.perf_counter() - start < 20


def test_lp_budget_zero_skips_rank_four_certificate():
    report = L.build_chain(7, lp_budget=0)
    assert {s.rank: s.projective for s in report.steps} == {3: True, 4: None}
