import json
import random
from fractions import Fraction

import pytest
import sympy

from mdv import fan as F
from mdv.exactmath import Constraint, LpProblem, lp_strict_feasible, matmul
from mdv.fan import FanError, LatticeProjection


def generic_point_owners(f, point):
    """Maximal cones whose interior contains ``point`` (sympy solve as oracle)."""
    owners = []
    for c in f.max_cones:
        M = sympy.Matrix([list(f.rays[i]) for i in c]).T
        coeffs = M.LUsolve(sympy.Matrix(point))
        if all(v > 0 for v in coeffs):
            owners.append(c)
    return owners


def assert_covers_generic_points(f, samples=60, seed=0):
    rng = random.Random(seed)
    for _ in range(samples):
        p = [rng.randint(-97, 97) * 7919 + rng.randint(1, 13) for _ in range(f.rank)]
        assert len(generic_point_owners(f, p)) == 1, p


# construction


def test_p2_fan_is_valid_and_complete():
    f = F.make_fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    assert f.validated
    assert F.is_complete(f)


def test_orthant_is_valid_not_complete():
    f = F.make_fan(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(0, 1, 2)])
    assert f.validated and not F.is_complete(f)


@pytest.mark.parametrize("rays,cones", [
    ([(1, 0), (2, 0)], [(0, 1)]),
    ([(1, 0), (1, 0)], [(0,), (1,)]),
    ([(1, 0), (0, 1), (1, 1)], [(0, 1, 2)]),
])
def test_bad_fans_rejected(rays, cones):
    with pytest.raises(FanError):
        F.make_fan(2, rays, cones)


def test_overlapping_cones_rejected():
    with pytest.raises(FanError):
        F.make_fan(2, [(1, 0), (0, 1), (1, 2)], [(0, 1), (0, 2)])


def test_budget_zero_skips_validation():
    f = F.make_fan(2, [(1, 0), (0, 1), (1, 2)], [(0, 1), (0, 2)], validate_budget=0)
    assert not f.validated
    with pytest.raises(FanError):
        F.is_complete(f)


def test_json_round_trip(tmp_path):
    f = F.hirzebruch_fan(3)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_json()))
    g = F.load_fan(path)
    assert g.to_json() == f.to_json()
    assert g.validated


# completeness


COMPLETE_FANS = sorted(name for name in F.STANDARD_FANS if name != "octant")


@pytest.mark.parametrize("name", COMPLETE_FANS)
def test_standard_fans_complete(name):
    f = F.STANDARD_FANS[name]()
    assert F.is_complete(f)
    assert F.is_simplicial(f)
    assert_covers_generic_points(f, 30)


def test_nonprojective_fan_complete_by_oracle():
    f = F.nonprojective_fan()
    assert F.is_complete(f)
    assert_covers_generic_points(f, 80, seed=5)


# star subdivision


def test_star_subdivision_examples():
    p2 = F.p2_fan()
    g = F.star_subdivision(p2, (1, 1))
    assert len(g.max_cones) == 4 and F.is_complete(g)
    positive = F.octant_fan(3)
    sub = F.star_subdivision(positive, (1, 1, 1))
    assert len(sub.max_cones) == 3
    with pytest.raises(FanError, match="already"):
        F.star_subdivision(p2, (1, 0))
    with pytest.raises(FanError, match="outside"):
        F.star_subdivision(positive, (-1, 0, 0))
    with pytest.raises(FanError, match="primitive"):
        F.star_subdivision(p2, (2, 2))


@pytest.mark.parametrize("seed", range(6))
def test_random_star_subdivisions_stay_complete(seed):
    rng = random.Random(seed)
    f = F.p2_fan() if seed % 2 == 0 else F.nonprojective_fan()
    for _ in range(5):
        while True:
            r = tuple(rng.randint(-3, 3) for _ in range(f.rank))
            if any(r) and F.content(r) == 1 and r not in f.ray_index:
                break
        f = F.star_subdivision(f, r)
        revalidated = F.make_fan(f.rank, f.rays, f.max_cones)
        assert revalidated.validated
        assert F.is_complete(revalidated)
        assert F.is_simplicial(revalidated)
    assert_covers_generic_points(f, 25, seed)


# projection


def _proj_y():
    return LatticeProjection(((1, 0),), (0, 1))


def test_project_fan_base_case():
    f = F.project_fan(_proj_y(), [(1, 0), (-1, 1)], F.p1_fan())
    assert set(f.rays) == {(1, 0), (-1, 1), (0, 1), (0, -1)}
    assert len(f.max_cones) == 4 and F.is_complete(f)


def test_project_fan_with_star_subdivision():
    f = F.project_fan(_proj_y(), [(1, 0), (1, 1), (-1, 1)], F.p1_fan())
    assert len(f.max_cones) == 5 and F.is_complete(f)
    assert F.maps_onto_cones(_proj_y(), f, F.p1_fan())


def test_project_fan_rejects_kernel_ray_and_mismatch():
    with pytest.raises(FanError, match="kernel ray"):
        F.project_fan(_proj_y(), [(1, 0), (-1, 1), (0, 1)], F.p1_fan())
    with pytest.raises(FanError, match="mismatch"):
        F.project_fan(_proj_y(), [(1, 0), (1, 1)], F.p1_fan())


@pytest.mark.parametrize("seed", range(5))
def test_project_fan_postconditions_random(seed):
    rng = random.Random(100 + seed)
    v0 = (0, 0, 1)
    proj = LatticeProjection.from_kernel(v0)
    down = F.p2_fan()
    gamma = set()
    for d in down.rays:
        lift = F.matvec(proj.section, d)
        for s in rng.sample(range(-4, 5), rng.randint(1, 3)):
            gamma.add(tuple(a + s * k for a, k in zip(lift, v0)))
    # add a few non-primitive-height rays over the downstairs rays
    for d in down.rays:
        lift = F.matvec(proj.section, [2 * x for x in d])
        cand = tuple(a + (2 * rng.randint(0, 3) + 1) * k for a, k in zip(lift, v0))
        if F.content(cand) == 1:
            gamma.add(cand)
    gamma = sorted(gamma)
    f = F.project_fan(proj, gamma, down)
    assert set(f.rays) == set(gamma) | {v0, (0, 0, -1)}
    assert F.is_complete(f)
    assert F.maps_onto_cones(proj, f, down)
    assert F.lift_cone_count(proj, gamma, down) == len(f.max_cones)
    assert_covers_generic_points(f, 20, seed)


def test_lattice_projection_invariants():
    proj = LatticeProjection.from_kernel((1, 1, 0))
    assert proj.apply((1, 1, 0)) == (0, 0)
    L = proj.section
    assert [list(r) for r in matmul(proj.matrix, L)] == [[1, 0], [0, 1]]
    with pytest.raises(FanError):
        LatticeProjection(((2, 0),), (0, 1))
    with pytest.raises(FanError):
        LatticeProjection.from_kernel((2, 2))


# multiplicities


def test_cone_multiplicity_examples():
    f = F.make_fan(2, [(1, 0), (0, 1)], [(0, 1)])
    assert F.cone_multiplicity(f, (0, 1)) == 1
    g = F.make_fan(2, [(1, 1), (1, -1)], [(0, 1)])
    assert F.cone_multiplicity(g, (0, 1)) == 2
    h = F.make_fan(2, [(2, 1)], [(0,)])
    assert F.cone_multiplicity(h, (0,)) == 1


def test_multiplicity_multiplicative_with_orthogonal_basis_ray():
    rng = random.Random(3)
    for _ in range(40):
        a = (rng.randint(-5, 5), rng.randint(-5, 5), 0)
        b = (rng.randint(-5, 5), rng.randint(-5, 5), 0)
        if a[0] * b[1] - a[1] * b[0] == 0 or F.content(a) != 1 or F.content(b) != 1:
            continue
        f = F.make_fan(3, [a, b, (0, 0, 1)], [(0, 1, 2)])
        assert F.cone_multiplicity(f, (0, 1, 2)) == F.cone_multiplicity(f, (0, 1))
        assert F.cone_multiplicity(f, (0, 1)) == abs(a[0] * b[1] - a[1] * b[0])


def test_toric_intersection_examples():
    f = F.p1xp1_fan()
    e1 = f.ray_index[(1, 0)]
    e2 = f.ray_index[(0, 1)]
    assert F.toric_intersection_D0(f, (e1,), e2) == 1
    g = F.make_fan(3, [(1, 1, 0), (1, -1, 0), (0, 0, 1)], [(0, 1, 2)])
    assert F.toric_intersection_D0(g, (0, 1), 2) == Fraction(1)
    with pytest.raises(FanError):
        F.toric_intersection_D0(F.make_fan(3, [(1, 1, 0), (1, -1, 0), (0, 0, 1)], [(0, 1), (2,)]), (0, 1), 2)


# projectivity


@pytest.mark.parametrize("maker", [F.p2_fan, F.p1xp1_fan, lambda: F.hirzebruch_fan(1),
                                   lambda: F.hirzebruch_fan(2), lambda: F.hirzebruch_fan(5)])
def test_projective_fans_certified(maker):
    f = maker()
    cert = F.certify_projective(f)
    assert cert is not None
    assert cert.verify()


def test_certificate_survives_independent_recheck():
    f = F.hirzebruch_fan(2)
    cert = F.certify_projective(f)
    # on every maximal cone the functional reproduces the values at its rays
    for c, m in cert.functionals.items():
        for i in c:
            assert sum(a * b for a, b in zip(m, f.rays[i])) == cert.values[i]
    # strict convexity: each functional is strictly below the values off its cone
    for c, m in cert.functionals.items():
        for i, r in enumerate(f.rays):
            if i not in c:
                assert sum(a * b for a, b in zip(m, r)) < cert.values[i]


def test_nonprojective_fan_has_no_certificate():
    assert F.certify_projective(F.nonprojective_fan()) is None


def test_nonprojective_fan_wall_system_is_refuted_exactly():
    f = F.nonprojective_fan()
    n = len(f.rays)
    cons = []
    for tau, pairs in F.ridges(f).items():
        if len(pairs) == 2:
            (_, u), (_, w) = pairs
            rel = F.wall_relation(f, tau, u, w)
            cons.append(Constraint(tuple(rel.get(i, 0) for i in range(n)), ">"))
    r = lp_strict_feasible(LpProblem(n, cons))
    assert not r.feasible


def test_certify_rejects_incomplete_fan():
    with pytest.raises(FanError):
        F.certify_projective(F.octant_fan(3))


def test_complete_fan_2d_sorts_by_angle():
    rays = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 2)]
    f = F.complete_fan_2d(rays)
    assert F.is_complete(f)
    assert len(f.max_cones) == len(rays)
    for c in f.max_cones:
        a, b = (f.rays[i] for i in c)
        assert a[0] * b[1] - a[1] * b[0] != 0
