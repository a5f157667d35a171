"""Simplicial rational fans: validation, completeness, star subdivision,
lifting fans along rank-one lattice projections, multiplicities and
projectivity certificates.

Cones are sorted tuples of indices into the fan's ray list.  Only maximal
cones are stored; every subset of a maximal cone's rays spans a face.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from itertools import combinations
from math import prod
from pathlib import Path
from typing import Iterable, Sequence

from .exactmath import (
    Constraint,
    LpProblem,
    content,
    inverse,
    kernel_basis,
    lp_strict_feasible,
    matvec,
    primitive,
    rank,
    simplex,
    snf,
    solve,
)

Ray = tuple[int, ...]
Cone = tuple[int, ...]


class FanError(ValueError):
    pass


def _budget_from_env() -> int | None:
    raw = os.environ.get("MDV_BUDGET")
    return int(raw) if raw else None


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[Ray, ...]
    max_cones: tuple[Cone, ...]
    validated: bool = field(default=False, compare=False)

    @cached_property
    def ray_index(self) -> dict[Ray, int]:
        return {r: i for i, r in enumerate(self.rays)}

    def cone_rays(self, cone: Iterable[int]) -> list[Ray]:
        return [self.rays[i] for i in cone]

    @cached_property
    def full_dimensional(self) -> bool:
        return all(len(c) == self.rank for c in self.max_cones)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def ray_set(self) -> set[Ray]:
        return set(self.rays)

    def canonical(self) -> tuple:
        """Hashable description independent of ray order."""
        return (self.rank, frozenset(frozenset(self.rays[i] for i in c) for c in self.max_cones))


# ---------------------------------------------------------------------------
# construction and validation


def _dual_basis(rows: Sequence[Ray]):
    """Columns of the inverse: functional i is 1 on ray i and 0 on the others."""
    inv = inverse(rows)
    n = len(rows)
    return [[inv[r][i] for r in range(n)] for i in range(n)]


def _dot(m, v):
    return sum((a * b for a, b in zip(m, v)), Fraction(0))


def _separates(m, common, only_a, only_b) -> bool:
    return (all(_dot(m, u) == 0 for u in common)
            and all(_dot(m, u) > 0 for u in only_a)
            and all(_dot(m, u) < 0 for u in only_b))


_SWEEP = (Fraction(1), Fraction(1, 4), Fraction(4), Fraction(1, 16), Fraction(16))


def _candidate_functionals(rank_, a, b, sa, sb, duals):
    """Cheap guesses ``m_a - t m_b`` where ``m_a`` is 1 on the rays of ``a``
    not in ``b`` and 0 on the shared ones (and symmetrically for ``m_b``)."""
    da, db = duals
    zero = [Fraction(0)] * rank_
    ma = mb = None
    if da is not None:
        cols = [da[i] for i, u in enumerate(a) if u not in sb]
        ma = [sum(c) for c in zip(*cols)] if cols else zero
        yield ma
    if db is not None:
        cols = [db[i] for i, u in enumerate(b) if u not in sa]
        mb = [sum(c) for c in zip(*cols)] if cols else zero
        yield [-x for x in mb]
    if ma is not None and mb is not None:
        for t in _SWEEP:
            yield [x - t * y for x, y in zip(ma, mb)]


def proper_intersection(rank_: int, a: Sequence[Ray], b: Sequence[Ray], duals=None) -> bool:
    """Whether two simplicial cones meet exactly in the face spanned by their common rays.

    Equivalent to a linear functional vanishing on the common rays, positive
    on the rest of ``a`` and negative on the rest of ``b``.  Cheap candidate
    functionals built from dual bases are tried before falling back to an LP.
    """
    sa, sb = set(a), set(b)
    common = [u for u in a if u in sb]
    only_a = [u for u in a if u not in sb]
    only_b = [u for u in b if u not in sa]
    if duals is not None:
        for m in _candidate_functionals(rank_, a, b, sa, sb, duals):
            if _separates(m, common, only_a, only_b):
                return True
    cons = [Constraint(u, "==") for u in common]
    cons += [Constraint(u, ">") for u in only_a]
    cons += [Constraint(u, "<") for u in only_b]
    if not cons:
        return True
    return lp_strict_feasible(LpProblem(rank_, cons)).feasible


def make_fan(rank_: int, rays: Sequence[Sequence[int]], max_cones: Sequence[Iterable[int]],
             validate_budget: int | None = -1) -> Fan:
    """Build a simplicial fan, checking its invariants.

    ``validate_budget`` caps the number of cone pairs examined for the
    face-intersection property: ``-1`` reads ``MDV_BUDGET`` (unlimited when
    unset), ``None`` means unlimited, ``0`` skips the check.  The fan is
    marked validated only when every pair was checked.
    """
    rays_t = tuple(tuple(int(x) for x in r) for r in rays)
    for r in rays_t:
        if len(r) != rank_:
            raise FanError(f"ray {r} does not have length {rank_}")
        if content(r) != 1:
            raise FanError(f"ray {r} is not primitive")
    if len(set(rays_t)) != len(rays_t):
        raise FanError("duplicate rays")
    cones = []
    for c in max_cones:
        c = tuple(sorted(set(int(i) for i in c)))
        if any(i < 0 or i >= len(rays_t) for i in c):
            raise FanError(f"cone {c} refers to a missing ray")
        if rank([rays_t[i] for i in c], rank_) != len(c):
            raise FanError(f"cone {c} is not simplicial")
        cones.append(c)
    if len(set(cones)) != len(cones):
        raise FanError("duplicate maximal cones")
    cone_sets = [set(c) for c in cones]
    for i, ci in enumerate(cone_sets):
        for j, cj in enumerate(cone_sets):
            if i != j and ci < cj:
                raise FanError(f"cone {cones[i]} is not maximal")
    used = set().union(*cone_sets) if cone_sets else set()
    if used != set(range(len(rays_t))):
        raise FanError("some ray lies in no maximal cone")

    if validate_budget == -1:
        validate_budget = _budget_from_env()
    n_pairs = len(cones) * (len(cones) - 1) // 2
    validated = False
    if validate_budget is None or n_pairs <= validate_budget:
        _check_pairs(rank_, rays_t, cones)
        validated = True
    return Fan(rank_, rays_t, tuple(cones), validated)


def _check_pairs(rank_, rays, cones):
    duals = {}
    for c in cones:
        duals[c] = _dual_basis([rays[i] for i in c]) if len(c) == rank_ else None
    for ca, cb in combinations(cones, 2):
        a = [rays[i] for i in ca]
        b = [rays[i] for i in cb]
        if not proper_intersection(rank_, a, b, (duals[ca], duals[cb])):
            raise FanError(f"cones {ca} and {cb} do not meet along a common face")


def validate(f: Fan, budget: int | None = None) -> Fan:
    """Return ``f`` marked validated after a full pairwise check."""
    if f.validated:
        return f
    return make_fan(f.rank, f.rays, f.max_cones, budget)


def fan_from_json(data: dict, validate_budget: int | None = -1) -> Fan:
    try:
        return make_fan(int(data["rank"]), data["rays"], data["max_cones"], validate_budget)
    except (KeyError, TypeError) as exc:
        raise FanError(f"malformed fan data: {exc}") from exc


def load_fan(path: str | Path, validate_budget: int | None = -1) -> Fan:
    return fan_from_json(json.loads(Path(path).read_text()), validate_budget)


# ---------------------------------------------------------------------------
# completeness


def ridges(f: Fan) -> dict[Cone, list[tuple[Cone, int]]]:
    """Codimension-one faces of maximal cones, with (cone, opposite ray) pairs."""
    out: dict[Cone, list[tuple[Cone, int]]] = {}
    for c in f.max_cones:
        for i in c:
            tau = tuple(j for j in c if j != i)
            out.setdefault(tau, []).append((c, i))
    return out


def _ridge_normal(f: Fan, tau: Cone):
    basis = kernel_basis([f.rays[i] for i in tau], f.rank)
    if len(basis) != 1:
        raise FanError(f"face {tau} is not a ridge")
    return basis[0]


def is_complete(f: Fan, require_validated: bool = True) -> bool:
    """Ridge-pairing completeness test.

    True iff all maximal cones are full-dimensional, every ridge lies in
    exactly two of them (on opposite sides), and the adjacency graph through
    ridges is connected.
    """
    if require_validated and not f.validated:
        raise FanError("completeness needs a validated fan")
    if not f.max_cones or not f.full_dimensional:
        return False
    adj: dict[Cone, list[Cone]] = {c: [] for c in f.max_cones}
    for tau, owners in ridges(f).items():
        if len(owners) != 2:
            return False
        (c1, u), (c2, w) = owners
        normal = _ridge_normal(f, tau)
        su, sw = _dot(normal, f.rays[u]), _dot(normal, f.rays[w])
        if su == 0 or sw == 0 or (su > 0) == (sw > 0):
            return False
        adj[c1].append(c2)
        adj[c2].append(c1)
    seen = {f.max_cones[0]}
    stack = [f.max_cones[0]]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(f.max_cones)


def is_simplicial(f: Fan) -> bool:
    return all(rank(f.cone_rays(c), f.rank) == len(c) for c in f.max_cones)


# ---------------------------------------------------------------------------
# star subdivision


def containing_face(f: Fan, r: Sequence[int]) -> tuple[Cone, list[Cone]]:
    """The smallest face containing ``r`` in its relative interior, and the
    maximal cones containing ``r``."""
    r = tuple(r)
    face = None
    owners = []
    for c in f.max_cones:
        rows = f.cone_rays(c)
        if len(c) == f.rank:
            inv = inverse(rows)
            coeffs = [_dot(r, [inv[k][i] for k in range(f.rank)]) for i in range(len(c))]
        else:
            # r = sum lambda_i ray_i  <=>  rows^T lambda = r
            sol = solve([list(col) for col in zip(*rows)], r, len(c))
            if sol is None:
                continue
            coeffs = sol
        if any(x < 0 for x in coeffs):
            continue
        tau = tuple(i for i, x in zip(c, coeffs) if x > 0)
        if face is not None and tau != face:
            raise FanError(f"inconsistent minimal faces {face} and {tau} for {r}")
        face = tau
        owners.append(c)
    if face is None:
        raise FanError(f"ray {r} is outside the support of the fan")
    return face, owners


def star_subdivision(f: Fan, r: Sequence[int]) -> Fan:
    """Insert the primitive ray ``r`` and cone it over the visible facets."""
    r = tuple(int(x) for x in r)
    if len(r) != f.rank:
        raise FanError("ray has the wrong length")
    if content(r) != 1:
        raise FanError(f"ray {r} is not primitive")
    if r in f.ray_index:
        raise FanError(f"ray {r} is already a ray of the fan")
    tau, owners = containing_face(f, r)
    new_index = len(f.rays)
    owned = set(owners)
    cones = [c for c in f.max_cones if c not in owned]
    for c in owners:
        for u in tau:
            cones.append(tuple(sorted([i for i in c if i != u] + [new_index])))
    # subdividing a fan yields a fan, so the validation status carries over
    return Fan(f.rank, f.rays + (r,), tuple(cones), f.validated)


def reindex(f: Fan, rays: Sequence[Ray]) -> Fan:
    """Same fan with its rays listed in the order given."""
    rays = tuple(tuple(r) for r in rays)
    if set(rays) != set(f.rays) or len(rays) != len(f.rays):
        raise FanError("reindex needs a permutation of the ray list")
    pos = {r: i for i, r in enumerate(rays)}
    cones = sorted(tuple(sorted(pos[f.rays[i]] for i in c)) for c in f.max_cones)
    return Fan(f.rank, rays, tuple(cones), f.validated)


# ---------------------------------------------------------------------------
# lattice projections


@dataclass(frozen=True)
class LatticeProjection:
    """Surjection ``Z^r -> Z^(r-1)`` whose kernel is spanned by ``kernel_vector``."""

    matrix: tuple[tuple[int, ...], ...]
    kernel_vector: Ray

    def __post_init__(self):
        r = len(self.kernel_vector)
        if len(self.matrix) != r - 1 or any(len(row) != r for row in self.matrix):
            raise FanError("projection matrix must be (r-1) x r")
        if content(self.kernel_vector) != 1:
            raise FanError("kernel vector must be primitive")
        if any(matvec(self.matrix, self.kernel_vector)):
            raise FanError("kernel vector is not in the kernel")
        if r > 1 and snf(self.matrix).divisors != (1,) * (r - 1):
            raise FanError("projection is not surjective")

    @classmethod
    def from_kernel(cls, v0: Sequence[int]) -> "LatticeProjection":
        v0 = tuple(int(x) for x in v0)
        if content(v0) != 1:
            raise FanError(f"kernel vector {v0} is not primitive")
        dec = snf([[x] for x in v0])
        return cls(tuple(dec.U[1:]), v0)

    @property
    def source_rank(self) -> int:
        return len(self.kernel_vector)

    def apply(self, v: Sequence[int]) -> Ray:
        return tuple(matvec(self.matrix, v))

    @cached_property
    def section(self) -> tuple[tuple[int, ...], ...]:
        """Integer ``L`` with ``matrix @ L == identity``."""
        r = self.source_rank
        dec = snf(self.matrix, r)
        # U P V = [I 0]  =>  P (V[:, :r-1] U) = I
        Vl = [row[: r - 1] for row in dec.V]
        L = [[sum(Vl[i][k] * dec.U[k][j] for k in range(r - 1)) for j in range(r - 1)] for i in range(r)]
        return tuple(map(tuple, L))

    def fiber_coordinates(self, v: Sequence[int]) -> tuple[int, Ray, int]:
        """``(height, downstairs primitive ray, kernel coordinate)`` of ``v``.

        ``v == height * L(ray) + s * kernel_vector`` with ``height > 0``.
        """
        w = self.apply(v)
        h = content(w)
        if h == 0:
            raise FanError(f"{tuple(v)} lies in the kernel")
        down = tuple(x // h for x in w)
        lift = matvec(self.section, w)
        diff = [a - b for a, b in zip(v, lift)]
        s = None
        for d, k in zip(diff, self.kernel_vector):
            if k:
                s = d // k
                break
        if s is None or any(d != s * k for d, k in zip(diff, self.kernel_vector)):
            raise FanError("section computation is inconsistent")
        return h, down, s


def project_fan(proj: LatticeProjection, gamma: Sequence[Sequence[int]], downstairs: Fan,
                validate_budget: int | None = -1) -> Fan:
    """Lift a complete simplicial fan along a rank-one projection.

    The result has rays ``gamma`` plus ``+-v0`` (``v0`` the kernel vector),
    is complete and simplicial, and every cone maps onto a cone of
    ``downstairs``.  Construction: pick one ray of ``gamma`` over each
    downstairs ray, form ``J``, ``J+v0``, ``J-v0`` for every downstairs cone
    ``J``, then star-subdivide at the remaining rays fiber by fiber.  Inside a
    fiber, rays are ordered by the ratio of their kernel coordinate to their
    height, i.e. by angle from ``+v0`` to ``-v0``.
    """
    v0 = proj.kernel_vector
    r = proj.source_rank
    if downstairs.rank != r - 1:
        raise FanError("downstairs fan has the wrong rank")
    if not downstairs.validated or not is_complete(downstairs):
        raise FanError("downstairs fan must be validated and complete")
    gamma = [tuple(int(x) for x in g) for g in gamma]
    neg_v0 = tuple(-x for x in v0)
    if v0 in gamma or neg_v0 in gamma:
        raise FanError("kernel ray listed in gamma")
    if len(set(gamma)) != len(gamma):
        raise FanError("duplicate rays in gamma")

    fibers: dict[int, list[tuple[Fraction, Ray]]] = {}
    for g in gamma:
        if content(g) != 1:
            raise FanError(f"ray {g} is not primitive")
        h, down, s = proj.fiber_coordinates(g)
        idx = downstairs.ray_index.get(down)
        if idx is None:
            raise FanError(f"downstairs ray set mismatch: {down} is not a ray")
        fibers.setdefault(idx, []).append((Fraction(s, h), g))
    if set(fibers) != set(range(len(downstairs.rays))):
        raise FanError("downstairs ray set mismatch: some ray has an empty fiber")
    for idx in fibers:
        fibers[idx].sort(key=lambda t: t[0], reverse=True)
        ratios = [t[0] for t in fibers[idx]]
        if len(set(ratios)) != len(ratios):
            raise FanError("two rays of gamma span the same ray")

    # base case: one lift per downstairs ray
    base_rays = [fibers[i][0][1] for i in range(len(downstairs.rays))] + [v0, neg_v0]
    top, bottom = len(downstairs.rays), len(downstairs.rays) + 1
    base_cones = []
    for J in downstairs.max_cones:
        base_cones.append(tuple(J) + (top,))
        base_cones.append(tuple(J) + (bottom,))
    fan = Fan(r, tuple(base_rays), tuple(tuple(sorted(c)) for c in base_cones), True)

    # inductive step: star subdivisions, fiber by fiber
    for idx in range(len(downstairs.rays)):
        chain = [v0, fibers[idx][0][1], neg_v0]
        for _, ray in fibers[idx][1:]:
            # ``ray`` sits strictly between the last inserted ray and -v0
            expected = tuple(sorted((fan.ray_index[chain[-2]], fan.ray_index[chain[-1]])))
            face, _ = containing_face(fan, ray)
            if face != expected:
                raise FanError(f"ray {ray} is not interior to the expected fiber angle")
            fan = star_subdivision(fan, ray)
            chain.insert(len(chain) - 1, ray)

    fan = reindex(fan, gamma + [v0, neg_v0])
    if validate_budget != 0:
        fan = make_fan(fan.rank, fan.rays, fan.max_cones, validate_budget)
    _check_lift(proj, fan, downstairs)
    return fan


def lift_cone_count(proj: LatticeProjection, gamma: Sequence[Sequence[int]], downstairs: Fan) -> int:
    """Number of maximal cones :func:`project_fan` will produce, without building it.

    The base lift doubles every downstairs cone; each further ray in the fiber
    over downstairs ray ``i`` splits one cone per downstairs cone containing ``i``.
    """
    fiber_sizes = [0] * len(downstairs.rays)
    for g in gamma:
        _, down, _ = proj.fiber_coordinates(tuple(int(x) for x in g))
        idx = downstairs.ray_index.get(down)
        if idx is None:
            raise FanError(f"downstairs ray set mismatch: {down} is not a ray")
        fiber_sizes[idx] += 1
    degree = [0] * len(downstairs.rays)
    for c in downstairs.max_cones:
        for i in c:
            degree[i] += 1
    return 2 * len(downstairs.max_cones) + sum(max(0, k - 1) * d for k, d in zip(fiber_sizes, degree))


def maps_onto_cones(proj: LatticeProjection, upstairs: Fan, downstairs: Fan) -> bool:
    """Every maximal cone of ``upstairs`` maps onto a cone of ``downstairs``."""
    max_sets = [set(c) for c in downstairs.max_cones]
    for c in upstairs.max_cones:
        image = set()
        for i in c:
            w = proj.apply(upstairs.rays[i])
            if not any(w):
                continue
            idx = downstairs.ray_index.get(primitive(w))
            if idx is None:
                return False
            image.add(idx)
        if not any(image <= s for s in max_sets):
            return False
    return True


def _check_lift(proj: LatticeProjection, fan: Fan, downstairs: Fan) -> None:
    if not is_simplicial(fan):
        raise FanError("lifted fan is not simplicial")
    if not is_complete(fan, require_validated=False):
        raise FanError("lifted fan is not complete")
    if not maps_onto_cones(proj, fan, downstairs):
        raise FanError("a lifted cone does not map onto a downstairs cone")


# ---------------------------------------------------------------------------
# multiplicities and intersection numbers


def cone_multiplicity(f: Fan, c: Iterable[int]) -> int:
    """Index of the lattice generated by the cone's rays in its saturation."""
    rows = f.cone_rays(c)
    if not rows:
        return 1
    dec = snf(rows, f.rank)
    if dec.rank != len(rows):
        raise FanError("cone is not simplicial")
    return prod(dec.divisors)


def toric_intersection_D0(f: Fan, tau: Iterable[int], r0_index: int) -> Fraction:
    """``D_0 . V(tau) = mult(tau) / mult(sigma)`` with ``sigma = tau + R_0``."""
    tau = tuple(sorted(tau))
    if len(tau) != f.rank - 1:
        raise FanError("tau must be a ridge")
    sigma = tuple(sorted(tau + (r0_index,)))
    if sigma not in set(f.max_cones):
        raise FanError(f"cone {sigma} is not a maximal cone of the fan")
    return Fraction(cone_multiplicity(f, tau), cone_multiplicity(f, sigma))


# ---------------------------------------------------------------------------
# projectivity


@dataclass(frozen=True)
class SupportFunction:
    """Strictly convex piecewise-linear function on a complete simplicial fan.

    ``values[i]`` is the value on ray ``i``; ``functionals[c]`` is the linear
    function agreeing with it on maximal cone ``c``.
    """

    fan: Fan
    values: tuple[Fraction, ...]
    functionals: dict = field(compare=False)

    def verify(self) -> bool:
        f = self.fan
        for c, m in self.functionals.items():
            if any(_dot(m, f.rays[i]) != self.values[i] for i in c):
                return False
        for tau, owners in ridges(f).items():
            (c1, u), (c2, w) = owners
            m1, m2 = self.functionals[c1], self.functionals[c2]
            if any(_dot(m1, f.rays[i]) != _dot(m2, f.rays[i]) for i in tau):
                return False
            if not (_dot(m1, f.rays[w]) < self.values[w] and _dot(m2, f.rays[u]) < self.values[u]):
                return False
        return True


def wall_relation(f: Fan, tau: Cone, u: int, w: int) -> dict[int, Fraction]:
    """Linear relation among the rays of two adjacent cones, positive on ``u`` and ``w``."""
    idx = list(tau) + [u, w]
    rows = [f.rays[i] for i in idx]
    cols = [list(col) for col in zip(*rows)]
    basis = kernel_basis(cols, len(idx))
    if len(basis) != 1:
        raise FanError("adjacent cones are degenerate")
    rel = basis[0]
    if rel[-1] < 0:
        rel = [-x for x in rel]
    if rel[-1] <= 0 or rel[-2] <= 0:
        raise FanError(f"cones across ridge {tau} are on the same side")
    return dict(zip(idx, rel))


def certify_projective(f: Fan) -> SupportFunction | None:
    """Strictly convex support function, or None when none exists.

    Subtracting the linear function of one cone makes any strictly convex
    support function nonnegative, and the wall inequalities are homogeneous,
    so the search runs over ``values >= 0`` with every wall relation ``>= 1``.
    That system is only a phase-one simplex.  When it is infeasible the
    general strict LP is solved as well, so a None answer always comes with an
    exactly checked refutation.
    """
    if not is_complete(f):
        raise FanError("projectivity certificates need a complete fan")
    n = len(f.rays)
    relations = []
    for tau, ((_, u), (_, w)) in sorted(ridges(f).items()):
        coeffs = [Fraction(0)] * n
        for i, x in wall_relation(f, tau, u, w).items():
            coeffs[i] = x
        relations.append(coeffs)
    m = len(relations)
    A = [row + [Fraction(-int(k == j)) for j in range(m)] for k, row in enumerate(relations)]
    status, x, _ = simplex(A, [Fraction(1)] * m, [0] * (n + m)) if A else ("optimal", [Fraction(0)] * n, 0)
    if status == "optimal":
        values = x[:n]
    else:
        res = lp_strict_feasible(LpProblem(n, [Constraint(tuple(c), ">") for c in relations]))
        if not res.feasible:
            return None
        values = res.certificate
    functionals = {}
    for c in f.max_cones:
        functionals[c] = tuple(solve(f.cone_rays(c), [values[i] for i in c], f.rank))
    cert = SupportFunction(f, tuple(values), functionals)
    if not cert.verify():
        raise FanError("support function failed exact re-verification")
    return cert


# ---------------------------------------------------------------------------
# two-dimensional fans and standard examples


def _angle_cmp(a: Ray, b: Ray) -> int:
    def half(v):
        return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def complete_fan_2d(rays: Iterable[Sequence[int]]) -> Fan:
    """The complete fan in the plane whose cones join angularly consecutive rays."""
    rays = sorted({tuple(r) for r in rays}, key=cmp_to_key(_angle_cmp))
    k = len(rays)
    if k < 3:
        raise FanError("a complete plane fan needs at least three rays")
    for i in range(k):
        a, b = rays[i], rays[(i + 1) % k]
        if a[0] * b[1] - a[1] * b[0] <= 0:
            raise FanError("rays do not positively span the plane")
    return make_fan(2, rays, [(i, (i + 1) % k) for i in range(k)])


def complete_fan_1d(rays: Iterable[Sequence[int]]) -> Fan:
    rays = sorted({tuple(r) for r in rays}, reverse=True)
    if rays != [(1,), (-1,)]:
        raise FanError("a complete line fan has rays 1 and -1")
    return make_fan(1, rays, [(0,), (1,)])


def p2_fan() -> Fan:
    return make_fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])


def p1_fan() -> Fan:
    return make_fan(1, [(1,), (-1,)], [(0,), (1,)])


def p1xp1_fan() -> Fan:
    return make_fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def hirzebruch_fan(k: int) -> Fan:
    return make_fan(2, [(1, 0), (0, 1), (-1, k), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def octant_fan(rank_: int = 3) -> Fan:
    rays = [tuple(int(i == j) for j in range(rank_)) for i in range(rank_)]
    return make_fan(rank_, rays, [tuple(range(rank_))])


def nonprojective_fan() -> Fan:
    """Complete simplicial rank-3 fan with no strictly convex support function.

    Rays at height one over an outer triangle ``A, B, C`` and the inner
    triangle ``a = A/4`` etc., plus a downward ray.  The cone over ``ABC`` is
    cut by the twisted (non-regular) triangulation ``abc, ABb, Aba, BCc,
    Bcb, CAa, Cac``; the three side cones join the outer edges to the
    downward ray.
    """
    A, B, C = (8, -4, 1), (-4, 8, 1), (-4, -4, 1)
    a, b, c = (2, -1, 1), (-1, 2, 1), (-1, -1, 1)
    down = (0, 0, -1)
    rays = [A, B, C, a, b, c, down]
    iA, iB, iC, ia, ib, ic, iD = range(7)
    cones = [
        (ia, ib, ic),
        (iA, iB, ib), (iA, ib, ia),
        (iB, iC, ic), (iB, ic, ib),
        (iC, iA, ia), (iC, ia, ic),
        (iA, iB, iD), (iB, iC, iD), (iC, iA, iD),
    ]
    return make_fan(3, rays, cones)


STANDARD_FANS = {
    "p2": p2_fan,
    "p1xp1": p1xp1_fan,
    "hirzebruch2": lambda: hirzebruch_fan(2),
    "octant": octant_fan,
    "nonprojective": nonprojective_fan,
}
