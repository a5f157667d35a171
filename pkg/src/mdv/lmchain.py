"""Losev-Manin rays, the rank-two quotient onto a weighted projective plane,
and chains of fans built by lifting along rank-one projections.

Lattice ``N = Z^(n-3)`` with basis ``e_1..e_(n-3)`` and
``e_(n-2) = -(e_1 + ... + e_(n-3))``.  Quotient lattices are always written
in standard coordinates through a Smith-normal-form change of basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from .exactmath import content, matmul, matvec, primitive, snf
from .fan import (
    Fan,
    FanError,
    LatticeProjection,
    certify_projective,
    complete_fan_1d,
    complete_fan_2d,
    is_complete,
    is_simplicial,
    lift_cone_count,
    maps_onto_cones,
    project_fan,
    toric_intersection_D0,
)


# projectivity LPs above rank three are attempted up to this many maximal cones
DEFAULT_LP_BUDGET = 200


class LmError(ValueError):
    pass


class QuotientError(LmError):
    def __init__(self, prop: str, message: str):
        super().__init__(f"{prop} failed: {message}")
        self.prop = prop


class ChainError(LmError):
    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


def basis_vector(n: int, i: int) -> tuple[int, ...]:
    """``e_i`` for ``1 <= i <= n-2`` in coordinates of ``Z^(n-3)``."""
    r = n - 3
    if not 1 <= i <= n - 2:
        raise LmError(f"index {i} outside 1..{n - 2}")
    if i == n - 2:
        return (-1,) * r
    return tuple(int(k == i - 1) for k in range(r))


def subset_vector(n: int, subset) -> tuple[int, ...]:
    out = [0] * (n - 3)
    for i in subset:
        for k, x in enumerate(basis_vector(n, i)):
            out[k] += x
    return tuple(out)


@dataclass(frozen=True)
class LmRaySet:
    n: int
    rays: tuple[tuple[int, ...], ...]
    subsets: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.rays)


def lm_rays(n: int) -> LmRaySet:
    """Primitive vectors ``sum_{i in I} e_i`` for ``1 <= |I| <= n-3``, ordered by ``(|I|, I)``."""
    if n < 5:
        raise LmError("n must be at least 5")
    rays, subsets, seen = [], [], set()
    for size in range(1, n - 2):
        for subset in combinations(range(1, n - 1), size):
            v = primitive(subset_vector(n, subset))
            if v not in seen:
                seen.add(v)
                rays.append(v)
                subsets.append(subset)
    return LmRaySet(n, tuple(rays), tuple(subsets))


# ---------------------------------------------------------------------------
# the rank-two quotient


@dataclass(frozen=True)
class LmPartition:
    n: int
    S1: frozenset
    S2: frozenset
    S3: frozenset
    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        parts = (self.S1, self.S2, self.S3)
        if self.S1 & self.S2 or self.S1 & self.S3 or self.S2 & self.S3:
            raise LmError("parts are not disjoint")
        if set().union(*parts) != set(range(1, self.n - 1)):
            raise LmError(f"parts do not cover 1..{self.n - 2}")
        if any(len(s) < 3 for s in parts):
            raise LmError("every part needs at least 3 elements")
        for mark, s in zip(self.marks, parts):
            if mark not in s:
                raise LmError(f"mark {mark} is not in its part")
        if sum(self.weights) + 8 != self.n:
            raise LmError("part sizes do not add up to n - 2")

    @property
    def parts(self):
        return (self.S1, self.S2, self.S3)

    @property
    def marks(self):
        return (self.n1, self.n2, self.n3)

    @property
    def weights(self) -> tuple[int, int, int]:
        return tuple(len(s) - 2 for s in self.parts)

    @property
    def weights_coprime(self) -> bool:
        a, b, c = self.weights
        return gcd(a, b) == 1 and gcd(b, c) == 1 and gcd(a, c) == 1

    def kernel_generators(self) -> list[tuple[int, ...]]:
        """``e_(n_i) + e_r`` for ``r`` in ``S_i`` other than ``n_i``."""
        out = []
        for s, mark in zip(self.parts, self.marks):
            for r in sorted(s - {mark}):
                out.append(tuple(x + y for x, y in zip(basis_vector(self.n, mark), basis_vector(self.n, r))))
        return out


def partition_from_sizes(sizes) -> LmPartition:
    """Consecutive blocks of the given sizes; each mark is the block's first element."""
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != 3:
        raise LmError("need three part sizes")
    n = sum(sizes) + 2
    start = 1
    parts, marks = [], []
    for s in sizes:
        parts.append(frozenset(range(start, start + s)))
        marks.append(start)
        start += s
    return LmPartition(n, *parts, *marks)


@dataclass(frozen=True)
class QuotientData:
    partition: LmPartition
    generators: tuple[tuple[int, ...], ...]
    divisors: tuple[int, ...]
    projection: tuple[tuple[int, ...], ...]
    images: tuple[tuple[int, int], ...]
    weights: tuple[int, int, int]
    properties: dict = field(compare=False)

    def project(self, v):
        return tuple(matvec(self.projection, v))

    def to_json(self):
        return {
            "n": self.partition.n,
            "weights": list(self.weights),
            "marks": list(self.partition.marks),
            "generator_count": len(self.generators),
            "snf_divisors_all_one": all(d == 1 for d in self.divisors),
            "sublattice_rank": len(self.divisors),
            "images": [list(v) for v in self.images],
            "properties": dict(self.properties),
        }


def quotient_data(part: LmPartition) -> QuotientData:
    """Build the sublattice, its quotient map to ``Z^2``, and check its three properties.

    ``rank_two_quotient``: the sublattice is saturated of corank two.
    ``images_generate``: the marked basis vectors map onto generators of ``Z^2``.
    ``weighted_relation``: their images satisfy ``a v1 + b v2 + c v3 = 0``.
    """
    n = part.n
    gens = part.kernel_generators()
    dec = snf(gens, n - 3)
    divisors = dec.divisors
    # the quotient is a lattice of rank two
    if len(divisors) != n - 5 or any(d != 1 for d in divisors):
        raise QuotientError("rank_two_quotient", f"quotient has torsion or wrong rank (divisors {divisors[-3:]}, rank {len(divisors)})")
    # rows of G V are d_i e_i, so the last two coordinates of x V are the quotient
    proj = tuple(tuple(dec.V[i][j] for i in range(n - 3)) for j in range(n - 5, n - 3))
    images = tuple(tuple(matvec(proj, basis_vector(n, mark))) for mark in part.marks)
    if any(matvec(proj, g) != [0, 0] for g in gens):
        raise QuotientError("rank_two_quotient", "generators do not map to zero")
    # the images of the marked basis vectors generate Z^2
    img_dec = snf([list(v) for v in images], 2)
    if img_dec.divisors != (1, 1):
        raise QuotientError("images_generate", f"images generate a subgroup with divisors {img_dec.divisors}")
    # a v1 + b v2 + c v3 = 0
    a, b, c = part.weights
    combo = tuple(a * p + b * q + c * r for p, q, r in zip(*images))
    if combo != (0, 0):
        raise QuotientError("weighted_relation", f"a v1 + b v2 + c v3 = {combo}")
    # the images span the fan of P(a,b,c) when they are primitive and
    # pairwise independent; this is forced for pairwise coprime weights
    primitive_ok = all(content(v) == 1 for v in images)
    independent = all(u[0] * v[1] - u[1] * v[0] != 0 for u, v in combinations(images, 2))
    if part.weights_coprime and not (primitive_ok and independent):
        raise QuotientError("weighted_relation", f"images {images} do not span a weighted projective plane fan")
    props = {"rank_two_quotient": True, "images_generate": True, "weighted_relation": True, "images_primitive": primitive_ok,
             "images_independent": independent, "weights_coprime": part.weights_coprime}
    return QuotientData(part, tuple(gens), divisors, proj, images, part.weights, props)


def weighted_plane_fan(q: QuotientData) -> Fan:
    return complete_fan_2d(primitive(v) for v in q.images)


# ---------------------------------------------------------------------------
# chains of projections


def default_kernels(n: int) -> list[tuple[int, ...]]:
    """``e_1 + e_r`` for ``r = 2..n-4``: ``n - 5`` steps down to rank two."""
    return [subset_vector(n, (1, r)) for r in range(2, n - 3)]


@dataclass
class ChainStep:
    step: int
    rank: int
    kernel: tuple[int, ...]
    kernel_image: tuple[int, ...]
    rays: int
    cones: int
    complete: bool
    simplicial: bool
    cone_onto_cone: bool
    validated: bool
    projective: bool | None
    d0_positive: bool

    @property
    def ok(self) -> bool:
        return (self.complete and self.simplicial and self.cone_onto_cone and self.validated
                and self.projective is not False and self.d0_positive)

    def to_json(self):
        return {
            "step": self.step, "rank": self.rank, "kernel": list(self.kernel),
            "kernel_image": list(self.kernel_image), "rays": self.rays, "cones": self.cones,
            "complete": self.complete, "simplicial": self.simplicial,
            "cone_onto_cone": self.cone_onto_cone, "validated": self.validated,
            "projective": self.projective, "d0_positive": self.d0_positive,
        }


@dataclass
class ChainReport:
    n: int
    kernels: list
    base: dict
    steps: list[ChainStep]
    top_rays_match: bool
    truncated: bool = False
    fans: list = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return (not self.truncated and self.top_rays_match and self.base["complete"]
                and self.base["projective"] is not False and all(s.ok for s in self.steps))

    def to_json(self):
        return {
            "n": self.n,
            "kernels": [list(k) for k in self.kernels],
            "base": self.base,
            "steps": [s.to_json() for s in self.steps],
            "top_rays_match": self.top_rays_match,
            "truncated": self.truncated,
        }


def _d0_positive(f: Fan, r0_index: int) -> bool:
    """``D_0 . V(tau) > 0`` for every ridge ``tau`` opposite the ray ``R_0``."""
    for sigma in f.max_cones:
        if r0_index in sigma:
            tau = tuple(i for i in sigma if i != r0_index)
            if toric_intersection_D0(f, tau, r0_index) <= 0:
                return False
    return True


def build_chain(n: int, kernel_vectors=None, budget: int | None = None,
                lp_budget: int = DEFAULT_LP_BUDGET, validate_budget: int | None = -1) -> ChainReport:
    """Lift a complete fan from the rank-two quotient back up to rank ``n-3``.

    Step ``j`` divides by the image of ``kernel_vectors[j-1]``; that image must
    be primitive and, with its negative, a projected Losev-Manin ray.  The
    fans are then built from the bottom up with :func:`project_fan`, so the
    top fan has exactly the Losev-Manin rays.  ``budget`` caps the number of
    maximal cones; ``lp_budget`` allows projectivity certificates above rank
    three for fans with at most that many cones.
    """
    top = lm_rays(n)
    kernels = [tuple(int(x) for x in k) for k in (kernel_vectors if kernel_vectors is not None else default_kernels(n))]
    r0 = n - 3
    bottom_rank = r0 - len(kernels)
    if bottom_rank not in (1, 2):
        raise ChainError(0, f"{len(kernels)} kernel vectors leave rank {bottom_rank}; need rank 2 (or 1)")

    # top-down: quotient maps and projected ray sets
    Q = [[int(i == j) for j in range(r0)] for i in range(r0)]
    gammas = [set(top.rays)]
    projections = []
    for j, k in enumerate(kernels, start=1):
        if len(k) != r0:
            raise ChainError(j, "kernel vector has the wrong length")
        v0 = tuple(matvec(Q, k))
        if not any(v0):
            raise ChainError(j, "kernel vector lies in the span of the previous ones")
        if content(v0) != 1:
            raise ChainError(j, f"image {v0} is not primitive in the current quotient lattice")
        neg = tuple(-x for x in v0)
        if v0 not in gammas[-1] or neg not in gammas[-1]:
            raise ChainError(j, f"image {v0} and its negative are not both current rays")
        proj = LatticeProjection.from_kernel(v0)
        projections.append(proj)
        Q = matmul(proj.matrix, Q)
        gammas.append({primitive(proj.apply(g)) for g in gammas[-1] if g not in (v0, neg)})

    # bottom fan
    try:
        fan = complete_fan_2d(gammas[-1]) if bottom_rank == 2 else complete_fan_1d(gammas[-1])
    except FanError as exc:
        raise ChainError(len(kernels), f"no complete fan on the bottom rays: {exc}") from None
    base_cert = certify_projective(fan)
    base = {"rank": bottom_rank, "rays": len(fan.rays), "cones": len(fan.max_cones),
            "complete": is_complete(fan), "projective": base_cert is not None}
    fans = [fan]

    steps: list[ChainStep] = []
    truncated = False
    for j in range(len(kernels), 0, -1):
        proj = projections[j - 1]
        v0 = proj.kernel_vector
        neg = tuple(-x for x in v0)
        gamma = sorted(g for g in gammas[j - 1] if g not in (v0, neg))
        try:
            if budget is not None and lift_cone_count(proj, gamma, fan) > budget:
                truncated = True
                break
            up = project_fan(proj, gamma, fan, validate_budget)
        except FanError as exc:
            raise ChainError(j, str(exc)) from None
        rank_up = proj.source_rank
        projective = None
        if rank_up <= 3 or len(up.max_cones) <= lp_budget:
            projective = certify_projective(up) is not None
        steps.append(ChainStep(
            step=j,
            rank=rank_up,
            kernel=kernels[j - 1],
            kernel_image=v0,
            rays=len(up.rays),
            cones=len(up.max_cones),
            complete=is_complete(up, require_validated=False),
            simplicial=is_simplicial(up),
            cone_onto_cone=maps_onto_cones(proj, up, fan),
            validated=up.validated,
            projective=projective,
            d0_positive=_d0_positive(up, up.ray_index[v0]),
        ))
        fan = up
        fans.append(up)
    top_match = not truncated and fan.ray_set() == set(top.rays) and len(fan.rays) == len(top.rays)
    return ChainReport(n, kernels, base, steps, top_match, truncated, fans)


__all__ = [
    "ChainError",
    "ChainReport",
    "ChainStep",
    "DEFAULT_LP_BUDGET",
    "LmError",
    "LmPartition",
    "LmRaySet",
    "QuotientData",
    "QuotientError",
    "basis_vector",
    "build_chain",
    "default_kernels",
    "lm_rays",
    "partition_from_sizes",
    "quotient_data",
    "subset_vector",
    "weighted_plane_fan",
]
