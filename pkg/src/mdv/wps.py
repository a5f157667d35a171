"""Divisor classes on the blow-up of a weighted projective plane at (1,1,1).

Classes are written ``d H - l E`` with ``H^2 = 1/(abc)``, ``H.E = 0`` and
``E^2 = -1``.  Sections of ``d H - l E`` are weighted-degree-``d``
polynomials vanishing to order ``l`` at the point ``(1,1,1)``; vanishing is
tested through partial derivatives there.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, perm

from .exactmath import clear_denominators, det_exact, kernel_basis
from .poly import (
    NotDivisibleError,
    Polynomial,
    PolynomialError,
    derivative_at,
    exact_divide,
    multi_indices,
    multi_indices_below,
    partial_derivative,
    substitute_monomial_curve,
    weighted_degree,
    xyz,
)


class WpsError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise WpsError("weights must be positive")
        if gcd(self.a, self.b) != 1 or gcd(self.b, self.c) != 1 or gcd(self.a, self.c) != 1:
            raise WpsError(f"weights {self.weights} are not pairwise coprime")

    @property
    def weights(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def product(self) -> int:
        return self.a * self.b * self.c


@dataclass(frozen=True)
class DivClass:
    """``d H - l E``"""

    d: int
    l: int

    def __add__(self, other: "DivClass") -> "DivClass":
        return DivClass(self.d + other.d, self.l + other.l)

    def scale(self, k: int) -> "DivClass":
        return DivClass(k * self.d, k * self.l)

    def __str__(self):
        return f"{self.d}H - {self.l}E"

    def to_json(self):
        return {"d": self.d, "l": self.l}


def class_intersection(t: WeightedTriple, u: DivClass, v: DivClass) -> Fraction:
    return Fraction(u.d * v.d, t.product) - u.l * v.l


def monomials_of_weighted_degree(t: WeightedTriple, d: int) -> list[tuple[int, int, int]]:
    """Exponents ``(i, j, k)`` with ``a i + b j + c k = d``, lex ascending."""
    if d < 0:
        raise WpsError("degree must be nonnegative")
    out = []
    for i in range(d // t.a + 1):
        rest = d - t.a * i
        for j in range(rest // t.b + 1):
            r = rest - t.b * j
            if r % t.c == 0:
                out.append((i, j, r // t.c))
    return out


def multiplicity_at_e(f: Polynomial, t: WeightedTriple | None = None) -> int:
    """Order of vanishing of ``f`` at ``(1,1,1)``."""
    if not f:
        raise WpsError("zero polynomial")
    if t is not None:
        weighted_degree(f, t.weights)
    k = 0
    while True:
        if any(derivative_at(f, alpha) for alpha in multi_indices(f.nvars, k)):
            return k
        k += 1


def _derivative_row(alpha, monomials):
    # value of d^alpha (x^e) at (1,1,1) is a product of falling factorials
    return [perm(e[0], alpha[0]) * perm(e[1], alpha[1]) * perm(e[2], alpha[2]) for e in monomials]


def effectivity_kernel(t: WeightedTriple, cls: DivClass) -> list[Polynomial]:
    """Basis of degree-``d`` polynomials with all partials of order ``< l`` zero at (1,1,1)."""
    if cls.d < 0 or cls.l < 0:
        raise WpsError("class coefficients must be nonnegative")
    monos = monomials_of_weighted_degree(t, cls.d)
    if not monos:
        return []
    rows = [_derivative_row(alpha, monos) for alpha in multi_indices_below(3, cls.l)]
    if not rows:
        vectors = [[int(i == j) for j in range(len(monos))] for i in range(len(monos))]
    else:
        vectors = [clear_denominators(v) for v in kernel_basis(rows, len(monos))]
    return [Polynomial({e: c for e, c in zip(monos, v) if c}) for v in vectors]


@dataclass(frozen=True)
class CurveData:
    f: Polynomial
    cls: DivClass
    triple: WeightedTriple

    def __post_init__(self):
        if weighted_degree(self.f, self.triple.weights) != self.cls.d:
            raise WpsError("curve degree does not match its class")
        if multiplicity_at_e(self.f) != self.cls.l:
            raise WpsError("curve multiplicity does not match its class")

    @property
    def self_intersection(self) -> Fraction:
        return class_intersection(self.triple, self.cls, self.cls)


def negative_curve_triple(m: int) -> WeightedTriple:
    _check_m(m)
    return WeightedTriple(7 * m - 3, 5 * m * m - 2 * m, 8 * m - 3)


def _check_m(m: int) -> None:
    if m < 4 or m % 3 == 0:
        raise WpsError(f"m = {m} needs m >= 4 and m not divisible by 3")


def negative_curve(m: int) -> CurveData:
    """``y^3 - x^m z^m`` on the triple ``(7m-3, 5m^2-2m, 8m-3)``, class ``3(5m^2-2m) H - E``."""
    t = negative_curve_triple(m)
    x, y, z = xyz()
    f = y**3 - x**m * z**m
    curve = CurveData(f, DivClass(3 * (5 * m * m - 2 * m), 1), t)
    if curve.self_intersection >= 0:
        raise WpsError("curve is not negative")
    return curve


def orthogonal_class(m: int, d: int) -> DivClass:
    """``d (7m-3)(8m-3) H - 3d E``"""
    return DivClass(d * (7 * m - 3) * (8 * m - 3), 3 * d)


def d1_monomials(m: int) -> list[tuple[int, int, int]]:
    """The six monomials of weighted degree ``(7m-3)(8m-3)``, in fixed column order."""
    return [
        (m - 1, 5, 3 * m - 2),
        (4 * m - 2, 4, m - 1),
        (2 * m - 1, 2, 4 * m - 2),
        (5 * m - 2, 1, 2 * m - 1),
        (8 * m - 3, 0, 0),
        (0, 0, 7 * m - 3),
    ]


SECOND_ORDER = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def d1_closed_form(m: int) -> int:
    return 4 * (7 * m - 3) ** 2 * (8 * m - 3) ** 2 * (7 * m - 4) * (8 * m - 4) * (51 * m * m - 43 * m + 9)


@dataclass(frozen=True)
class DeterminantResult:
    m: int
    determinant: int
    closed_form: int
    equal: bool

    def to_json(self):
        return {"m": self.m, "determinant": self.determinant, "closed_form": self.closed_form,
                "equal": self.equal}


def d1_matrix(m: int) -> list[list[int]]:
    t = negative_curve_triple(m)
    monos = d1_monomials(m)
    found = monomials_of_weighted_degree(t, (7 * m - 3) * (8 * m - 3))
    if len(found) != 6 or set(found) != set(monos):
        raise WpsError(f"wrong monomial count: found {len(found)} monomials")
    return [_derivative_row(alpha, monos) for alpha in SECOND_ORDER]


def d1_determinant(m: int) -> DeterminantResult:
    det = det_exact(d1_matrix(m))
    closed = d1_closed_form(m)
    return DeterminantResult(m, det, closed, abs(det) == abs(closed))


def symbolic_power_obstruction(f: Polynomial, l: int, t: WeightedTriple) -> tuple[int, ...] | None:
    """First multi-index of order ``< l`` whose derivative of ``f`` does not
    vanish on the curve ``(t^a, t^b, t^c)``, or None."""
    if f.modulus is not None:
        raise WpsError("membership test needs rational coefficients")
    if l < 1:
        raise WpsError("l must be at least 1")
    for alpha in multi_indices_below(3, l):
        if substitute_monomial_curve(partial_derivative(f, alpha), t.weights):
            return alpha
    return None


def in_symbolic_power(f: Polynomial, l: int, t: WeightedTriple) -> bool:
    """Differential membership test for the ``l``-th symbolic power of the
    prime of the curve ``(t^a, t^b, t^c)`` (characteristic zero only)."""
    return symbolic_power_obstruction(f, l, t) is None


@dataclass(frozen=True)
class WitnessLevel:
    k: int
    cls: DivClass
    dimension: int
    witness: Polynomial | None

    def to_json(self):
        return {"k": self.k, "class": self.cls.to_json(), "dimension": self.dimension,
                "witness": None if self.witness is None else self.witness.to_json()}


def primitive_orthogonal_class(t: WeightedTriple, cls: DivClass) -> DivClass:
    """Smallest positive class ``d0 H - l0 E`` with zero intersection against ``cls``."""
    num, den = cls.l * t.product, cls.d
    if num <= 0 or den <= 0:
        raise WpsError("orthogonal class has no positive integral solution")
    g = gcd(num, den)
    return DivClass(num // g, den // g)


def _scan_level(args):
    t, k, cls, f = args
    basis = effectivity_kernel(t, cls)
    for h in basis:
        try:
            exact_divide(h, f)
        except NotDivisibleError:
            return WitnessLevel(k, cls, len(basis), h)
    return WitnessLevel(k, cls, len(basis), None)


def scan_levels(t: WeightedTriple, curve: CurveData, k_max: int, jobs: int = 1) -> list[WitnessLevel]:
    """Effectivity data for every multiple ``k = 1..k_max`` of the orthogonal class."""
    if curve.self_intersection >= 0:
        raise WpsError("curve is not negative")
    base = primitive_orthogonal_class(t, curve.cls)
    tasks = [(t, k, base.scale(k), curve.f) for k in range(1, k_max + 1)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_level, tasks))
    return [_scan_level(task) for task in tasks]


def huneke_witness_search(t: WeightedTriple, curve: CurveData, k_max: int,
                          jobs: int = 1) -> list[tuple[int, Polynomial]]:
    """Levels ``k`` at which some section of ``k (d0 H - l0 E)`` is not a multiple of the curve."""
    return [(lv.k, lv.witness) for lv in scan_levels(t, curve, k_max, jobs) if lv.witness is not None]


def semigroup_consistent(levels: list[int], k_max: int) -> bool:
    """Witness levels in ``1..k_max`` are closed under sums in range and equal
    the multiples of their minimum."""
    s = set(levels)
    if not s:
        return True
    if any(a + b in range(1, k_max + 1) and a + b not in s for a in s for b in s):
        return False
    k0 = min(s)
    return s == set(range(k0, k_max + 1, k0))


def euler_cascade_holds(f: Polynomial, order: int) -> bool:
    """All partials of order below ``order`` vanish at (1,1,1) when those of
    order exactly ``order`` do (used to sanity-check kernels)."""
    if not all(derivative_at(f, a) == 0 for a in multi_indices(3, order)):
        return True
    return all(derivative_at(f, a) == 0 for a in multi_indices_below(3, order))


__all__ = [
    "CurveData",
    "DeterminantResult",
    "DivClass",
    "PolynomialError",
    "WeightedTriple",
    "WitnessLevel",
    "WpsError",
    "class_intersection",
    "d1_closed_form",
    "d1_determinant",
    "d1_matrix",
    "d1_monomials",
    "effectivity_kernel",
    "euler_cascade_holds",
    "huneke_witness_search",
    "in_symbolic_power",
    "monomials_of_weighted_degree",
    "multiplicity_at_e",
    "negative_curve",
    "negative_curve_triple",
    "orthogonal_class",
    "primitive_orthogonal_class",
    "scan_levels",
    "semigroup_consistent",
    "symbolic_power_obstruction",
]
