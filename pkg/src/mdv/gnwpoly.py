"""The Goto-Nishida-Watanabe polynomials for the monomial curve
``(t^(7m-3), t^(5m^2-2m), t^(8m-3))`` and their identities.

Identities are checked over Q.  The characteristic-p polynomial ``h`` is
assembled over F_p from the third identity raised to the p-th power.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .poly import NotDivisibleError, Polynomial, WeightedGrading, exact_divide, reduce_mod, substitute_monomial_curve, weighted_degree, xyz


class GnwError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class GnwSystem:
    m: int
    g_a: Polynomial
    g_b: Polynomial
    g_c: Polynomial
    d2: Polynomial
    d3: Polynomial
    d3p: Polynomial
    grading: WeightedGrading

    NAMES = ("g_a", "g_b", "g_c", "d2", "d3", "d3p")

    def polynomials(self) -> dict[str, Polynomial]:
        return {name: getattr(self, name) for name in self.NAMES}

    def degrees(self) -> dict[str, int]:
        return {name: weighted_degree(f, self.grading) for name, f in self.polynomials().items()}

    def check_invariants(self) -> None:
        for name, f in self.polynomials().items():
            weighted_degree(f, self.grading)
            if substitute_monomial_curve(f, self.grading.weights):
                raise GnwError(f"{name} does not vanish on the curve")

    def to_json(self) -> dict:
        return {"m": self.m, "weights": list(self.grading.weights),
                "polynomials": {name: f.to_json() for name, f in self.polynomials().items()}}


def gnw_weights(m: int) -> tuple[int, int, int]:
    return (7 * m - 3, 5 * m * m - 2 * m, 8 * m - 3)


def gnw_system(m: int, check: bool = True) -> GnwSystem:
    if m < 4:
        raise GnwError(f"m = {m} must be at least 4")
    x, y, z = xyz()
    g_a = z ** (3 * m - 1) - x ** (2 * m - 1) * y**2
    g_b = x ** (3 * m - 1) - y * z ** (2 * m - 1)
    g_c = y**3 - x**m * z**m
    d2 = (x ** (m - 1) * y**5 * z ** (m - 1) - 3 * x ** (2 * m - 1) * y**2 * z ** (2 * m - 1)
          + x ** (5 * m - 2) * y + z ** (5 * m - 2))
    d3 = (-x ** (3 * m - 2) * y**7 + 2 * x ** (m - 1) * y**5 * z ** (3 * m - 1)
          + x ** (4 * m - 2) * y**4 * z**m - 5 * x ** (2 * m - 1) * y**2 * z ** (4 * m - 1)
          + 3 * x ** (5 * m - 2) * y * z ** (2 * m) - x ** (8 * m - 3) * z + z ** (7 * m - 2))
    d3p = (y**8 * z ** (2 * m - 2) - 4 * x**m * y**5 * z ** (3 * m - 2)
           + x ** (4 * m - 1) * y**4 * z ** (m - 1) + 6 * x ** (2 * m) * y**2 * z ** (4 * m - 2)
           - 4 * x ** (5 * m - 1) * y * z ** (2 * m - 1) + x ** (8 * m - 2) - x * z ** (7 * m - 3))
    system = GnwSystem(m, g_a, g_b, g_c, d2, d3, d3p, WeightedGrading(gnw_weights(m)))
    if check:
        system.check_invariants()
    return system


def identity_expressions(s: GnwSystem) -> dict[str, Polynomial]:
    """Left-hand sides of the four identities; each should be zero."""
    x, y, z = xyz()
    m, a, b, c = s.m, s.g_a, s.g_b, s.g_c
    return {
        "i": x**m * s.d2 - y * b**2 + z ** (m - 1) * a * c,
        "ii": x ** (m - 1) * b**2 * c + a * s.d2 - z ** (m - 1) * s.d3,
        "iii": x * s.d3 + y * b * c**2 + z * s.d3p,
        "iv": x**m * a + y**2 * b + z ** (2 * m - 1) * c,
    }


def verify_identities(m: int, system: GnwSystem | None = None) -> dict[str, dict]:
    """Evaluate each identity; a failing one reports its leading nonzero term."""
    s = system if system is not None else gnw_system(m)
    out = {}
    for name, expr in identity_expressions(s).items():
        if expr:
            e, coeff = expr.leading_term()
            out[name] = {"zero": False, "counterexample": {"exponent": list(e), "coefficient": coeff,
                                                           "terms": len(expr)}}
        else:
            out[name] = {"zero": True}
    return out


def symbolic_power_checks(m: int, system: GnwSystem | None = None) -> dict[str, bool]:
    """``d2`` in the second, ``d3`` and ``d3p`` in the third symbolic power,
    and ``g_c`` not dividing ``d3``."""
    from .wps import WeightedTriple, in_symbolic_power

    s = system if system is not None else gnw_system(m)
    t = WeightedTriple(*gnw_weights(m))
    try:
        exact_divide(s.d3, s.g_c)
        c_divides_d3 = True
    except NotDivisibleError:
        c_divides_d3 = False
    return {
        "d2_order2": in_symbolic_power(s.d2, 2, t),
        "d3_order3": in_symbolic_power(s.d3, 3, t),
        "d3p_order3": in_symbolic_power(s.d3p, 3, t),
        "g_c_does_not_divide_d3": not c_divides_d3,
    }


@dataclass(frozen=True)
class CharPWitness:
    m: int
    p: int
    h: Polynomial
    kept: tuple[int, ...]
    degree: int
    expected_degree: int
    g_c_divides_h: bool
    vanishes_on_curve: bool
    guard_holds: bool

    @property
    def ok(self) -> bool:
        return (self.degree == self.expected_degree and not self.g_c_divides_h
                and self.vanishes_on_curve and self.guard_holds)

    def to_json(self):
        return {"m": self.m, "p": self.p, "kept_indices": list(self.kept), "degree": self.degree,
                "expected_degree": self.expected_degree, "g_c_divides_h": self.g_c_divides_h,
                "vanishes_on_curve": self.vanishes_on_curve, "guard_holds": self.guard_holds,
                "terms": len(self.h)}


def char_p_numerator(m: int, p: int, system: GnwSystem | None = None) -> tuple[Polynomial, tuple[int, ...], bool]:
    """``z^p h`` over F_p, the kept summation indices, and the exponent guard.

    With ``q = (p-1)/2`` the sum runs over ``i`` with ``(2m-1) i < p`` and
    consists of ``(-1)^q C(q,i) x^(m(q-i)-p) y z^((2m-1)i) a^(q-i) b^(p-q) c^(2p+i)``.
    """
    if p == 2:
        raise GnwError("p must be odd")
    if not _is_prime(p):
        raise GnwError(f"{p} is not prime")
    if m < 4 or m % 3 == 0:
        raise GnwError(f"m = {m} needs m >= 4 and m not divisible by 3")
    s = system if system is not None else gnw_system(m)
    q = (p - 1) // 2
    # every index must be droppable or carry enough x to divide by x^p
    guard = all(m * (q - i) >= p or (2 * m - 1) * i >= p for i in range(q + 1))
    x, y, z = xyz(p)
    a, b, c, d3 = (reduce_mod(f, p) for f in (s.g_a, s.g_b, s.g_c, s.d3))
    total = d3**p
    kept = []
    sign = -1 if q % 2 else 1
    for i in range(q + 1):
        if (2 * m - 1) * i >= p:
            continue
        if m * (q - i) < p:
            raise GnwError(f"kept index {i} has negative x exponent")
        kept.append(i)
        total = total + (sign * comb(q, i)) * (x ** (m * (q - i) - p) * y * z ** ((2 * m - 1) * i)
                                                * a ** (q - i) * b ** (p - q) * c ** (2 * p + i))
    return total, tuple(kept), guard


def char_p_witness(m: int, p: int, system: GnwSystem | None = None) -> CharPWitness:
    s = system if system is not None else gnw_system(m)
    numerator, kept, guard = char_p_numerator(m, p, s)
    _, _, z = xyz(p)
    try:
        h = exact_divide(numerator, z**p)
    except NotDivisibleError:
        raise GnwError(f"sum is not divisible by z^{p}") from None
    weights = s.grading.weights
    degree = weighted_degree(h, weights)
    try:
        exact_divide(h, reduce_mod(s.g_c, p))
        c_divides = True
    except NotDivisibleError:
        c_divides = False
    vanishes = not substitute_monomial_curve(h, weights)
    expected = p * (7 * m - 3) * (8 * m - 3)
    return CharPWitness(m, p, h, kept, degree, expected, c_divides, vanishes, guard)


__all__ = [
    "CharPWitness",
    "GnwError",
    "GnwSystem",
    "char_p_numerator",
    "char_p_witness",
    "gnw_system",
    "gnw_weights",
    "identity_expressions",
    "symbolic_power_checks",
    "verify_identities",
]
