"""Sparse multivariate polynomials over Q or F_p.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients.  Rational coefficients are ``int`` when integral and
``Fraction`` otherwise; coefficients mod ``p`` are least nonnegative residues.
Terms are ordered graded-lexicographically (total degree first, then lex
with the first variable largest), leading term first.
"""

from __future__ import annotations

import ast
import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class PolynomialError(ValueError):
    pass


class NotDivisibleError(PolynomialError):
    def __init__(self, msg="not divisible"):
        super().__init__(msg)


@dataclass(frozen=True)
class WeightedGrading:
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w < 1 for w in self.weights):
            raise PolynomialError("grading weights must be positive")

    def degree(self, exponent: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, exponent))


def order_key(e: Exponent):
    return (sum(e), e)


def _norm_q(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def _norm_p(c, p):
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise PolynomialError(f"denominator divisible by {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return _norm_q(c) % p


class Polynomial:
    """Sparse polynomial in ``nvars`` variables.

    ``modulus=None`` means coefficients in Q; otherwise a prime ``p``.
    """

    __slots__ = ("nvars", "modulus", "_terms")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, nvars: int = 3,
                 modulus: int | None = None):
        self.nvars = nvars
        self.modulus = modulus
        clean: dict[Exponent, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise PolynomialError(f"bad exponent vector {e} for {nvars} variables")
            c = _norm_q(c) if modulus is None else _norm_p(c, modulus)
            if e in clean:
                c = clean[e] + c
                if modulus is not None:
                    c %= modulus
                c = _norm_q(c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean

    @classmethod
    def _raw(cls, terms, nvars, modulus):
        obj = cls.__new__(cls)
        obj.nvars, obj.modulus, obj._terms = nvars, modulus, terms
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars=3, modulus=None):
        return cls._raw({}, nvars, modulus)

    @classmethod
    def constant(cls, c, nvars=3, modulus=None):
        return cls({(0,) * nvars: c}, nvars, modulus)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1, modulus=None):
        return cls({tuple(exponent): coeff}, len(exponent), modulus)

    @classmethod
    def variable(cls, i, nvars=3, modulus=None):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e, 1, modulus)

    # -- basic protocol ----------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order, leading term first."""
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nvars, self.modulus, self._terms) == (other.nvars, other.modulus, other._terms)

    def __hash__(self):
        return hash((self.nvars, self.modulus, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, nvars={self.nvars}, modulus={self.modulus})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or (("x", "y", "z") if self.nvars <= 3 else [f"x{i}" for i in range(self.nvars)])
        parts = []
        for e, c in self.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1 and self.modulus is None:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars or other.modulus != self.modulus:
                raise PolynomialError("polynomials live in different rings")
            return other
        return Polynomial.constant(other, self.nvars, self.modulus)

    def _fix(self, c):
        if self.modulus is not None:
            return c % self.modulus
        return _norm_q(c)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return Polynomial._raw({e: self._fix(-c) for e, c in self._terms.items()}, self.nvars, self.modulus)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = self._fix(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.nvars, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _norm_q(other) if self.modulus is None else _norm_p(other, self.modulus)
            if not c:
                return Polynomial.zero(self.nvars, self.modulus)
            return Polynomial._raw({e: self._fix(v * c) for e, v in self._terms.items()},
                                   self.nvars, self.modulus)
        other = self._coerce(other)
        out: dict[Exponent, object] = {}
        p = self.modulus
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p is None:
            out = {e: _norm_q(c) for e, c in out.items() if c}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return Polynomial._raw(out, self.nvars, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolynomialError("negative power")
        result = Polynomial.constant(1, self.nvars, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ---------------------------------------------------------

    def leading_term(self) -> tuple[Exponent, object]:
        if not self._terms:
            raise PolynomialError("zero polynomial")
        e = max(self._terms, key=order_key)
        return e, self._terms[e]

    def total_degree(self) -> int:
        if not self._terms:
            raise PolynomialError("zero polynomial")
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self, grading: WeightedGrading | Sequence[int]) -> bool:
        w = grading if isinstance(grading, WeightedGrading) else WeightedGrading(tuple(grading))
        return len({w.degree(e) for e in self._terms}) <= 1

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total += term
        if self.modulus is not None:
            return total % self.modulus
        return _norm_q(total) if isinstance(total, (int, Fraction)) else total

    def map_exponents(self, fn) -> "Polynomial":
        out: dict[Exponent, object] = {}
        for e, c in self._terms.items():
            ne = tuple(fn(e))
            out[ne] = out.get(ne, 0) + c
        return Polynomial(out, len(next(iter(out))) if out else self.nvars, self.modulus)

    def to_json(self) -> list:
        return [[str(c), list(e)] for e, c in self.items()]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Iterable, nvars: int | None = None, modulus: int | None = None):
        data = list(data)
        if nvars is None:
            if not data:
                raise PolynomialError("cannot infer nvars of an empty polynomial")
            nvars = len(data[0][1])
        terms: dict[Exponent, object] = {}
        for coeff, exps in data:
            e = tuple(exps)
            if e in terms:
                raise PolynomialError(f"repeated exponent {e}")
            terms[e] = Fraction(coeff)
        return cls(terms, nvars, modulus)


# -- operations ---------------------------------------------------------------


def _falling(e: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= e - i
    return out


def partial_derivative(f: Polynomial, multi_index: Sequence[int]) -> Polynomial:
    """Iterated formal partial derivative; ``multi_index[i]`` times in variable ``i``."""
    if len(multi_index) != f.nvars:
        raise PolynomialError("multi-index length mismatch")
    out = {}
    for e, c in f._terms.items():
        coef = c
        for ei, ai in zip(e, multi_index):
            if ai > ei:
                coef = 0
                break
            coef *= _falling(ei, ai)
        if coef:
            out[tuple(ei - ai for ei, ai in zip(e, multi_index))] = coef
    return Polynomial(out, f.nvars, f.modulus)


def derivative_at(f: Polynomial, multi_index: Sequence[int], point: Sequence | None = None):
    """Value of a partial derivative at ``point`` (default the all-ones point)."""
    if point is None:
        total = 0
        for e, c in f._terms.items():
            term = c
            for ei, ai in zip(e, multi_index):
                if ai > ei:
                    term = 0
                    break
                term *= _falling(ei, ai)
            total += term
        if f.modulus is not None:
            return total % f.modulus
        return _norm_q(total)
    return partial_derivative(f, multi_index).evaluate(point)


def substitute_monomial_curve(f: Polynomial, exponents: Sequence[int]) -> Polynomial:
    """``f(t^w1, ..., t^wn)`` as a univariate polynomial in ``t``."""
    if len(exponents) != f.nvars:
        raise PolynomialError("exponent count does not match variables")
    out: dict[Exponent, object] = {}
    for e, c in f._terms.items():
        k = (sum(w * x for w, x in zip(exponents, e)),)
        out[k] = out.get(k, 0) + c
    return Polynomial(out, 1, f.modulus)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return ``q`` with ``f == q * g``; raise :class:`NotDivisibleError` otherwise."""
    g = f._coerce(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    lg_e, lg_c = g.leading_term()
    p = f.modulus
    inv = pow(lg_c, -1, p) if p is not None else None
    rem = dict(f._terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, object] = {}
    g_rest = [(e, c) for e, c in g._terms.items() if e != lg_e]
    while heap:
        _, neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = rem.get(e)
        if c is None:
            continue
        qe = tuple(a - b for a, b in zip(e, lg_e))
        if any(x < 0 for x in qe):
            raise NotDivisibleError()
        if p is None:
            qc = _norm_q(Fraction(c) / lg_c)
        else:
            qc = c * inv % p
        quot[qe] = qc
        del rem[e]
        for ge, gc in g_rest:
            te = tuple(a + b for a, b in zip(qe, ge))
            v = rem.get(te, 0) - qc * gc
            v = v % p if p is not None else _norm_q(v)
            if v:
                if te not in rem:
                    heapq.heappush(heap, (-sum(te), tuple(-x for x in te)))
                rem[te] = v
            else:
                rem.pop(te, None)
    return Polynomial._raw(quot, f.nvars, f.modulus)


def divides(g: Polynomial, f: Polynomial) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisibleError:
        return False
    return True


def weighted_degree(f: Polynomial, grading: WeightedGrading | Sequence[int]) -> int:
    w = grading if isinstance(grading, WeightedGrading) else WeightedGrading(tuple(grading))
    if len(w.weights) != f.nvars:
        raise PolynomialError("grading length does not match variables")
    if not f:
        raise PolynomialError("zero polynomial")
    degrees = {w.degree(e) for e in f._terms}
    if len(degrees) != 1:
        raise PolynomialError("inhomogeneous")
    return degrees.pop()


def reduce_mod(f: Polynomial, p: int) -> Polynomial:
    """Coefficient-wise reduction of a rational polynomial into F_p."""
    if f.modulus is not None:
        raise PolynomialError("already reduced")
    return Polynomial(f._terms, f.nvars, p)


def multi_indices(nvars: int, order: int):
    """All exponent vectors of total degree ``order``, in lex order (largest first)."""
    if nvars == 0:
        if order == 0:
            yield ()
        return
    for first in range(order, -1, -1):
        for rest in multi_indices(nvars - 1, order - first):
            yield (first,) + rest


def multi_indices_below(nvars: int, order: int):
    for k in range(order):
        yield from multi_indices(nvars, k)


def count_multi_indices(nvars: int, order: int) -> int:
    return comb(order + nvars - 1, nvars - 1)


def xyz(modulus: int | None = None) -> tuple[Polynomial, Polynomial, Polynomial]:
    return tuple(Polynomial.variable(i, 3, modulus) for i in range(3))


def random_polynomial(rng, nvars=3, nterms=4, max_exp=3, coeff_range=5, modulus=None) -> Polynomial:
    """Small random polynomial for property tests; ``rng`` is a ``random.Random``."""
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        terms[e] = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3))
    return Polynomial(terms, nvars, modulus)


__all__ = [
    "Exponent",
    "NotDivisibleError",
    "Polynomial",
    "PolynomialError",
    "WeightedGrading",
    "count_multi_indices",
    "derivative_at",
    "divides",
    "exact_divide",
    "multi_indices",
    "multi_indices_below",
    "order_key",
    "parse_polynomial",
    "partial_derivative",
    "random_polynomial",
    "reduce_mod",
    "substitute_monomial_curve",
    "weighted_degree",
    "xyz",
]


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b, ast.Mult: lambda a, b: a * b}


def parse_polynomial(text: str, names: Sequence[str] = ("x", "y", "z"), modulus: int | None = None) -> Polynomial:
    """Parse an expression such as ``"y - x^2"`` or ``"3*x*y**2 - z"``.

    Only integer literals, the given variable names, ``+ - *`` and
    nonnegative integer powers are accepted.
    """
    nvars = len(names)
    variables = {n: Polynomial.variable(i, nvars, modulus) for i, n in enumerate(names)}

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and type(node.right.value) is int
                        and node.right.value >= 0):
                    raise PolynomialError("exponents must be nonnegative integer literals")
                return walk(node.left) ** node.right.value
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise PolynomialError(f"unsupported operator {type(node.op).__name__}")
            return op(walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.Name) and node.id in variables:
            return variables[node.id]
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return Polynomial.constant(node.value, nvars, modulus)
        raise PolynomialError(f"cannot parse {ast.dump(node)}")

    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolynomialError(f"cannot parse {text!r}") from exc
    return walk(tree)
