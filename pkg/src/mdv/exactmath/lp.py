"""Exact rational simplex (Bland's rule) and strict-feasibility certificates.

A strict system ``a_i . x > b_i`` is decided by adding one variable ``eps``,
asking for ``a_i . x - eps >= b_i`` and maximizing ``eps`` (capped at 1).  The
system is strictly feasible iff the optimum is positive.  When it is not, a
Motzkin-type refutation is computed by a second LP and checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import to_fraction

try:  # C-backed exact rationals; Fraction is the portable fallback
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_ZERO = _Q(0)

_SENSES = (">", ">=", "==", "<=", "<")


@dataclass(frozen=True)
class Constraint:
    """``coeffs . x  <sense>  rhs``"""

    coeffs: tuple[Fraction, ...]
    sense: str
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        if self.sense not in _SENSES:
            raise ValueError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "coeffs", tuple(to_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", to_fraction(self.rhs))

    @property
    def strict(self) -> bool:
        return self.sense in (">", "<")

    def normalized(self) -> "Constraint":
        """Same constraint written with ``>``, ``>=`` or ``==``."""
        if self.sense in ("<", "<="):
            return Constraint(tuple(-c for c in self.coeffs), self.sense.replace("<", ">"), -self.rhs)
        return self

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, x)), Fraction(0))
        return {
            ">": lhs > self.rhs,
            ">=": lhs >= self.rhs,
            "==": lhs == self.rhs,
            "<=": lhs <= self.rhs,
            "<": lhs < self.rhs,
        }[self.sense]


@dataclass(frozen=True)
class LpProblem:
    num_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint length does not match num_vars")
        if self.objective is not None:
            obj = tuple(to_fraction(c) for c in self.objective)
            if len(obj) != self.num_vars:
                raise ValueError("objective length does not match num_vars")
            object.__setattr__(self, "objective", obj)

    @property
    def strict_inequalities(self) -> tuple[Constraint, ...]:
        return tuple(c for c in self.constraints if c.strict)

    @property
    def weak_inequalities(self) -> tuple[Constraint, ...]:
        return tuple(c for c in self.constraints if not c.strict)


@dataclass(frozen=True)
class LpResult:
    feasible: bool
    certificate: tuple[Fraction, ...] | None = None
    # multipliers proving infeasibility, keyed by constraint kind
    refutation: dict | None = field(default=None, compare=False)


class LpError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# simplex core: maximize c.x subject to A x = b, x >= 0


def _pivot(T, red, basis, r, c):
    row = T[r]
    inv = 1 / row[c]
    T[r] = row = [a * inv for a in row]
    nz = [k for k, a in enumerate(row) if a]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
    f = red[c]
    if f:
        for k in nz:
            red[k] -= f * row[k]
    basis[r] = c


def _reduced_costs(T, basis, cost):
    red = list(cost) + [_ZERO]
    for i, j in enumerate(basis):
        cj = cost[j]
        if cj:
            for k, a in enumerate(T[i]):
                if a:
                    red[k] -= cj * a
    return red


def _run(T, basis, cost, allowed):
    """Bland's-rule primal simplex on a feasible tableau.  Returns status."""
    ncols = len(T[0]) - 1
    red = _reduced_costs(T, basis, cost)
    while True:
        in_basis = set(basis)
        entering = next((j for j in range(ncols) if allowed[j] and j not in in_basis and red[j] > 0), None)
        if entering is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, red, basis, best[1], entering)


def _to_q(x):
    x = to_fraction(x)
    return _Q(x.numerator, x.denominator)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def simplex(A: Sequence[Sequence], b: Sequence, c: Sequence):
    """Maximize ``c.x`` over ``{x >= 0 : A x = b}`` exactly.

    Returns ``(status, x, value)`` with status one of ``"optimal"``,
    ``"infeasible"``, ``"unbounded"``.
    """
    m, n = len(A), len(c)
    one = _Q(1)
    T = []
    for i, (row, rhs) in enumerate(zip(A, b)):
        row = [_to_q(a) for a in row]
        rhs = _to_q(rhs)
        if rhs < 0:
            row, rhs = [-a for a in row], -rhs
        T.append(row + [one if i == k else _ZERO for k in range(m)] + [rhs])
    basis = list(range(n, n + m))
    cost1 = [_ZERO] * n + [-one] * m
    _run(T, basis, cost1, [True] * (n + m))
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return "infeasible", None, None

    # drive zero-valued artificials out of the basis; drop redundant rows
    i = 0
    scratch = [_ZERO] * (n + m + 1)
    while i < len(T):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, scratch, basis, i, j)
        i += 1

    cost2 = [_to_q(x) for x in c] + [_ZERO] * m
    status = _run(T, basis, cost2, [True] * n + [False] * m)
    if status == "unbounded":
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = _to_fraction(T[i][-1])
    value = sum((to_fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return "optimal", x, value


# --------------------------------------------------------------------------
# strict feasibility


def _free_variable_system(num_vars, constraints, with_eps):
    """Equality form over x = x+ - x-, surplus variables and optional eps."""
    A, b = [], []
    n_surplus = sum(1 for c in constraints if c.sense != "==")
    eps_col = 2 * num_vars + n_surplus
    width = eps_col + (2 if with_eps else 0)
    s = 0
    for con in constraints:
        row = [Fraction(0)] * width
        for k, a in enumerate(con.coeffs):
            row[k] = a
            row[num_vars + k] = -a
        if con.sense != "==":
            row[2 * num_vars + s] = Fraction(-1)
            s += 1
        if con.strict and with_eps:
            row[eps_col] = Fraction(-1)
        A.append(row)
        b.append(con.rhs)
    if with_eps:
        row = [Fraction(0)] * width
        row[eps_col] = Fraction(1)
        row[eps_col + 1] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    return A, b, width, eps_col


def _refute(num_vars, constraints):
    """Multipliers y (strict, plus one for the homogenizing row), z (weak),
    w (equalities, free) with  sum y a + sum z c + sum w e = 0,
    y.b + z.d + w.f = y_t  and  sum y + y_t = 1."""
    strict = [c for c in constraints if c.strict]
    weak = [c for c in constraints if c.sense == ">="]
    eqs = [c for c in constraints if c.sense == "=="]
    cols = []
    for c in strict:
        cols.append(("strict", list(c.coeffs) + [c.rhs, Fraction(1)]))
    cols.append(("slack", [Fraction(0)] * num_vars + [Fraction(-1), Fraction(1)]))
    for c in weak:
        cols.append(("weak", list(c.coeffs) + [c.rhs, Fraction(0)]))
    for c in eqs:
        v = list(c.coeffs) + [c.rhs, Fraction(0)]
        cols.append(("eq+", v))
        cols.append(("eq-", [-x for x in v]))
    nrows = num_vars + 2
    A = [[col[1][r] for col in cols] for r in range(nrows)]
    b = [Fraction(0)] * (num_vars + 1) + [Fraction(1)]
    status, x, _ = simplex(A, b, [0] * len(cols))
    if status != "optimal":
        return None
    y, z, w = [], [], []
    y_t = Fraction(0)
    for (kind, _), val in zip(cols, x):
        if kind == "strict":
            y.append(val)
        elif kind == "slack":
            y_t = val
        elif kind == "weak":
            z.append(val)
        elif kind == "eq+":
            w.append(val)
        else:
            w[-1] -= val
    return {"strict": y, "homogenizer": y_t, "weak": z, "equality": w}


def check_refutation(problem: LpProblem, ref: dict) -> bool:
    """Exact check that ``ref`` proves the strict system has no solution."""
    cons = [c.normalized() for c in problem.constraints]
    strict = [c for c in cons if c.strict]
    weak = [c for c in cons if c.sense == ">="]
    eqs = [c for c in cons if c.sense == "=="]
    y, z, w, y_t = ref["strict"], ref["weak"], ref["equality"], ref["homogenizer"]
    if len(y) != len(strict) or len(z) != len(weak) or len(w) != len(eqs):
        return False
    if any(v < 0 for v in y) or any(v < 0 for v in z) or y_t < 0:
        return False
    if sum(y) + y_t <= 0:
        return False
    for k in range(problem.num_vars):
        total = sum((yi * c.coeffs[k] for yi, c in zip(y, strict)), Fraction(0))
        total += sum((zi * c.coeffs[k] for zi, c in zip(z, weak)), Fraction(0))
        total += sum((wi * c.coeffs[k] for wi, c in zip(w, eqs)), Fraction(0))
        if total != 0:
            return False
    rhs = sum((yi * c.rhs for yi, c in zip(y, strict)), Fraction(0))
    rhs += sum((zi * c.rhs for zi, c in zip(z, weak)), Fraction(0))
    rhs += sum((wi * c.rhs for wi, c in zip(w, eqs)), Fraction(0))
    return rhs == y_t


def lp_strict_feasible(problem: LpProblem) -> LpResult:
    """Find ``x`` satisfying every constraint, strict ones strictly.

    >>> p = LpProblem(1, [Constraint((1,), ">")])
    >>> lp_strict_feasible(p).certificate
    (Fraction(1, 1),)
    """
    cons = [c.normalized() for c in problem.constraints]
    n = problem.num_vars
    with_eps = any(c.strict for c in cons)
    A, b, width, eps_col = _free_variable_system(n, cons, with_eps)
    cost = [Fraction(0)] * width
    if with_eps:
        cost[eps_col] = Fraction(1)
    status, x, value = simplex(A, b, cost) if A else ("optimal", [Fraction(0)] * width, Fraction(0))
    if status == "unbounded":
        raise LpError("bounded LP reported unbounded")
    if status == "optimal" and (not with_eps or value > 0):
        cert = tuple(x[k] - x[n + k] for k in range(n))
        if not all(c.holds(cert) for c in problem.constraints):
            raise LpError("certificate failed exact re-check")
        return LpResult(True, cert)
    ref = _refute(n, cons)
    if ref is None or not check_refutation(problem, ref):
        raise LpError("infeasible system without a valid refutation")
    return LpResult(False, None, ref)


def lp_maximize(problem: LpProblem):
    """Maximize the problem's objective over its (weak) constraints.

    Returns ``(status, x, value)``; strict constraints are not allowed here.
    """
    if problem.objective is None:
        raise ValueError("problem has no objective")
    cons = [c.normalized() for c in problem.constraints]
    if any(c.strict for c in cons):
        raise ValueError("lp_maximize does not take strict constraints")
    n = problem.num_vars
    A, b, width, _ = _free_variable_system(n, cons, False)
    cost = list(problem.objective) + [-c for c in problem.objective]
    cost += [Fraction(0)] * (width - 2 * n)
    if not A:
        if any(problem.objective):
            return "unbounded", None, None
        return "optimal", (Fraction(0),) * n, Fraction(0)
    status, x, value = simplex(A, b, cost)
    if status != "optimal":
        return status, None, None
    return status, tuple(x[k] - x[n + k] for k in range(n)), value
