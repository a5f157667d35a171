"""Verification checks producing :class:`CheckReport` objects.

Each check takes plain values, so batches can be shipped to worker
processes.  Invalid input raises :class:`InputError`; the command line maps
it to exit status 2.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import boundary, fan, gnwpoly, lmchain, wps
from .exactmath import LpError
from .poly import Polynomial, PolynomialError, parse_polynomial
from .reports import CheckReport, status_of


class InputError(ValueError):
    pass


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time = round(time.perf_counter() - t0, 6)
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _fail_details(details: dict, counterexample) -> dict:
    details["counterexample"] = counterexample
    return details


# ---------------------------------------------------------------------------


@_timed
def gnw_verify(m: int, p: int | None = None) -> CheckReport:
    """Identities, symbolic-power memberships and (optionally) the char-p polynomial."""
    try:
        system = gnwpoly.gnw_system(m)
    except gnwpoly.GnwError as exc:
        raise InputError(str(exc)) from None
    identities = gnwpoly.verify_identities(m, system)
    powers = gnwpoly.symbolic_power_checks(m, system)
    details = {"degrees": system.degrees(), "identities": identities, "symbolic_powers": powers}
    bad = [name for name, r in identities.items() if not r["zero"]]
    bad += [name for name, ok in powers.items() if not ok]
    if p is not None:
        try:
            witness = gnwpoly.char_p_witness(m, p, system)
        except gnwpoly.GnwError as exc:
            if "divisible" in str(exc):
                bad.append("char_p_divisibility")
                details["char_p"] = {"error": str(exc)}
            else:
                raise InputError(str(exc)) from None
        else:
            details["char_p"] = witness.to_json()
            details["char_p"]["membership"] = "membership via the identity chain, identities verified"
            if not witness.ok:
                bad.append("char_p")
    inputs = {"m": m} if p is None else {"m": m, "p": p}
    if bad:
        return CheckReport("gnw-verify", inputs, "fail", _fail_details(details, {"failed": bad}))
    return CheckReport("gnw-verify", inputs, "pass", details)


@_timed
def determinant_table(m_from: int, m_to: int) -> CheckReport:
    if m_from < 4 or m_to < m_from:
        raise InputError("need 4 <= m_from <= m_to")
    rows = [wps.d1_determinant(m) for m in range(m_from, m_to + 1) if m % 3]
    details = {"rows": [r.to_json() for r in rows]}
    bad = [r.m for r in rows if not r.equal]
    inputs = {"m_from": m_from, "m_to": m_to}
    if bad:
        return CheckReport("determinant-table", inputs, "fail", _fail_details(details, {"m": bad}))
    return CheckReport("determinant-table", inputs, "pass", details)


@_timed
def monomial_table(m_from: int, m_to: int) -> CheckReport:
    rows, bad = [], []
    for m in range(m_from, m_to + 1):
        if m % 3 == 0:
            continue
        t = wps.negative_curve_triple(m)
        found = wps.monomials_of_weighted_degree(t, (7 * m - 3) * (8 * m - 3))
        ok = set(found) == set(wps.d1_monomials(m)) and len(found) == 6
        rows.append({"m": m, "count": len(found), "match": ok})
        if not ok:
            bad.append(m)
    details = {"rows": rows}
    inputs = {"m_from": m_from, "m_to": m_to}
    if bad:
        return CheckReport("monomial-table", inputs, "fail", _fail_details(details, {"m": bad}))
    return CheckReport("monomial-table", inputs, "pass", details)


@_timed
def negative_curve_table(m_from: int, m_to: int, d_max: int = 5) -> CheckReport:
    rows, bad = [], []
    for m in range(m_from, m_to + 1):
        if m % 3 == 0:
            continue
        curve = wps.negative_curve(m)
        t = curve.triple
        orth = [wps.class_intersection(t, wps.orthogonal_class(m, d), curve.cls) for d in range(1, d_max + 1)]
        mult = wps.multiplicity_at_e(curve.f, t)
        ok = mult == 1 and curve.self_intersection < 0 and all(v == 0 for v in orth)
        rows.append({"m": m, "class": curve.cls, "self_intersection": curve.self_intersection,
                     "multiplicity": mult, "orthogonal": all(v == 0 for v in orth)})
        if not ok:
            bad.append(m)
    details = {"rows": rows}
    inputs = {"m_from": m_from, "m_to": m_to, "d_max": d_max}
    if bad:
        return CheckReport("negative-curve", inputs, "fail", _fail_details(details, {"m": bad}))
    return CheckReport("negative-curve", inputs, "pass", details)


def _curve_from_args(m, triple, curve, cls):
    try:
        if m is not None:
            c = wps.negative_curve(m)
            return c.triple, c
        if triple is None or curve is None or cls is None:
            raise InputError("give --m, or --triple with --curve and --class")
        t = wps.WeightedTriple(*triple)
        f = curve if isinstance(curve, Polynomial) else parse_polynomial(curve)
        return t, wps.CurveData(f, wps.DivClass(*cls), t)
    except (wps.WpsError, PolynomialError, TypeError) as exc:
        raise InputError(str(exc)) from None


@_timed
def witness_search(k_max: int, m: int | None = None, triple=None, curve=None, cls=None,
                   jobs: int = 1) -> CheckReport:
    """Scan multiples of the class orthogonal to a negative curve for sections
    not containing the curve; reports the witness levels."""
    t, c = _curve_from_args(m, triple, curve, cls)
    if c.self_intersection >= 0:
        raise InputError("curve is not negative")
    try:
        base = wps.primitive_orthogonal_class(t, c.cls)
    except wps.WpsError as exc:
        raise InputError(str(exc)) from None
    levels = wps.scan_levels(t, c, k_max, jobs)
    found = [lv.k for lv in levels if lv.witness is not None]
    consistent = wps.semigroup_consistent(found, k_max)
    details = {
        "curve": c.f, "class": c.cls, "self_intersection": c.self_intersection,
        "orthogonal_class": base, "levels": [lv.to_json() for lv in levels],
        "witness_levels": found, "semigroup_consistent": consistent,
    }
    inputs = {"triple": list(t.weights), "curve": c.f.to_string(), "k_max": k_max}
    if not consistent:
        return CheckReport("witness-search", inputs, "fail", _fail_details(details, {"witness_levels": found}))
    return CheckReport("witness-search", inputs, "pass", details)


@_timed
def symbolic_power(l: int, m: int | None = None, poly: str | None = None, triple=None) -> CheckReport:
    """Membership of a named GNW polynomial (or a given one) in a symbolic power."""
    try:
        if m is not None and poly in gnwpoly.GnwSystem.NAMES:
            f = getattr(gnwpoly.gnw_system(m), poly)
            t = wps.WeightedTriple(*gnwpoly.gnw_weights(m))
        else:
            if poly is None or (m is None and triple is None):
                raise InputError("give --m with a named polynomial, or --poly with --m or --triple")
            f = parse_polynomial(poly)
            t = wps.WeightedTriple(*(gnwpoly.gnw_weights(m) if m is not None else triple))
        obstruction = wps.symbolic_power_obstruction(f, l, t)
    except (gnwpoly.GnwError, wps.WpsError, PolynomialError) as exc:
        raise InputError(str(exc)) from None
    inputs = {"poly": poly, "l": l, "triple": list(t.weights)}
    details = {"member": obstruction is None}
    if obstruction is not None:
        return CheckReport("symbolic-power", inputs, "fail",
                           _fail_details(details, {"derivative": list(obstruction)}))
    return CheckReport("symbolic-power", inputs, "pass", details)


@_timed
def lm_quotient(sizes) -> CheckReport:
    try:
        part = lmchain.partition_from_sizes(sizes)
    except lmchain.LmError as exc:
        raise InputError(str(exc)) from None
    inputs = {"n": part.n, "sizes": list(sizes)}
    try:
        q = lmchain.quotient_data(part)
    except lmchain.QuotientError as exc:
        return CheckReport("lm-quotient", inputs, "fail",
                           {"counterexample": {"property": exc.prop, "message": str(exc)}})
    return CheckReport("lm-quotient", inputs, "pass", q.to_json())


@_timed
def lm_chain(n: int, kernels=None, budget: int | None = None, lp_budget: int = lmchain.DEFAULT_LP_BUDGET) -> CheckReport:
    inputs = {"n": n, "budget": budget}
    if kernels is not None:
        inputs["kernels"] = [list(k) for k in kernels]
    try:
        report = lmchain.build_chain(n, kernels, budget=budget, lp_budget=lp_budget)
    except lmchain.ChainError as exc:
        if exc.step == 0:
            raise InputError(str(exc)) from None
        return CheckReport("lm-chain", inputs, "error", {"step": exc.step, "message": str(exc)})
    except lmchain.LmError as exc:
        raise InputError(str(exc)) from None
    details = report.to_json()
    if report.truncated:
        return CheckReport("lm-chain", inputs, "error", {**details, "message": "cone budget exhausted"})
    if not report.ok:
        bad = [s.step for s in report.steps if not s.ok]
        return CheckReport("lm-chain", inputs, "fail", _fail_details(details, {"steps": bad}))
    return CheckReport("lm-chain", inputs, "pass", details)


def load_fan_input(source: str, budget: int | None = -1) -> fan.Fan:
    """A fixture name (e.g. ``p2``) or a path to a fan JSON file."""
    from .corpus import fixture_path

    path = Path(source)
    if not path.exists():
        candidate = fixture_path(f"fans/{source}.json")
        if candidate.exists():
            path = candidate
        else:
            raise InputError(f"no fan file or fixture named {source!r}")
    try:
        return fan.load_fan(path, budget)
    except (json.JSONDecodeError, fan.FanError, OSError) as exc:
        raise InputError(f"malformed fan file {path}: {exc}") from None


@_timed
def fan_check(source: str, budget: int | None = -1, expect_projective: bool | None = None) -> CheckReport:
    f = load_fan_input(source, budget)
    details = {"rank": f.rank, "rays": len(f.rays), "cones": len(f.max_cones), "validated": f.validated,
               "simplicial": fan.is_simplicial(f)}
    complete = fan.is_complete(f, require_validated=False) if f.validated else None
    details["complete"] = complete
    cert = None
    if complete:
        try:
            cert = fan.certify_projective(f)
        except LpError as exc:
            return CheckReport("fan-check", {"fan": source}, "error", {**details, "message": str(exc)})
        details["projective"] = cert is not None
        if cert is not None:
            details["support_function"] = list(cert.values)
    inputs = {"fan": source}
    if expect_projective is not None:
        inputs["expect_projective"] = expect_projective
        if details.get("projective") != expect_projective:
            return CheckReport("fan-check", inputs, "fail",
                               _fail_details(details, {"projective": details.get("projective")}))
    return CheckReport("fan-check", inputs, "pass", details)


@_timed
def compatible_sections(n: int, simulate: bool = False) -> CheckReport:
    try:
        check = boundary.compatible_system_check(n)
    except boundary.BoundaryError as exc:
        raise InputError(str(exc)) from None
    details = {"check": check.to_json()}
    inputs = {"n": n, "simulate": simulate}
    if not check.passed:
        return CheckReport("compatible-sections", inputs, "fail", _fail_details(details, check.counterexample))
    if simulate:
        sim = boundary.transform_sequence(n)
        sim_json = sim.to_json()
        sim_json.pop("trace")
        details["simulation"] = sim_json
        if not sim.passed:
            return CheckReport("compatible-sections", inputs, "fail", _fail_details(details, sim.counterexample))
    return CheckReport("compatible-sections", inputs, "pass", details)


@_timed
def manifest_check() -> CheckReport:
    from .corpus import verify_manifest

    result = verify_manifest()
    details = result.to_json()
    if not result.passed:
        return CheckReport("manifest", {}, "fail", _fail_details(details, result.problems))
    return CheckReport("manifest", {}, "pass", details)


# ---------------------------------------------------------------------------
# the full suite


SUITE = [
    ("determinant_table", {"m_from": 4, "m_to": 40}),
    ("monomial_table", {"m_from": 4, "m_to": 40}),
    ("negative_curve_table", {"m_from": 4, "m_to": 40}),
    *[("gnw_verify", {"m": m}) for m in (4, 5, 7, 8, 10, 11)],
    *[("gnw_verify", {"m": m, "p": p}) for m, p in ((4, 3), (4, 5), (4, 7), (5, 3), (5, 5))],
    ("witness_search", {"k_max": 6, "triple": (1, 2, 3), "curve": "y - x^2", "cls": (2, 1)}),
    ("witness_search", {"k_max": 2, "m": 4}),
    *[("lm_quotient", {"sizes": s}) for s in ((3, 3, 3), (3, 4, 6), (27, 74, 31))],
    *[("lm_chain", {"n": n}) for n in (6, 7)],
    *[("fan_check", {"source": name, "expect_projective": True}) for name in ("p2", "p1xp1", "hirzebruch2")],
    ("fan_check", {"source": "nonprojective", "expect_projective": False}),
    *[("compatible_sections", {"n": n, "simulate": True}) for n in range(5, 10)],
    ("manifest_check", {}),
]


def _run_named(item):
    name, kwargs = item
    return globals()[name](**kwargs)


def run_suite(items=None, jobs: int = 1) -> list[CheckReport]:
    """Run checks in order; with ``jobs > 1`` they run in worker processes and
    are merged back in order."""
    items = SUITE if items is None else items
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_named, items))
    return [_run_named(item) for item in items]
