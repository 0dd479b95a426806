"""Runnable checks of the enumerative identities, one report per (identity, type).

Every check computes its two sides along separate code paths: poset and
factorization counts on one side, closed formulas in Coxeter numbers and
degrees on the other.  Parabolic chain numbers that feed a recursion are
always brute-forced, never taken from the formula being tested.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

from coxlab.arrangement import (
    build_lattice,
    flat_orbit_data,
    os_exponents,
    parabolic_of_flat,
)
from coxlab.errors import CoxlabError, DegreeExtractionError, PropertyViolation
from coxlab.exactlinalg import IntPolynomial, mat_charpoly, mat_det
from coxlab.group import (
    bipartite_conjugation_orbits,
    component_degrees,
    coxeter_element,
    enumerate_group,
    subgroup_order,
)
from coxlab.hurwitz import (
    c_conjugation_orbits,
    canonical_renaming,
    enumerate_factorizations,
    export_dual_presentation,
    hurwitz_orbits,
)
from coxlab.laplacian import (
    laplacian_from_roots,
    rrt_laplacian,
    verify_cox_number_recursion,
    verify_parabolic_charpoly,
    w_laplacian,
)
from coxlab.ncposet import (
    build_nc,
    count_maximal_chains,
    kreweras_line_numbers,
    multinomial,
    product_poset,
    zeta_value,
)
from coxlab.rootsys import (
    RootSystem,
    _graph_components,
    build_root_system,
    classify_coxeter_matrix,
    coxeter_matrix_of,
    decompose_components,
    parse_type,
    simple_subsystem,
)

__all__ = [
    "CHECKS",
    "DEFAULT_SUITE_TYPES",
    "IDENTITIES",
    "IdentityReport",
    "TypeContext",
    "applicable",
    "brute_chain_number",
    "brute_zeta",
    "canonical_type",
    "check_bipartite_orbits",
    "check_chain_number",
    "check_chapoton",
    "check_degrees",
    "check_deligne_reading",
    "check_fomin_reading",
    "check_fr_simples",
    "check_hurwitz_transitivity",
    "check_kreweras",
    "check_laplacian_suite",
    "check_nu",
    "check_simples_to_flats",
    "check_t1_slice",
    "get_context",
    "run_check",
    "run_suite",
]

DEFAULT_SUITE_TYPES = (
    ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "H3"] + [f"I2({m})" for m in range(3, 13)]
)


@dataclass
class IdentityReport:
    identity: str
    group_type: str
    lhs: Any
    rhs: Any
    passed: bool
    millis: float | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "identity": self.identity,
            "type": self.group_type,
            "lhs": _stringify(self.lhs),
            "rhs": _stringify(self.rhs),
            "pass": self.passed,
            "millis": round(self.millis, 3) if timings and self.millis is not None else None,
            "notes": list(self.notes),
        }


def _stringify(x):
    # big integers travel as decimal strings
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else str(x)
    if isinstance(x, (list, tuple)):
        return [_stringify(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _stringify(v) for k, v in x.items()}
    return x


def canonical_type(t) -> str:
    if isinstance(t, str):
        return "x".join(ct.name for ct in parse_type(t))
    if isinstance(t, (tuple, list)):
        return "x".join(ct.name for ct in t)
    return t.name


class TypeContext:
    """Lazily built objects for one type, shared by all checks on it."""

    def __init__(self, name: str, allow_large: bool = False):
        self.name = name
        self.allow_large = allow_large
        self.ctypes = parse_type(name)
        self.rs: RootSystem = build_root_system(self.ctypes)

    @property
    def n(self) -> int:
        return self.rs.rank

    @cached_property
    def gt(self):
        return enumerate_group(self.rs, allow_large=self.allow_large)

    @cached_property
    def lattice(self):
        return build_lattice(self.rs)

    @cached_property
    def c(self):
        return coxeter_element(self.rs, "bipartite")

    @cached_property
    def nc(self):
        return build_nc(self.gt, self.c)

    @cached_property
    def factorizations(self):
        return enumerate_factorizations(self.gt, self.c)

    @cached_property
    def h_multiset(self) -> list[int]:
        return decompose_components(self.rs).multiset

    @cached_property
    def degree_data(self) -> list[tuple[int, list[int]]]:
        return component_degrees(self.rs)

    @property
    def h(self) -> int:
        h = self.rs.coxeter_number
        if not self.rs.irreducible or h.denominator != 1:
            raise ValueError(f"{self.name} is not irreducible")
        return int(h)

    @property
    def degrees(self) -> list[int]:
        return sorted(d for _, ds in self.degree_data for d in ds)


_CONTEXTS: dict[tuple[str, bool], TypeContext] = {}


def get_context(t, allow_large: bool = False) -> TypeContext:
    name = canonical_type(t)
    key = (name, allow_large)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = TypeContext(name, allow_large)
    return _CONTEXTS[key]


# brute-force chain numbers of parabolic subgroups ---------------------------

_NC_CACHE: dict[Any, Any] = {}


def _sub_matrix(cm, nodes):
    return tuple(tuple(cm[a][b] for b in nodes) for a in nodes)


def _component_posets(cm, allow_large: bool = True):
    """NC posets of the irreducible pieces of ``cm`` (rank-1 pieces included)."""
    n = len(cm)
    out = []
    for nodes in _graph_components(n, lambda u, v: cm[u][v] >= 3):
        sub = _sub_matrix(cm, nodes)
        name = classify_coxeter_matrix(sub)
        key = name if "?" not in name else sub
        if key not in _NC_CACHE:
            rs = RootSystem(sub)
            gt = enumerate_group(rs, allow_large=allow_large)
            _NC_CACHE[key] = build_nc(gt, coxeter_element(rs))
        out.append(_NC_CACHE[key])
    return out


def brute_chain_number(cm, allow_large: bool = True) -> int:
    """Maximal chains of NC(W) for the Coxeter matrix ``cm``, counted on the group.

    Irreducible pieces are enumerated separately and combined by the shuffle
    law; rank 0 and rank 1 are the base case 1.
    """
    posets = _component_posets(cm, allow_large)
    total = 1
    for p in posets:
        if p.height > 1:
            total *= count_maximal_chains(p)
    return total * multinomial([p.height for p in posets])


def brute_zeta(cm, k: int, allow_large: bool = True) -> int:
    """``Z(NC(W), k)`` for ``cm``; multichains in a product are tuples of multichains."""
    return math.prod(zeta_value(p, k) for p in _component_posets(cm, allow_large))


def _flat_chain_number(rs: RootSystem, hyperplanes) -> int:
    simples = simple_subsystem(rs, hyperplanes)
    return brute_chain_number(coxeter_matrix_of(rs, simples))


# the checks ----------------------------------------------------------------


def _report(identity: str, ctx: TypeContext, lhs, rhs, notes=None, passed=None) -> IdentityReport:
    ok = (lhs == rhs) if passed is None else passed
    return IdentityReport(identity, ctx.name, lhs, rhs, bool(ok), None, list(notes or []))


def check_chain_number(t, allow_large: bool = False) -> IdentityReport:
    """Brute MC(W) against ``n! prod h_i / |W|``."""
    ctx = get_context(t, allow_large)
    notes = []
    if len(ctx.ctypes) == 1:
        lhs = count_maximal_chains(ctx.nc, verify=True)
        notes.append("lhs: chain DP on NC(W), matched by DFS factorization count")
    else:
        poset = None
        for ct in ctx.ctypes:
            sub = get_context(ct.name, allow_large)
            poset = sub.nc if poset is None else product_poset(poset, sub.nc)
        lhs = count_maximal_chains(poset)
        direct = count_maximal_chains(ctx.nc)
        notes.append(f"lhs: product of component NC posets; NC on the full group gives {direct}")
        if direct != lhs:
            return _report("chain-number", ctx, lhs, direct, notes, passed=False)
    value = Fraction(math.factorial(ctx.n) * math.prod(ctx.h_multiset), ctx.gt.order)
    notes.append(f"rhs: n! * prod{tuple(ctx.h_multiset)} / |W| with |W| = {ctx.gt.order} enumerated")
    rhs = value.numerator if value.denominator == 1 else value
    return _report("chain-number", ctx, lhs, rhs, notes)


def check_deligne_reading(t, allow_large: bool = False) -> IdentityReport:
    """``MC(W) = (h/2) sum_s MC(W_{S-s})`` with every MC brute-forced."""
    ctx = get_context(t, allow_large)
    h = ctx.h
    lhs = count_maximal_chains(ctx.nc)
    cm = ctx.rs.coxeter_matrix
    parts = []
    for s in range(ctx.n):
        rest = [i for i in range(ctx.n) if i != s]
        parts.append(brute_chain_number(_sub_matrix(cm, rest)))
    rhs = Fraction(h * sum(parts), 2)
    notes = [f"parabolic MC over simples: {parts}"]
    if ctx.n == 1:
        notes.append("rank 1 base case")
    return _report("deligne-reading", ctx, lhs, rhs.numerator if rhs.denominator == 1 else rhs, notes)


def _lines(ctx: TypeContext):
    return ctx.lattice.of_dim(1)


def check_simples_to_flats(t, which: str = "trivial", allow_large: bool = False) -> IdentityReport:
    """The simple-reflection recursion rewritten over lines.

    ``trivial``: ``n |W| = 2 sum_L |W_L|``.
    ``chain-number``: ``|W| MC(W) = h sum_L |W_L| MC(W_L)``.
    """
    ctx = get_context(t, allow_large)
    rs = ctx.rs
    orders = [subgroup_order(rs, L.hyperplanes) for L in _lines(ctx)]
    notes = [f"{len(orders)} lines"]
    if which == "trivial":
        lhs = ctx.n * ctx.gt.order
        rhs = 2 * sum(orders)
    elif which == "chain-number":
        mcs = [_flat_chain_number(rs, L.hyperplanes) for L in _lines(ctx)]
        lhs = ctx.gt.order * count_maximal_chains(ctx.nc)
        rhs = ctx.h * sum(o * m for o, m in zip(orders, mcs))
        notes.append("MC(W_L) brute-forced per line")
    else:
        raise ValueError(f"unknown form {which!r}")
    return _report(f"simples-to-flats:{which}", ctx, lhs, rhs, notes)


def check_t1_slice(t, allow_large: bool = False) -> IdentityReport:
    """Coefficient of t in ``prod (t + h_i)`` against the sum over lines."""
    ctx = get_context(t, allow_large)
    hs = ctx.h_multiset
    lhs = sum(math.prod(hs[:i] + hs[i + 1 :]) for i in range(len(hs)))
    rhs = sum(decompose_components(ctx.rs, parabolic_of_flat(L)).product() for L in _lines(ctx))
    notes = ["rank 1 base case"] if ctx.n == 1 else []
    return _report("t1-slice", ctx, lhs, rhs, notes)


def _chapoton_formula(degs: list[int], h: int, k: int) -> Fraction:
    out = Fraction(1)
    for d in degs:
        out *= Fraction(k * h + d, d)
    return out


def check_chapoton(t, kmax: int = 4, allow_large: bool = False) -> IdentityReport:
    """``Z(NC(W), k)`` against ``prod (kh + d_i) / d_i`` for k = 1..kmax."""
    ctx = get_context(t, allow_large)
    h = ctx.h
    lhs = [zeta_value(ctx.nc, k) for k in range(1, kmax + 1)]
    rhs = [_chapoton_formula(ctx.degrees, h, k) for k in range(1, kmax + 1)]
    rhs = [v.numerator if v.denominator == 1 else v for v in rhs]
    notes = [f"degrees {ctx.degrees}", f"k = 1..{kmax}"]
    return _report("chapoton", ctx, lhs, rhs, notes)


def check_fr_simples(t, kmax: int | None = None, allow_large: bool = False) -> IdentityReport:
    """``2n Z(W, k) = (kh + 2) sum_s Z(W_{S-s}, k)`` with every zeta value brute-forced."""
    ctx = get_context(t, allow_large)
    h, n = ctx.h, ctx.n
    kmax = n + 1 if kmax is None else kmax
    cm = ctx.rs.coxeter_matrix
    subs = [_sub_matrix(cm, [i for i in range(n) if i != s]) for s in range(n)]
    lhs = [2 * n * zeta_value(ctx.nc, k) for k in range(1, kmax + 1)]
    rhs = [(k * h + 2) * sum(brute_zeta(sub, k) for sub in subs) for k in range(1, kmax + 1)]
    return _report("fr-simples", ctx, lhs, rhs, [f"k = 1..{kmax}", "parabolic zeta values brute-forced"])


def _parabolic_factor(rs: RootSystem, hyperplanes, k: int) -> int:
    """``prod (k h_i(W_X) + d_i(W_X))``, each degree paired with its component's h."""
    out = 1
    for h, degs in component_degrees(rs, hyperplanes):
        for d in degs:
            out *= k * h + d
    return out


def check_fomin_reading(t, form: str = "fr1", kmax: int | None = None, r: int | None = None,
                        allow_large: bool = False) -> IdentityReport:
    """The two Fomin-Reading style recursions, evaluated at k = 0..kmax.

    ``fr1``: ``prod(kh + d_i) = ((kh + 2)/n) sum_L prod(k h_i(W_L) + d_i(W_L))``.
    ``fr2``: for flats X of dimension r,
    ``C(n, r) prod(kh + d_i) = sum_X prod(kh + b_i^X + 1) prod(k h_i(W_X) + d_i(W_X))``
    with ``b^X`` the integer roots of the characteristic polynomial of the
    restriction to X.  ``r=None`` runs every r.
    """
    ctx = get_context(t, allow_large)
    h, n, rs, lat = ctx.h, ctx.n, ctx.rs, ctx.lattice
    kmax = n + 1 if kmax is None else kmax
    ks = range(kmax + 1)
    whole = [math.prod(k * h + d for d in ctx.degrees) for k in ks]
    notes = [f"k = 0..{kmax}"]
    if form == "fr1":
        lines = _lines(ctx)
        rhs = []
        for k in ks:
            v = Fraction(k * h + 2, n) * sum(_parabolic_factor(rs, L.hyperplanes, k) for L in lines)
            rhs.append(v.numerator if v.denominator == 1 else v)
        return _report("fr1", ctx, whole, rhs, notes)
    if form != "fr2":
        raise ValueError(f"unknown form {form!r}")
    rs_list = range(n + 1) if r is None else [r]
    lhs, rhs = [], []
    for rr in rs_list:
        flats = lat.of_dim(rr)
        exps = [os_exponents(lat, X) for X in flats]
        lhs.append([math.comb(n, rr) * w for w in whole])
        row = []
        for k in ks:
            total = 0
            for X, b in zip(flats, exps):
                total += math.prod(k * h + e + 1 for e in b) * _parabolic_factor(rs, X.hyperplanes, k)
            row.append(total)
        rhs.append(row)
    notes.append(f"r = dim X in {list(rs_list)}")
    return _report("fr2", ctx, lhs, rhs, notes)


def check_laplacian_suite(t, allow_large: bool = False) -> IdentityReport:
    """Scalar Laplacian, determinant, parabolic charpoly and Coxeter-number recursions."""
    ctx = get_context(t, allow_large)
    rs, lat = ctx.rs, ctx.lattice
    notes = []
    ok = True
    hs = ctx.h_multiset
    target = IntPolynomial([1])
    for h in hs:
        target = target * IntPolynomial([h, 1])
    lap = w_laplacian(rs, verify=not rs.abstract)
    if rs.abstract:
        notes.append("analytic closed form m*I_2 (no coordinates)")
        diag_ok = lap.matrix.rows == tuple(
            tuple(int(ctx.h) if i == j else 0 for j in range(2)) for i in range(2)
        )
    else:
        h_of = {}
        for comp in decompose_components(rs).components:
            for root in comp.roots:
                h_of[root] = comp.coxeter_number
        diag_ok = all(
            lap.matrix[i, j] == (h_of[i] if i == j else 0) for i in range(rs.rank) for j in range(rs.rank)
        )
        if laplacian_from_roots(rs) != lap.matrix or rrt_laplacian(rs) != lap.matrix:
            ok = False
            notes.append("FAIL: the sum-over-roots form disagrees with the reflection sum")
        else:
            notes.append("reflection sum, sum over roots and R R^T G agree")
    notes.append(f"L_W = h I per component: {'pass' if diag_ok else 'FAIL'}")
    ok &= diag_ok
    det = mat_det(lap.matrix)
    det_ok = det == math.prod(hs)
    notes.append(f"det L_W = {det} vs prod h_i = {math.prod(hs)}: {'pass' if det_ok else 'FAIL'}")
    ok &= det_ok
    for check in (verify_parabolic_charpoly, verify_cox_number_recursion):
        rep = check(rs, lat, strict=False)
        notes.append(f"{rep.name}: {rep.lhs} vs {rep.rhs}: {'pass' if rep.passed else 'FAIL'}")
        ok &= rep.passed and rep.lhs == target
    lhs = list(mat_charpoly(lap.matrix).coefficients)
    rhs = list(target.coefficients)
    return _report("laplacian-suite", ctx, lhs, rhs, notes, passed=ok and lhs == rhs)


def check_kreweras(t, allow_large: bool = False) -> IdentityReport:
    """Per line orbit: NC elements fixing a line of the orbit vs ``h / [N(L):W_L]``."""
    ctx = get_context(t, allow_large)
    try:
        recs = kreweras_line_numbers(ctx.nc, ctx.lattice, ctx.gt)
    except PropertyViolation as exc:
        return _report("kreweras", ctx, None, None, [str(exc)], passed=False)
    lhs = [r.count for r in recs]
    rhs = [r.formula for r in recs]
    return _report("kreweras", ctx, lhs, rhs, [f"{len(recs)} line orbits"])


def check_bipartite_orbits(t, allow_large: bool = False) -> IdentityReport:
    """Orbit of a reflection under bipartite c: size h/2 with one simple, or h with two."""
    ctx = get_context(t, allow_large)
    orbits = bipartite_conjugation_orbits(ctx.rs, strict=False)
    lhs = [size for size, _, _ in orbits]
    rhs = [Fraction(h * k, 2) for _, k, h in orbits]
    rhs = [v.numerator if v.denominator == 1 else v for v in rhs]
    ok = lhs == rhs and all(k in (1, 2) for _, k, _ in orbits)
    notes = [f"(size, simples, h): {orbits}"]
    return _report("bipartite-orbits", ctx, lhs, rhs, notes, passed=ok)


def check_hurwitz_transitivity(t, allow_large: bool = False) -> IdentityReport:
    """One Hurwitz orbit on reduced factorizations; c-conjugation orbits of size h/2 or h."""
    ctx = get_context(t, allow_large)
    rs = ctx.rs
    fs = ctx.factorizations
    orbits = hurwitz_orbits(rs, fs)
    notes = [f"{len(fs)} factorizations, orbit sizes {[len(o) for o in orbits]}"]
    ok = True
    if rs.irreducible:
        try:
            co = c_conjugation_orbits(rs, fs, ctx.c)
            notes.append(f"c-conjugation: {len(co.orbits)} orbits of size {sorted(set(co.sizes))}, "
                         f"c^(h/2) = -1: {co.central}")
        except PropertyViolation as exc:
            ok = False
            notes.append(f"FAIL: {exc}")
    if ctx.name == "A2":
        words = canonical_renaming(export_dual_presentation(rs, fs))
        notes.append(f"dual presentation relations: {' = '.join(words)}")
    return _report("hurwitz-transitivity", ctx, len(orbits), 1, notes, passed=ok and len(orbits) == 1)


def check_nu(t, allow_large: bool = False) -> IdentityReport:
    """``c(A^X) |W_X| / |N(X)|`` against a count of standard parabolics, per flat orbit."""
    ctx = get_context(t, allow_large)
    recs = flat_orbit_data(ctx.lattice, ctx.gt, strict=False)
    seen = {}
    for rec in recs:
        seen.setdefault(rec.orbit, rec)
    lhs = [seen[k].nu for k in sorted(seen)]
    rhs = [seen[k].nu_direct for k in sorted(seen)]
    return _report("nu", ctx, lhs, rhs, [f"{len(recs)} flats in {len(seen)} orbits"])


def check_degrees(t, allow_large: bool = False) -> IdentityReport:
    """Degrees from Coxeter-element eigenvalues, validated exactly."""
    ctx = get_context(t, allow_large)
    notes = []
    try:
        data = ctx.degree_data
    except DegreeExtractionError as exc:
        return _report("degrees", ctx, None, None, [f"FAIL: {exc}"], passed=False)
    for h, degs in data:
        notes.append(f"h = {h}: degrees {degs}")
    degs = ctx.degrees
    lhs = [math.prod(degs), sum(d - 1 for d in degs)]
    rhs = [ctx.gt.order, ctx.rs.N]
    notes.append("rhs: enumerated |W| and reflection count")
    return _report("degrees", ctx, lhs, rhs, notes)


CHECKS: dict[str, Callable[..., IdentityReport]] = {
    "chain-number": check_chain_number,
    "deligne-reading": check_deligne_reading,
    "simples-to-flats": lambda t, **kw: _combine(
        "simples-to-flats", [check_simples_to_flats(t, w, **kw) for w in ("trivial", "chain-number")]
    ),
    "t1-slice": check_t1_slice,
    "chapoton": check_chapoton,
    "fr1": lambda t, **kw: check_fomin_reading(t, "fr1", **kw),
    "fr2": lambda t, **kw: check_fomin_reading(t, "fr2", **kw),
    "fr-simples": check_fr_simples,
    "laplacian-suite": check_laplacian_suite,
    "kreweras": check_kreweras,
    "bipartite-orbits": check_bipartite_orbits,
    "hurwitz-transitivity": check_hurwitz_transitivity,
    "nu": check_nu,
    "degrees": check_degrees,
}
IDENTITIES = tuple(CHECKS)
NEEDS_IRREDUCIBLE = {
    "deligne-reading", "simples-to-flats", "chapoton", "fr1", "fr2", "fr-simples", "kreweras",
}


def _combine(name: str, reports: list[IdentityReport]) -> IdentityReport:
    r0 = reports[0]
    notes = [f"{r.identity}: {'pass' if r.passed else 'FAIL'}" for r in reports]
    for r in reports:
        notes.extend(r.notes)
    return IdentityReport(
        name, r0.group_type, [r.lhs for r in reports], [r.rhs for r in reports],
        all(r.passed for r in reports), None, notes,
    )


def applicable(identity: str, t) -> bool:
    ctx = get_context(t)
    return identity not in NEEDS_IRREDUCIBLE or ctx.rs.irreducible


def run_check(identity: str, t, timings: bool = False, **kwargs) -> IdentityReport:
    """Run one check; internal property violations become failed reports."""
    if identity not in CHECKS:
        raise KeyError(identity)
    name = canonical_type(t)
    start = time.perf_counter()
    try:
        rep = CHECKS[identity](name, **kwargs)
    except (PropertyViolation, DegreeExtractionError) as exc:
        rep = IdentityReport(identity, name, None, None, False, None, [f"FAIL: {exc}"])
    if timings:
        rep.millis = (time.perf_counter() - start) * 1000.0
    return rep


def _run_job(job):
    identity, t, timings, allow_large = job
    try:
        return run_check(identity, t, timings=timings, allow_large=allow_large)
    except CoxlabError as exc:
        return IdentityReport(identity, t, None, None, False, None, [f"FAIL: {exc}"])


def run_suite(types=None, identities=None, jobs: int = 1, timings: bool = False,
              allow_large: bool = False) -> list[IdentityReport]:
    """Every applicable (identity, type) pair, sorted by (identity, type)."""
    types = [canonical_type(t) for t in (types or DEFAULT_SUITE_TYPES)]
    identities = list(identities or IDENTITIES)
    jobs_list = [
        (ident, t, timings, allow_large)
        for ident in sorted(identities)
        for t in sorted(types)
        if applicable(ident, t)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_job, jobs_list))
    else:
        reports = [_run_job(j) for j in jobs_list]
    return sorted(reports, key=lambda r: (r.identity, r.group_type))
