"""Verification suites shared by the CLI, the driver script and the tests.

A suite is an ordered list of tasks; each task builds its inputs, runs the
checks and returns a Report. `run_tasks` fans tasks out over a thread pool
and assembles the RunReport in task order, so reports are identical for any
thread count apart from wall times.
"""
from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from mfk import blowup, catalog, mcm
from mfk.config import Caps, settings
from mfk.errors import MfkError
from mfk.poly import Poly, reduce_mod_usq
from mfk.polymat import determinant, quadratic_form_matrix
from mfk.reports import Report, RunRecord, RunReport, failing_detail, merge_runs
from mfk.witnesses import FLOP_CHARTS

logger = logging.getLogger(__name__)

VERIFY_SUITES = (
    "factorizations",
    "universal",
    "witnesses",
    "charts",
    "decompositions",
    "specializations",
    "invariants",
)
ALL_SUITES = VERIFY_SUITES + ("oracle",)

D_CHECK_RANKS = range(4, 9)
A_CHART_RANKS = range(2, 9)
A_ORACLE_RANKS = range(2, 5)
ROOT_TRIALS = 100
ROOT_SEED = 20240607

# determinant checks on deformed D entries stop at this rank
DET_MAX_D_RANK = 5


@dataclass(frozen=True)
class Task:
    id: str
    run: Callable[[], Report]
    tags: Dict[str, object] = field(default_factory=dict)

    def matches(self, filters: Dict[str, object]) -> bool:
        for key, want in filters.items():
            if want is None:
                continue
            if key not in self.tags or str(self.tags[key]) != str(want):
                return False
        return True


def run_tasks(suite: str, tasks: Sequence[Task], threads: int = 1) -> RunReport:
    def one(task: Task) -> RunRecord:
        start = time.perf_counter()
        try:
            report = task.run()
            passed = report.passed
            detail = None if passed else failing_detail(report)
        except MfkError as e:
            # named errors are verification failures; anything else escapes
            passed, detail = False, e.to_dict()
        elapsed = (time.perf_counter() - start) * 1000.0
        if not passed:
            logger.warning("%s/%s failed: %s", suite, task.id, detail)
        return RunRecord(id=task.id, passed=passed, detail=detail, wall_ms=round(elapsed, 3))

    threads = max(1, int(threads or 1))
    if threads == 1 or len(tasks) <= 1:
        records = [one(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(one, tasks))
    logger.info("suite %s: %d tasks", suite, len(records))
    return RunReport(suite=suite, records=records)


# -----------------------------
# factorizations
# -----------------------------
def _factorization_report(m: mcm.MatFac, with_det: bool) -> Report:
    report = mcm.verify_factorization(m)
    if with_det and m.size <= 4:
        report.extend(mcm.det_check(m))
    if m.split is not None:
        report.extend(mcm.split_square_check(m))
        report.add("involution", bool(mcm.involution_check(m)))
    return report


def _entry_task(entry: catalog.FamilySpec) -> Task:
    def run() -> Report:
        m = catalog.build(entry)
        with_det = not (entry.series == "D" and entry.deformed and (entry.n or 0) > DET_MAX_D_RANK)
        report = _factorization_report(m, with_det)
        if entry.series in ("E6", "E7", "E8") and m.split is None:
            report.extend(_factorization_report(catalog.e_stabilized(entry.series, entry.label), False), "stable:")
        return report

    tags = {"series": entry.series, "n": entry.n, "k": entry.k, "label": entry.label}
    return Task(entry.key, run, tags)


def _a_variant_task(n: int, k: int) -> Task:
    def run() -> Report:
        report = Report(id=f"A:n={n}:k={k}:variants")
        report.extend(mcm.verify_factorization(catalog.an_family(n, k, deformed=False)), "undeformed:")
        split = catalog.an_family(n, k, split=True)
        report.extend(_factorization_report(split, True), "split:")
        g, h = split.data["g"], split.data["h"]
        report.add("z^(n-1) coefficient of g*h vanishes", (g * h).coefficients_in("z").get(n - 1, Poly.zero()).is_zero())
        return report

    return Task(f"A:n={n}:k={k}:variants", run, {"series": "A", "n": n, "k": k})


def factorization_tasks() -> List[Task]:
    tasks = [_entry_task(entry) for entry in catalog.manifest()]
    tasks += [_a_variant_task(n, k) for n in catalog.A_RANKS for k in range(1, n)]
    return tasks


# -----------------------------
# universal flop
# -----------------------------
def _universal_report() -> Report:
    m = catalog.universal_flop2()
    report = Report(id="UF2")
    report.extend(mcm.split_square_check(m))
    disc = determinant(quadratic_form_matrix(m.f, ("x", "y", "z", "t")))
    u, v, w = Poly.var("u"), Poly.var("v"), Poly.var("w")
    report.add("discriminant=(uw-v^2)^2", disc == (u * w - v * v) ** 2, {"det": disc.to_text()})
    report.add("trace(Xi)=0", m.split.xi.trace().is_zero())
    ones = {name: 1 for name in catalog.FLOP_VARS}
    report.add("W(1,...,1)=5", m.f.evaluate(ones) == 5)
    report.add("involution", bool(mcm.involution_check(m)))
    return report


def _coordinate_change_report() -> Report:
    report = Report(id="UF2<->D4:k=2")
    xi_flop = catalog.flop_xi()
    xi_d4 = catalog.dn_family(4, 2).split.xi
    to_flop, to_d4 = catalog.d4_from_flop(), catalog.flop_from_d4()
    report.add("D4 Xi under d4_from_flop = flop Xi", xi_d4.substitute(to_flop) == xi_flop)
    report.add("flop Xi under flop_from_d4 = D4 Xi", xi_flop.substitute(to_d4) == xi_d4)
    report.add(
        "round trip D4 -> flop -> D4",
        all(p.subs(to_d4) == Poly.var(name) for name, p in to_flop.items()),
    )
    report.add(
        "round trip flop -> D4 -> flop",
        all(p.subs(to_flop) == Poly.var(name) for name, p in to_d4.items()),
    )
    return report


def universal_tasks() -> List[Task]:
    uf2 = {"series": "UF2"}
    return [
        Task("UF2:identities", _universal_report, uf2),
        Task("UF2:coordinate-change", _coordinate_change_report, uf2),
        Task("UF2:chart1:conic-fiber", lambda: blowup.conic_fiber_check(settings.gb_caps()), uf2),
        Task("UF2:chart1:matrix-form", blowup.matrix_form_check, uf2),
        Task("UF2:chart1:line-fiber", blowup.line_fiber_relation, uf2),
    ]


# -----------------------------
# witnesses / generation
# -----------------------------
def _witness_report(which: int, n: Optional[int] = None, k: Optional[int] = None) -> Report:
    ws = FLOP_CHARTS[which]
    if n is None:
        m, bindings, label = catalog.universal_flop2(), None, "UF2"
    else:
        m, bindings, label = catalog.dn_family(n, k), catalog.dn_invariants(n, k).mainsub(), f"D:n={n}:k={k}"
    c = blowup.make_chart(m, "psi", ws.pivots, ws.prefix, ws.gen_prefix)
    report = Report(id=f"{label}:chart{which}:witnesses")
    report.extend(blowup.verify_witnesses(c, ws.instantiate(bindings)), "witness:")
    c = blowup.extend_chart(c, ws.instantiate(bindings))
    report.extend(blowup.verify_generation(c, ws.expressions(bindings)), "generation:")
    return report


def witness_tasks() -> List[Task]:
    tasks = [Task(f"UF2:chart{w}", lambda w=w: _witness_report(w), {"series": "UF2"}) for w in (1, 2)]
    for n in D_CHECK_RANKS:
        for k in range(1, n + 1):
            for w in (1, 2):
                tasks.append(
                    Task(
                        f"D:n={n}:k={k}:chart{w}",
                        lambda n=n, k=k, w=w: _witness_report(w, n, k),
                        {"series": "D", "n": n, "k": k},
                    )
                )
    return tasks


# -----------------------------
# charts
# -----------------------------
def _a_chart_report(n: int, k: int) -> Report:
    report = Report(id=f"A:n={n}:k={k}:charts")
    m = catalog.an_family(n, k)
    for which, want_m in ((1, k - 1), (2, n - k - 1)):
        c, cls = blowup.an_pipeline(n, k, which)
        report.extend(blowup.membership_check(c))
        closed = blowup.an_closed_form(m, which)
        ok = len(c.residual) == 1 and c.residual[0] == closed
        report.add(f"chart{which} residual", ok, {"residual": [p.to_text() for p in c.residual]})
        report.add(f"chart{which} class A({want_m})", cls.kind == "A" and cls.m == want_m, cls.to_dict())
    return report


def _d_chart_report(n: int, k: int) -> Report:
    report = Report(id=f"D:n={n}:k={k}:charts")
    inv = catalog.dn_invariants(n, k)

    c1, cls1 = blowup.dn_pipeline(n, k, 1)
    a12, a22, Z = Poly.var("alpha12"), Poly.var("alpha22"), Poly.var("Z")
    lam3 = a22 * a22 + a12 * a12 * Z - 2 * inv.eta * a12 - inv.h
    ok = len(c1.residual) == 1 and c1.residual[0] == lam3
    report.add("chart1 residual lam3", ok, {"residual": [p.to_text() for p in c1.residual]})
    want_tag = blowup.DEGENERATE_D.get(n - k)
    report.add(
        f"chart1 class D({n - k})",
        cls1.kind == "D" and cls1.m == n - k and cls1.tag == want_tag,
        cls1.to_dict(),
    )

    c2, _ = blowup.dn_pipeline(n, k, 2)
    report.add("chart2 residual {mu12, mu3}", len(c2.residual) == 2, {"residual": [p.to_text() for p in c2.residual]})
    report.extend(blowup.tyurina(c2, inv.G), "chart2 ")
    return report


def _flop_chart_report() -> Report:
    report = Report(id="UF2:charts")
    m = catalog.universal_flop2()
    for which in (1, 2):
        c, cls = blowup.flop_pipeline(which)
        report.add(f"chart{which} smooth", cls.kind == "smooth" and not c.residual, cls.to_dict())
        report.extend(blowup.symmetry_check(m, c.pivots))
    for c in blowup.enumerate_charts(m):
        report.extend(blowup.membership_check(c))
    return report


def _pair_chart_report(m: mcm.MatFac) -> Report:
    report = Report(id=f"{m.name}:charts")
    for which in (1, 2):
        c, cls = blowup.pair_pipeline(m, which)
        report.extend(blowup.membership_check(c))
        report.add(f"chart{which} smooth", cls.kind == "smooth", cls.to_dict())
    return report


def chart_tasks() -> List[Task]:
    tasks = [Task("UF2:charts", _flop_chart_report, {"series": "UF2"})]
    tasks.append(Task("UF1:charts", lambda: _pair_chart_report(catalog.universal_flop1()), {"series": "UF1"}))
    for n in catalog.REID_RANKS:
        tasks.append(Task(f"REID:n={n}:charts", lambda n=n: _pair_chart_report(catalog.reid_pagoda(n)), {"series": "REID", "n": n}))
    for n in A_CHART_RANKS:
        for k in range(1, n):
            tasks.append(Task(f"A:n={n}:k={k}:charts", lambda n=n, k=k: _a_chart_report(n, k), {"series": "A", "n": n, "k": k}))
    for n in catalog.D_RANKS:
        for k in range(1, n + 1):
            tasks.append(Task(f"D:n={n}:k={k}:charts", lambda n=n, k=k: _d_chart_report(n, k), {"series": "D", "n": n, "k": k}))
    return tasks


# -----------------------------
# decompositions
# -----------------------------
def _decomposition_report(n: int, k: int) -> Report:
    m = catalog.dn_family(n, k)
    fx = catalog.dn_decomposition(n, k)
    report = Report(id=f"D:n={n}:k={k}:{fx.case}")
    parts = mcm.decompose(m, fx.b_left, fx.b_right, fx.partition)
    for idx, (part, want) in enumerate(zip(parts, fx.expected_xi)):
        if want is None:
            continue
        got = part.split.xi if part.split is not None else None
        report.add(f"block{idx} xi", got == want, {"got": got.to_text() if got is not None else None, "want": want.to_text()})
    if fx.case == "k=1":
        one = Poly.const(1)
        report.add("block0 = (f, 1)", parts[0].phi[0, 0] == m.f and parts[0].psi[0, 0] == one)
        report.add("block1 = (1, f)", parts[1].phi[0, 0] == one and parts[1].psi[0, 0] == m.f)
    report.extend(mcm.direct_sum_check(m, parts, fx.b_left, fx.b_right, fx.partition))
    return report


def decomposition_tasks() -> List[Task]:
    tasks = []
    for n in D_CHECK_RANKS:
        for k in (1, n - 1, n):
            tasks.append(
                Task(f"D:n={n}:k={k}:decompose", lambda n=n, k=k: _decomposition_report(n, k), {"series": "D", "n": n, "k": k})
            )
    return tasks


# -----------------------------
# specializations
# -----------------------------
def _specialization_report(n: int, k: int) -> Report:
    report = Report(id=f"D:n={n}:k={k}:specialization")
    xi = catalog.dn_family(n, k).split.xi.substitute(catalog.dn_origin(n, k))
    gsv = catalog.dn_gsv(n, k)
    diffs = [
        {"row": i, "col": j, "got": xi[i, j].to_text(), "want": gsv[i, j].to_text()}
        for i in range(4)
        for j in range(4)
        if xi[i, j] != gsv[i, j]
    ]
    report.add("origin = GSV", not diffs, {"discrepancies": diffs} if diffs else None)
    return report


def specialization_tasks() -> List[Task]:
    return [
        Task(f"D:n={n}:k={k}:gsv", lambda n=n, k=k: _specialization_report(n, k), {"series": "D", "n": n, "k": k})
        for n in D_CHECK_RANKS
        for k in range(1, n)
    ]


# -----------------------------
# invariants
# -----------------------------
def invariant_identities(inv: catalog.DnInvariantData) -> Report:
    report = Report(id=f"D:n={inv.n}:k={inv.k}:invariants")
    U, Z = Poly.var("U"), Poly.var("Z")
    P, Q = inv.P, inv.Q
    lhs = Z * inv.F + inv.gamma * inv.gamma
    rhs = (Z * inv.h + inv.eta * inv.eta) * (Q * Q + Z * P * P)
    report.add("Z*F + gamma^2 = (Z*h + eta^2)(Q^2 + Z*P^2)", lhs == rhs)
    minus_u2 = {"Z": -(U * U)}
    report.add("f(U) = Q(-U^2) + U*P(-U^2)", inv.f == Q.subs(minus_u2) + U * P.subs(minus_u2))
    report.add("Q = Z*S + Q(0)", Q == Z * inv.S + inv.q0)
    report.add("gamma = eta*Q(0)", inv.gamma == inv.eta * inv.q0)
    quot, rem = reduce_mod_usq(inv.f, "U", "Z")
    report.add("U*P + Q = (U^2 + Z)*G + f", U * P + Q == (U * U + Z) * inv.G + inv.f)
    report.add("f = (U^2 + Z)*quotient + remainder", inv.f == (U * U + Z) * quot + rem and rem.degree("U") <= 1)
    return report


def root_identities(inv: catalog.DnInvariantData) -> Report:
    report = invariant_identities(inv)
    Z = Poly.var("Z")
    t = inv.roots
    prod = Poly.const(1)
    for tj in t:
        prod = prod * (Z + tj * tj)
    report.add("prod(Z + t_j^2) = Z*F + gamma^2", prod == Z * inv.F + inv.gamma * inv.gamma)
    sign = -1 if inv.n % 2 else 1
    expected_gamma = sign
    for tj in t:
        expected_gamma *= tj
    report.add("gamma = (-1)^n t_1...t_n", inv.gamma == expected_gamma)
    squares = [tj * tj for tj in t]
    bad = [
        i
        for i in range(1, inv.n + 1)
        if prod.coefficient({"Z": inv.n - i}) != catalog.elementary_symmetric(squares, i)
    ]
    report.add("delta_2i = sigma_i(t^2)", not bad, {"failing_i": bad} if bad else None)
    return report


def _worked_instance_report() -> Report:
    inv = catalog.dn_invariants_from_roots(4, 2, (1, 2, 3, 4))
    report = root_identities(inv)
    Z, U = Poly.var("Z"), Poly.var("U")
    report.add("f = U^2 - 3U + 2", inv.f == U * U - 3 * U + 2)
    report.add("P = -3, Q = -Z + 2, S = -1", inv.P == -3 and inv.Q == 2 - Z and inv.S == -1)
    report.add("eta = 12", inv.eta == 12)
    report.add("gamma = 24", inv.gamma == 24)
    report.add("h = Z + 25", inv.h == Z + 25)
    report.add("G = -1", inv.G == -1)
    report.add("Q^2 + Z*P^2 = (Z + 1)(Z + 4)", inv.Q * inv.Q + Z * inv.P * inv.P == (Z + 1) * (Z + 4))
    return report


def _random_roots_report(trials: int = ROOT_TRIALS, seed: int = ROOT_SEED) -> Report:
    rng = random.Random(seed)
    report = Report(id=f"D:random-roots:{trials}")
    for trial in range(trials):
        n = rng.randint(2, 8)
        k = rng.randint(1, n)
        roots = [rng.randint(-9, 9) for _ in range(n)]
        sub = root_identities(catalog.dn_invariants_from_roots(n, k, roots))
        report.add(f"trial{trial}:n={n}:k={k}:t={roots}", sub.passed, None if sub.passed else failing_detail(sub))
    return report


def invariant_tasks() -> List[Task]:
    tasks = [
        Task("D:worked-instance", _worked_instance_report, {"series": "D", "n": 4, "k": 2}),
        Task("D:random-roots", _random_roots_report, {"series": "D"}),
    ]
    for n in catalog.D_RANKS:
        for k in range(1, n + 1):
            tasks.append(
                Task(
                    f"D:n={n}:k={k}:invariants",
                    lambda n=n, k=k: invariant_identities(catalog.dn_invariants(n, k)),
                    {"series": "D", "n": n, "k": k},
                )
            )
    return tasks


# -----------------------------
# Gröbner oracle
# -----------------------------
def oracle_tasks(caps: Optional[Caps] = None) -> List[Task]:
    caps = caps or settings.gb_caps()
    tasks = []
    for n in A_ORACLE_RANKS:
        for k in range(1, n):
            for w in (1, 2):
                tasks.append(
                    Task(
                        f"A:n={n}:k={k}:chart{w}",
                        lambda n=n, k=k, w=w: blowup.an_oracle(n, k, w, caps),
                        {"series": "A", "n": n, "k": k},
                    )
                )
    tasks.append(Task("D:n=4:k=2:chart1", lambda: blowup.d4_oracle(caps), {"series": "D", "n": 4, "k": 2}))
    return tasks


# -----------------------------
# Dispatch
# -----------------------------
SUITE_BUILDERS: Dict[str, Callable[[], List[Task]]] = {
    "factorizations": factorization_tasks,
    "universal": universal_tasks,
    "witnesses": witness_tasks,
    "charts": chart_tasks,
    "decompositions": decomposition_tasks,
    "specializations": specialization_tasks,
    "invariants": invariant_tasks,
}


def tasks_for(suite: str, caps: Optional[Caps] = None, **filters) -> List[Task]:
    if suite == "oracle":
        tasks = oracle_tasks(caps)
    else:
        tasks = SUITE_BUILDERS[suite]()
    return [t for t in tasks if t.matches(filters)]


def run_suite(suite: str, threads: Optional[int] = None, caps: Optional[Caps] = None, **filters) -> RunReport:
    threads = settings.threads if threads is None else threads
    names = VERIFY_SUITES if suite == "all" else (suite,)
    reports = [run_tasks(name, tasks_for(name, caps, **filters), threads) for name in names]
    if len(reports) == 1:
        return reports[0]
    return merge_runs(suite, reports)
