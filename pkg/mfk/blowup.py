"""Grassmann blowup charts of a matrix factorization.

A chart is fixed by a set of pivot rows: the kernel basis K has the identity
in those rows and unknowns elsewhere, and the chart ideal is generated by the
entries of Ψ·K. The pipeline is

    make_chart -> extend_chart (witnessed localization generators)
               -> generated_chart (raw generators re-expressed)
               -> eliminate -> classify_residual

with `tyurina` finishing the second D chart.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from mfk.catalog import an_family, dn_family, dn_invariants, universal_flop2
from mfk.config import Caps
from mfk.errors import (
    BadPivot,
    GenerationFailed,
    IdentityFailed,
    NotLinearUnit,
    WitnessFailed,
)
from mfk.ideal import Ideal, contains, elimination_ideal, same_principal
from mfk.mcm import MatFac
from mfk.poly import GaussRat, Poly, derivative, divides
from mfk.polymat import PolyMatrix, matmul
from mfk.reports import Report
from mfk.witnesses import D_PLANS, FLOP_CHARTS, ConcreteWitness, WitnessSet

logger = logging.getLogger(__name__)

# default (unknown prefix, generator prefix) per pivot pattern
CHART_NAMES = {
    (0, 1): ("alpha", "lam"),
    (0, 2): ("beta", "mu"),
    (1,): ("alpha", "lam"),
    (0,): ("beta", "mu"),
}

DEGENERATE_D = {0: "D0=smooth", 1: "D1=smooth", 2: "D2=A1+A1", 3: "D3=A3"}


@dataclass(frozen=True)
class Chart:
    source: MatFac
    side: str
    pivots: Tuple[int, ...]
    unknowns: Tuple[str, ...]
    kernel: PolyMatrix
    raw: Dict[str, Poly]
    extended: Dict[str, Poly] = field(default_factory=dict)
    certificates: Dict[str, str] = field(default_factory=dict)
    # current generator values after eliminations, raw and extended together
    current: Dict[str, Poly] = field(default_factory=dict)
    # names of the generators known to generate the chart ideal
    basis: Tuple[str, ...] = ()
    elim_log: Tuple[Tuple[str, str], ...] = ()
    bindings: Dict[str, Poly] = field(default_factory=dict)
    residual: Tuple[Poly, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def gens(self) -> Dict[str, Poly]:
        return dict(self.current)

    def coordinates(self) -> Tuple[str, ...]:
        eliminated = {v for v, _ in self.elim_log}
        base = self.source.coordinates() + self.unknowns
        return tuple(v for v in base if v not in eliminated)

    def to_dict(self, classification: Optional["ResidualClass"] = None) -> dict:
        out = {
            "source": self.source.name,
            "side": self.side,
            "pivots": list(self.pivots),
            "unknowns": list(self.unknowns),
            "raw": {k: p.to_text() for k, p in self.raw.items()},
            "extended": {k: p.to_text() for k, p in self.extended.items()},
            "certificates": dict(self.certificates),
            "elim_log": [list(e) for e in self.elim_log],
            "residual": [p.to_text() for p in self.residual],
        }
        if classification is not None:
            out["classification"] = classification.to_dict()
        return out


@dataclass(frozen=True)
class ResidualClass:
    kind: str
    m: Optional[int] = None
    witness: Dict[str, str] = field(default_factory=dict)
    tag: Optional[str] = None

    @property
    def label(self) -> str:
        if self.kind in ("A", "D"):
            return f"{self.kind}({self.m})"
        return self.kind

    def to_dict(self) -> dict:
        return {"kind": self.kind, "m": self.m, "label": self.label, "witness": dict(self.witness), "tag": self.tag}


# -----------------------------
# Charts
# -----------------------------
def chart_rank(m: MatFac) -> int:
    return m.size // 2


def make_chart(
    m: MatFac,
    side: str = "psi",
    pivots: Sequence[int] = (),
    prefix: Optional[str] = None,
    gen_prefix: Optional[str] = None,
) -> Chart:
    if side not in ("phi", "psi"):
        raise BadPivot(f"side must be phi or psi, got {side!r}", {"side": side})
    if m.size % 2:
        raise BadPivot(f"{m.name} has odd size {m.size}; no chart rank", {"size": m.size})
    rank = chart_rank(m)
    piv = tuple(sorted(int(p) for p in pivots))
    if len(piv) != rank or len(set(piv)) != rank or any(not 0 <= p < m.size for p in piv):
        raise BadPivot(
            f"need {rank} distinct pivot rows in 0..{m.size - 1}, got {list(pivots)}",
            {"pivots": list(pivots), "rank": rank, "size": m.size},
        )
    default = CHART_NAMES.get(piv, ("alpha", "lam"))
    prefix = prefix or default[0]
    gen_prefix = gen_prefix or default[1]

    unknowns: List[str] = []
    rows: List[List[Poly]] = []
    free = 0
    for i in range(m.size):
        if i in piv:
            rows.append([Poly.const(1 if piv.index(i) == j else 0) for j in range(rank)])
        else:
            free += 1
            names = [f"{prefix}{free}{j + 1}" for j in range(rank)]
            unknowns += names
            rows.append([Poly.var(n) for n in names])
    kernel = PolyMatrix.from_rows(rows)

    mat = m.psi if side == "psi" else m.phi
    prod = matmul(mat, kernel)
    raw = {f"{gen_prefix}{i + 1}{j + 1}": prod[i, j] for i in range(prod.rows) for j in range(prod.cols)}
    basis = tuple(n for n, p in raw.items() if not p.is_zero())
    logger.debug("chart %s/%s pivots %s: %d raw generators", m.name, side, piv, len(raw))
    return Chart(
        source=m,
        side=side,
        pivots=piv,
        unknowns=tuple(unknowns),
        kernel=kernel,
        raw=raw,
        current=dict(raw),
        basis=basis,
    )


def enumerate_charts(m: MatFac, side: str = "psi") -> List[Chart]:
    rank = chart_rank(m)
    return [make_chart(m, side, piv) for piv in itertools.combinations(range(m.size), rank)]


def membership_check(c: Chart) -> Report:
    """f·K = (other factor)·(M·K): f lies in the raw chart ideal with explicit cofactors."""
    report = Report(id=f"{c.source.name}:{c.side}:{list(c.pivots)}:f-membership")
    other = c.source.phi if c.side == "psi" else c.source.psi
    mat = c.source.psi if c.side == "psi" else c.source.phi
    lhs = matmul(other, matmul(mat, c.kernel))
    rhs = c.kernel.scale(c.source.f)
    report.add("f*K", lhs == rhs)
    return report


# -----------------------------
# Extended generators
# -----------------------------
def _combination(c: Chart, cofactors: Mapping[str, Poly]) -> Poly:
    acc = Poly.zero()
    for name, cof in cofactors.items():
        gen = c.raw.get(name, c.extended.get(name))
        if gen is None:
            raise GenerationFailed(f"unknown generator {name!r}", {"generator": name})
        acc = acc + cof * gen
    return acc


def verify_witnesses(c: Chart, witnesses: Sequence[ConcreteWitness]) -> Report:
    report = Report(id=f"{c.source.name}:{list(c.pivots)}:witnesses")
    for w in witnesses:
        lhs = _combination(c, w.cofactors)
        rhs = w.divisor * w.quotient
        if lhs != rhs:
            raise WitnessFailed(
                f"witness for {w.name} does not hold",
                {"witness": w.name, "difference": (lhs - rhs).to_text()},
            )
        report.add(w.name, True, {"divisor": w.divisor.to_text(), "quotient": w.quotient.to_text()})
    return report


def extend_chart(c: Chart, witnesses: Sequence[ConcreteWitness]) -> Chart:
    verify_witnesses(c, witnesses)
    extended = dict(c.extended)
    certs = dict(c.certificates)
    current = dict(c.current)
    for w in witnesses:
        extended[w.name] = w.quotient
        certs[w.name] = f"witness: ({w.divisor.to_text()})*{w.name}"
        current[w.name] = w.quotient.subs(c.bindings) if c.bindings else w.quotient
    return replace(c, extended=extended, certificates=certs, current=current, basis=c.basis + tuple(w.name for w in witnesses))


def admit_by_membership(c: Chart, name: str, candidate: Poly, divisor: Poly, caps: Optional[Caps] = None) -> Chart:
    """Admit `candidate` when divisor·candidate is in the raw chart ideal (Gröbner certificate)."""
    ideal = Ideal.of([p for p in c.raw.values() if not p.is_zero()])
    if not contains(ideal, divisor * candidate, caps):
        raise WitnessFailed(
            f"{name}: divisor*candidate is not in the chart ideal",
            {"generator": name, "candidate": candidate.to_text(), "divisor": divisor.to_text()},
        )
    extended = dict(c.extended)
    extended[name] = candidate
    certs = dict(c.certificates)
    certs[name] = f"membership: ({divisor.to_text()})*{name}"
    current = dict(c.current)
    current[name] = candidate
    return replace(c, extended=extended, certificates=certs, current=current, basis=c.basis + (name,))


def verify_generation(c: Chart, expressions: Mapping[str, Mapping[str, Poly]]) -> Report:
    report = Report(id=f"{c.source.name}:{list(c.pivots)}:generation")
    for target, combo in expressions.items():
        if target not in c.raw:
            raise GenerationFailed(f"unknown raw generator {target!r}", {"generator": target})
        got = _combination(c, combo)
        if got != c.raw[target]:
            raise GenerationFailed(
                f"{target} is not the stated combination",
                {"generator": target, "difference": (c.raw[target] - got).to_text()},
            )
        report.add(target, True)
    return report


def generated_chart(c: Chart, expressions: Mapping[str, Mapping[str, Poly]]) -> Chart:
    """After verify_generation the named right-hand sides generate the ideal."""
    verify_generation(c, expressions)
    basis: List[str] = []
    for combo in expressions.values():
        for name in combo:
            if name not in basis:
                basis.append(name)
    covered = set(expressions) | set(basis)
    basis += [n for n in c.basis if n not in covered]
    return replace(c, basis=tuple(basis))


# -----------------------------
# Elimination
# -----------------------------
def _solve_linear(gen: Poly, var: str) -> Poly:
    if gen.degree(var) != 1:
        raise NotLinearUnit(f"generator is not linear in {var}", {"var": var, "generator": gen.to_text()})
    parts = gen.coefficients_in(var)
    coef = parts[1]
    if not coef.is_constant():
        raise NotLinearUnit(
            f"coefficient of {var} is not a constant",
            {"var": var, "coefficient": coef.to_text(), "generator": gen.to_text()},
        )
    rest = parts.get(0, Poly.zero())
    return (-rest).scale(coef.as_constant().inverse()).subs({var: 0})


def prune_relations(relations: Sequence[Poly]) -> Tuple[Poly, ...]:
    """Drop zeros and any relation that is a polynomial multiple of one kept earlier."""
    ordered = sorted((p for p in relations if not p.is_zero()), key=lambda p: (p.total_degree(), len(p.terms)))
    kept: List[Poly] = []
    for p in ordered:
        if any(divides(k, p) is not None for k in kept):
            continue
        kept.append(p)
    return tuple(kept)


def eliminate(c: Chart, plan: Sequence[Tuple[str, str]]) -> Chart:
    current = dict(c.current)
    bindings = dict(c.bindings)
    basis = list(c.basis)
    elim_log = list(c.elim_log)
    for var, gen_name in plan:
        gen = current.get(gen_name)
        if gen is None:
            raise NotLinearUnit(f"no generator named {gen_name!r}", {"generator": gen_name})
        value = _solve_linear(gen, var)
        step = {var: value}
        current = {k: p.subs(step) for k, p in current.items()}
        bindings = {k: p.subs(step) for k, p in bindings.items()}
        bindings[var] = value
        if gen_name in basis:
            basis.remove(gen_name)
        elim_log.append((var, gen_name))
        logger.debug("eliminated %s via %s", var, gen_name)
    residual = prune_relations([current[n] for n in basis])
    return replace(
        c,
        current=current,
        bindings=bindings,
        basis=tuple(basis),
        elim_log=tuple(elim_log),
        residual=residual,
    )


# -----------------------------
# Residual classification
# -----------------------------
def _constant(p: Poly) -> Optional[GaussRat]:
    return p.as_constant() if p.is_constant() and not p.is_zero() else None


def _match_a(r: Poly, coords: Sequence[str]) -> Optional[ResidualClass]:
    """r = κ·(a·b ± c^{m+1} + lower terms in c and the parameters)."""
    present = [v for v in coords if r.involves([v])]
    for a, b in itertools.combinations(present, 2):
        kappa = r.coefficient({a: 1, b: 1})
        if kappa.is_zero():
            continue
        rest = r - Poly.var(a) * Poly.var(b) * Poly.const(kappa)
        if rest.involves([a, b]):
            continue
        others = [v for v in present if v not in (a, b) and rest.involves([v])]
        if len(others) != 1:
            continue
        c = others[0]
        d = rest.degree(c)
        lead = _constant(rest.coefficients_in(c)[d])
        if lead is None or d < 1:
            continue
        unit = lead / kappa
        if unit not in (GaussRat(1), GaussRat(-1)):
            continue
        m = d - 1
        return ResidualClass(
            "A",
            m,
            {"x": a, "y": b, "z": c, "sign": "+" if unit == GaussRat(1) else "-", "relation": r.to_text()},
            "A0=smooth" if m == 0 else None,
        )
    return None


def _match_d(r: Poly, coords: Sequence[str]) -> Optional[ResidualClass]:
    """r = ±(a² + b²·c + 2γ·b − F(c)) with γ free of coordinates and F monic."""
    present = [v for v in coords if r.involves([v])]
    for sign in (1, -1):
        s = r.scale(sign)
        for a, b, c in itertools.permutations(present, 3):
            if s.coefficient({a: 2}) != 1 or s.coefficient({b: 2, c: 1}) != 1:
                continue
            rest = s - Poly.var(a) ** 2 - Poly.var(b) ** 2 * Poly.var(c)
            if rest.involves([a]) or rest.degree(b) > 1:
                continue
            parts = rest.coefficients_in(b)
            two_gamma = parts.get(1, Poly.zero()).subs({b: 0})
            minus_f = parts.get(0, Poly.zero())
            if two_gamma.involves(coords):
                continue
            if minus_f.involves([v for v in coords if v != c]):
                continue
            F = -minus_f
            if F.is_zero():
                m = 0
            else:
                deg = F.degree(c)
                if F.coefficients_in(c)[deg] != 1:
                    continue
                m = deg + 1
            gamma = two_gamma.scale(GaussRat(1) / 2)
            return ResidualClass(
                "D",
                m,
                {
                    "X": a,
                    "Y": b,
                    "Z": c,
                    "gamma": gamma.to_text(),
                    "F": F.to_text(),
                    "sign": "+" if sign == 1 else "-",
                    "relation": r.to_text(),
                },
                DEGENERATE_D.get(m),
            )
    return None


def _rank(rows: List[List[GaussRat]]) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(mat)) if not mat[i][col].is_zero()), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = mat[rank][col].inverse()
        for i in range(len(mat)):
            if i != rank and not mat[i][col].is_zero():
                factor = mat[i][col] * inv
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def smooth_at_origin(relations: Sequence[Poly], coords: Sequence[str]) -> bool:
    """Jacobian criterion at the origin of all coordinates and parameters."""
    if not relations:
        return True
    jac = [[derivative(r, v).constant_term() for v in coords] for r in relations]
    return _rank(jac) == len(relations)


def classify_relations(relations: Sequence[Poly], coords: Sequence[str]) -> ResidualClass:
    if not relations:
        return ResidualClass("smooth", witness={"reason": "no relations"})
    if len(relations) == 1:
        r = relations[0]
        found = _match_a(r, coords) or _match_d(r, coords)
        if found is not None:
            return found
    if smooth_at_origin(relations, coords):
        return ResidualClass("smooth", witness={"reason": "jacobian rank at origin"})
    return ResidualClass("unknown", witness={"relations": "; ".join(p.to_text() for p in relations)})


def classify_residual(c: Chart) -> ResidualClass:
    return classify_relations(c.residual, c.coordinates())


# -----------------------------
# The worked charts
# -----------------------------
def flop_chart(which: int, m: Optional[MatFac] = None, bindings: Optional[Mapping[str, Poly]] = None) -> Chart:
    """Chart 1 or 2 of the universal flop (or of a pullback of it), extended and generated."""
    ws: WitnessSet = FLOP_CHARTS[which]
    m = m or universal_flop2()
    c = make_chart(m, "psi", ws.pivots, ws.prefix, ws.gen_prefix)
    c = extend_chart(c, ws.instantiate(bindings))
    return generated_chart(c, ws.expressions(bindings))


def flop_pipeline(which: int) -> Tuple[Chart, ResidualClass]:
    c = eliminate(flop_chart(which), FLOP_CHARTS[which].plan)
    return c, classify_residual(c)


def dn_chart(n: int, k: int, which: int) -> Chart:
    inv = dn_invariants(n, k)
    return flop_chart(which, dn_family(n, k), inv.mainsub())


def dn_pipeline(n: int, k: int, which: int) -> Tuple[Chart, ResidualClass]:
    c = eliminate(dn_chart(n, k, which), D_PLANS[which])
    return c, classify_residual(c)


def pair_pipeline(m: MatFac, which: int) -> Tuple[Chart, ResidualClass]:
    """Both charts of a 2x2 pair [[x, g], [h, y]]: eliminate x (chart 1) or y (chart 2)."""
    c = make_chart(m, "psi", (1,) if which == 1 else (0,))
    step = ("x", "lam21") if which == 1 else ("y", "mu11")
    c = eliminate(c, [step])
    return c, classify_residual(c)


def an_pipeline(n: int, k: int, which: int, deformed: bool = True) -> Tuple[Chart, ResidualClass]:
    return pair_pipeline(an_family(n, k, deformed), which)


def an_closed_form(m: MatFac, which: int) -> Poly:
    """yα − g (chart 1) or xβ − h (chart 2)."""
    g, h = m.data["g"], m.data["h"]
    if which == 1:
        return Poly.var("y") * Poly.var("alpha11") - g
    return Poly.var("x") * Poly.var("beta11") - h


# -----------------------------
# Tyurina combination on the second D chart
# -----------------------------
def tyurina_relation(c: Chart, G: Poly) -> Tuple[Poly, Poly, Poly]:
    """(μ₁₂ − G(Z, β₂₂)·μ₃, Ỹ·β₁₂ + f(β₂₂), Ỹ) on the eliminated second D chart."""
    data = c.source.data
    missing = [k for k in ("eta", "S", "h", "f") if k not in data]
    if missing or c.pivots != (0, 2) or "mu12" not in c.current or "mu3" not in c.current:
        raise IdentityFailed(
            "the Tyurina combination needs the second chart of a D family",
            {"source": c.source.name, "pivots": list(c.pivots), "missing": missing},
        )
    beta12, beta22 = Poly.var("beta12"), Poly.var("beta22")
    eta, S, h = data["eta"], data["S"], data["h"]
    g_b = G.subs({"U": beta22})
    combined = c.current["mu12"] - g_b * c.current["mu3"]
    y_tilde = Poly.var("Y") - eta * S + g_b * h * beta12 + 2 * eta * g_b
    expected = y_tilde * beta12 + data["f"].subs({"U": beta22})
    return combined, expected, y_tilde


def tyurina(c: Chart, G: Poly) -> Report:
    report = Report(id=f"{c.source.name}:tyurina")
    combined, expected, y_tilde = tyurina_relation(c, G)
    if combined != expected:
        raise IdentityFailed(
            "mu12 - G*mu3 is not Ytilde*beta12 + f(beta22)",
            {"G": G.to_text(), "difference": (combined - expected).to_text()},
        )
    report.add("mu12-G*mu3=Ytilde*beta12+f(beta22)", True, {"Ytilde": y_tilde.to_text()})

    # Y -> Ytilde is a unit-linear change of coordinates
    Y = Poly.var("Y")
    normal = combined.subs({"Y": Poly.var("Ytilde") - (y_tilde - Y)})
    coords = ("Ytilde", "beta12", "beta22", "Z")
    cls = classify_relations([normal], coords)
    k = c.source.data["f"].degree("U")
    report.add("classification", cls.kind == "A" and cls.m == k - 1, cls.to_dict())
    report.add("mu3 smooth", smooth_at_origin([c.current["mu3"]], coords))
    return report


# -----------------------------
# Universal flop chart 1: fibres over the origin
# -----------------------------
def _flop_conic() -> Poly:
    a12, a22 = Poly.var("alpha12"), Poly.var("alpha22")
    u, v, w = Poly.var("u"), Poly.var("v"), Poly.var("w")
    return w + a22 * a22 + a12 * a12 * u - 2 * a12 * v


def conic_fiber_check(caps: Optional[Caps] = None) -> Report:
    """Over x = y = z = t = 0 the extended chart-1 ideal is the conic w + α₂₂² + α₁₂²u − 2α₁₂v."""
    report = Report(id="UF2:chart1:conic-fiber")
    c = flop_chart(1)
    origin = {"x": 0, "y": 0, "z": 0, "t": 0}
    special = {name: p.subs(origin) for name, p in c.current.items()}
    report.add("raw generators vanish", all(special[n].is_zero() for n in c.raw))
    ideal = Ideal.of([p for p in special.values() if not p.is_zero()])
    keep = [v for v in ideal.vars if v not in ("alpha11", "alpha21")]
    elim = elimination_ideal(ideal, keep, caps)
    conic = _flop_conic()
    ok = len(elim.gens) == 1 and same_principal(elim.gens[0], conic)
    report.add(
        "principal conic",
        ok,
        {"generators": [g.to_text() for g in elim.gens], "conic": conic.to_text()},
    )
    return report


def matrix_form_check() -> Report:
    """(y, x + vt) = [[−z, −t], [ut, −z]]·(α₁₂, α₂₂) modulo (λ₁₂, λ₂₂)."""
    report = Report(id="UF2:chart1:matrix-form")
    c = flop_chart(1)
    x, y, z, t, u, v = (Poly.var(n) for n in ("x", "y", "z", "t", "u", "v"))
    mat = PolyMatrix.from_rows([[-z, -t], [u * t, -z]])
    vec = PolyMatrix.from_rows([[Poly.var("alpha12")], [Poly.var("alpha22")]])
    rhs = matmul(mat, vec)
    lhs = PolyMatrix.from_rows([[y], [x + v * t]])
    diff = lhs - rhs
    ok = diff[0, 0] == c.raw["lam12"] and diff[1, 0] == c.raw["lam22"]
    report.add("difference is (lam12, lam22)", ok)
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    report.add("det = z^2 + u*t^2", det == z * z + u * t * t, {"det": det.to_text()})
    return report


def line_fiber_relation() -> Report:
    """Shifting (α₁₂, α₂₂) by c·(t, −z) moves the solved w by 2c(α₂₂z − α₁₂ut + tv) − c²(z² + ut²)."""
    report = Report(id="UF2:chart1:line-fiber")
    a12, a22, cc = Poly.var("alpha12"), Poly.var("alpha22"), Poly.var("c")
    z, t, u, v = (Poly.var(n) for n in ("z", "t", "u", "v"))
    w_solved = -a22 * a22 - a12 * a12 * u + 2 * a12 * v
    shifted = w_solved.subs({"alpha12": a12 + cc * t, "alpha22": a22 - cc * z})
    expected = 2 * cc * (a22 * z - a12 * u * t + t * v) - cc * cc * (z * z + u * t * t)
    got = shifted - w_solved
    report.add("shift identity", got == expected, None if got == expected else {"difference": (got - expected).to_text()})
    return report


def symmetry_check(m: MatFac, pivots: Sequence[int]) -> Report:
    """The Φ chart is the x → −x image of the Ψ chart, up to sign."""
    report = Report(id=f"{m.name}:{list(pivots)}:symmetry")
    if m.split is None:
        report.add("phi chart = -(psi chart)(x -> -x)", False, {"skipped": "no split form"})
        return report
    x = m.split.x_name
    psi_c = make_chart(m, "psi", pivots)
    phi_c = make_chart(m, "phi", pivots)
    flip = {x: -Poly.var(x)}
    bad = [n for n in psi_c.raw if phi_c.raw[n] != -psi_c.raw[n].subs(flip)]
    report.add("phi chart = -(psi chart)(x -> -x)", not bad, {"differing": bad} if bad else None)
    return report


# -----------------------------
# Gröbner oracle
# -----------------------------
def oracle_check(
    label: str,
    gens: Sequence[Poly],
    eliminate_vars: Sequence[str],
    expected: Poly,
    caps: Optional[Caps] = None,
) -> Report:
    """elimination_ideal of `gens` is the principal ideal of `expected`."""
    report = Report(id=f"oracle:{label}")
    ideal = Ideal.of([g for g in gens if not g.is_zero()])
    keep = [v for v in ideal.vars if v not in set(eliminate_vars)]
    elim = elimination_ideal(ideal, keep, caps)
    ok = len(elim.gens) == 1 and same_principal(elim.gens[0], expected)
    report.add(
        "elimination = closed form",
        ok,
        {"generators": [g.to_text() for g in elim.gens], "expected": expected.to_text()},
    )
    return report


def an_oracle(n: int, k: int, which: int, caps: Optional[Caps] = None) -> Report:
    """Raw chart generators; an A chart needs no localization generators."""
    m = an_family(n, k)
    c = make_chart(m, "psi", (1,) if which == 1 else (0,))
    var = "x" if which == 1 else "y"
    return oracle_check(f"A:n={n}:k={k}:chart{which}", list(c.raw.values()), [var], an_closed_form(m, which), caps)


def d4_oracle(caps: Optional[Caps] = None, raw: bool = False) -> Report:
    """D4, k=2, chart 1: eliminating α₁₁, α₂₁, X, Y leaves λ₃.

    Runs on the chart basis (raw generators plus the witnessed localization
    generators). The raw ideal alone still contains the exceptional component
    of the blowup, so its elimination ideal is not (λ₃); `raw=True` runs it
    anyway and is expected to fail.
    """
    c = dn_chart(4, 2, 1)
    inv = dn_invariants(4, 2)
    a12, a22, Z = Poly.var("alpha12"), Poly.var("alpha22"), Poly.var("Z")
    expected = a22 * a22 + a12 * a12 * Z - 2 * inv.eta * a12 - inv.h
    if raw:
        gens, label = list(c.raw.values()), "D:n=4:k=2:chart1:raw"
    else:
        gens, label = [c.current[n] for n in c.basis], "D:n=4:k=2:chart1"
    return oracle_check(label, gens, ["alpha11", "alpha21", "X", "Y"], expected, caps)
