"""Constructors for every family: A (deformed and split), D (over the partial
resolution space, and the GSV specializations), the E tables, the
universal flops of length 1 and 2, Reid's pagoda, and the invariant maps
feeding the D family."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from mfk.config import settings
from mfk.e_tables import E_SERIES
from mfk.errors import BadIndex, NotAFactorization, UnknownLabel
from mfk.mcm import MatFac
from mfk.poly import Poly, exact_divide, parse, reduce_mod_usq
from mfk.polymat import PolyMatrix, matmul

logger = logging.getLogger(__name__)

FLOP_VARS = ("x", "y", "z", "t", "u", "v", "w")
D_VARS = ("X", "Y", "Z")
E_VARS = ("X", "Y", "Z")

SERIES = ("A", "D", "E6", "E7", "E8", "UF1", "UF2", "REID")

# Manifest ranges
A_RANKS = range(2, 13)
D_RANKS = range(2, 9)
REID_RANKS = range(1, 5)


class FamilySpec(BaseModel):
    series: str
    n: Optional[int] = None
    k: Optional[int] = None
    deformed: bool = True
    label: Optional[str] = None
    ell: int = 1
    tags: List[str] = []

    @property
    def key(self) -> str:
        parts = [self.series]
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.label is not None:
            parts.append(f"label={self.label}")
        if self.series in ("A", "D") and not self.deformed:
            parts.append("gsv" if self.series == "D" else "undeformed")
        return ":".join(parts)


def _check_rank(n: int) -> None:
    if n > settings.max_rank:
        raise BadIndex(
            f"n={n} exceeds the configured bound MFK_MAX_RANK={settings.max_rank}",
            {"n": n, "max_rank": settings.max_rank},
        )


def _poly_sum(terms: Sequence[Poly]) -> Poly:
    acc = Poly.zero()
    for t in terms:
        acc = acc + t
    return acc


# -----------------------------
# A series
# -----------------------------
def an_coefficients(n: int, k: int, deformed: bool = True) -> Tuple[Poly, Poly, Tuple[str, ...]]:
    """(g_k, h_{n-k}, parameter names) with b_{n-k-1} = -a_{k-1}."""
    z = Poly.var("z")
    if not deformed:
        return z ** k, z ** (n - k), ()
    a = [Poly.var(f"a{i}") for i in range(k)]
    b = [Poly.var(f"b{i}") for i in range(n - k - 1)]
    g = z ** k + _poly_sum([a[i] * z ** i for i in range(k)])
    h = z ** (n - k) + _poly_sum([b[i] * z ** i for i in range(n - k - 1)]) - a[k - 1] * z ** (n - k - 1)
    names = tuple(f"a{i}" for i in range(k)) + tuple(f"b{i}" for i in range(n - k - 1))
    return g, h, names


def an_family(n: int, k: int, deformed: bool = True, split: bool = False) -> MatFac:
    if n < 2 or not 1 <= k <= n - 1:
        raise BadIndex(f"A family needs n >= 2 and 1 <= k <= n-1, got n={n}, k={k}", {"n": n, "k": k})
    _check_rank(n)
    g, h, params = an_coefficients(n, k, deformed)
    name = f"A:n={n}:k={k}" + ("" if deformed else ":undeformed") + (":split" if split else "")
    data = {"g": g, "h": h}

    if split:
        names = ("u", "v", "z") + params
        u, v = Poly.var("u"), Poly.var("v")
        xi = PolyMatrix.from_rows([[v, h], [g, -v]], names)
        f = u * u - v * v - g * h
        return MatFac.from_xi(xi, "u", f.with_vars(names), name=name, params=params, data=data)

    names = ("x", "y", "z") + params
    x, y = Poly.var("x"), Poly.var("y")
    phi = PolyMatrix.from_rows([[x, g], [h, y]], names)
    psi = PolyMatrix.from_rows([[y, -g], [-h, x]], names)
    f = (x * y - g * h).with_vars(names)
    return MatFac(phi=phi, psi=psi, f=f, name=name, params=params, data=data)


def reid_pagoda(n: int) -> MatFac:
    """xy = z² − t^{2n}, pulled back from A1 by g = z + t^n, h = z − t^n."""
    if n < 1:
        raise BadIndex(f"Reid's pagoda needs n >= 1, got n={n}", {"n": n})
    _check_rank(n)
    names = ("x", "y", "z", "t")
    x, y, z, t = (Poly.var(v, names) for v in names)
    g, h = z + t ** n, z - t ** n
    phi = PolyMatrix.from_rows([[x, g], [h, y]], names)
    psi = PolyMatrix.from_rows([[y, -g], [-h, x]], names)
    return MatFac(phi=phi, psi=psi, f=x * y - g * h, name=f"REID:n={n}", data={"g": g, "h": h})


# -----------------------------
# Universal flops
# -----------------------------
def flop_quadric() -> Poly:
    x, y, z, t, u, v, w = (Poly.var(n, FLOP_VARS) for n in FLOP_VARS)
    return x * x + u * y * y + 2 * v * y * z + w * z * z + (u * w - v * v) * t * t


def flop_xi() -> PolyMatrix:
    x, y, z, t, u, v, w = (Poly.var(n, FLOP_VARS) for n in FLOP_VARS)
    rows = [
        [-v * t, y, z, t],
        [-u * y - 2 * v * z, v * t, -u * t, z],
        [-w * z, w * t, -v * t, -y],
        [-u * w * t, -w * z, u * y + 2 * v * z, v * t],
    ]
    return PolyMatrix.from_rows(rows, FLOP_VARS)


def universal_flop2() -> MatFac:
    W = flop_quadric()
    x = Poly.var("x", FLOP_VARS)
    return MatFac.from_xi(flop_xi(), "x", W, name="UF2", data={"W": W, "g": W - x * x})


def universal_flop1() -> MatFac:
    names = ("x", "y", "z", "t")
    x, y, z, t = (Poly.var(v, names) for v in names)
    phi = PolyMatrix.from_rows([[x, z + t], [z - t, y]], names)
    psi = PolyMatrix.from_rows([[y, -z - t], [-z + t, x]], names)
    return MatFac(phi=phi, psi=psi, f=x * y - z * z + t * t, name="UF1", data={"g": z + t, "h": z - t})


# -----------------------------
# D series: invariant theory
# -----------------------------
@dataclass(frozen=True)
class DnInvariantData:
    n: int
    k: int
    f: Poly
    h: Poly
    eta: Poly
    P: Poly
    Q: Poly
    S: Poly
    G: Poly
    F: Poly
    gamma: Poly
    q0: Poly
    params: Tuple[str, ...] = ()
    roots: Tuple[int, ...] = ()

    def mainsub(self) -> Dict[str, Poly]:
        """Bindings taking the flop coordinates to the D coordinates."""
        X, Y, Z = (Poly.var(v) for v in D_VARS)
        return {
            "x": X,
            "y": Y - self.eta * self.S,
            "z": self.Q,
            "t": self.P,
            "u": Z,
            "v": self.eta,
            "w": -self.h,
        }

    def hypersurface(self) -> Poly:
        X, Y, Z = (Poly.var(v, D_VARS) for v in D_VARS)
        return X * X + Y * Y * Z + 2 * self.gamma * Y - self.F

    def residual_f(self) -> Poly:
        """F = h·(Q² + Z·P²) + η²·(2·Q(0)·S + Z·S² + P²)."""
        Z = Poly.var("Z")
        P, Q, S = self.P, self.Q, self.S
        return self.h * (Q * Q + Z * P * P) + self.eta * self.eta * (2 * self.q0 * S + Z * S * S + P * P)


def _d_index_check(n: int, k: int) -> None:
    if n < 2 or not 1 <= k <= n:
        raise BadIndex(f"D family needs n >= 2 and 1 <= k <= n, got n={n}, k={k}", {"n": n, "k": k})
    _check_rank(n)


def _invariants(
    n: int,
    k: int,
    fc: Optional[Sequence[int]] = None,
    hc: Optional[Sequence[int]] = None,
    eta: Optional[int] = None,
    roots: Tuple[int, ...] = (),
) -> DnInvariantData:
    U, Z = Poly.var("U"), Poly.var("Z")
    params: List[str] = []

    if fc is None:
        fcs = [Poly.var(f"fc{i}") for i in range(k)]
        params += [f"fc{i}" for i in range(k)]
    else:
        fcs = [Poly.const(c) for c in fc]
    f = U ** k + _poly_sum([fcs[i] * U ** i for i in range(k)])

    if k == n:
        h, eta_p = Poly.zero(), Poly.const(1)
    else:
        if hc is None:
            hcs = [Poly.var(f"hc{i}") for i in range(n - k - 1)]
            params += [f"hc{i}" for i in range(n - k - 1)]
        else:
            hcs = [Poly.const(c) for c in hc]
        h = Z ** (n - k - 1) + _poly_sum([hcs[i] * Z ** i for i in range(n - k - 1)])
        if eta is None:
            eta_p = Poly.var("eta")
            params.append("eta")
        else:
            eta_p = Poly.const(eta)

    quot, rem = reduce_mod_usq(f, "U", "Z")
    parts = rem.coefficients_in("U")
    P = parts.get(1, Poly.zero()).subs({"U": 0})
    Q = parts.get(0, Poly.zero()).subs({"U": 0})
    q0 = Q.subs({"Z": 0})
    S = exact_divide(Q - q0, Z)
    G = -quot
    data = DnInvariantData(
        n=n, k=k, f=f, h=h, eta=eta_p, P=P, Q=Q, S=S, G=G,
        F=Poly.zero(), gamma=eta_p * q0, q0=q0, params=tuple(params), roots=roots,
    )
    return _with_f(data)


def _with_f(data: DnInvariantData) -> DnInvariantData:
    return replace(data, F=data.residual_f())


def dn_invariants(n: int, k: int) -> DnInvariantData:
    _d_index_check(n, k)
    return _invariants(n, k)


def elementary_symmetric(values: Sequence[int], i: int) -> int:
    total = 0
    for combo in itertools.combinations(values, i):
        p = 1
        for c in combo:
            p *= c
        total += p
    return total


def dn_invariants_from_roots(n: int, k: int, roots: Sequence[int]) -> DnInvariantData:
    """Numeric specialization at f = ∏_{j≤k}(U − t_j) and the remaining roots."""
    _d_index_check(n, k)
    if len(roots) != n:
        raise BadIndex(f"need {n} roots, got {len(roots)}", {"n": n, "roots": list(roots)})
    t = [int(r) for r in roots]
    U, Z = Poly.var("U"), Poly.var("Z")

    f = Poly.const(1)
    for tj in t[:k]:
        f = f * (U - tj)
    fc = [int(f.coefficient({"U": i}).re) for i in range(k)]

    if k == n:
        return _invariants(n, k, fc=fc, roots=tuple(t))

    sign = -1 if (n - k) % 2 else 1
    eta = sign
    for tj in t[k:]:
        eta *= tj
    prod = Poly.const(1)
    for tj in t[k:]:
        prod = prod * (Z + tj * tj)
    h = exact_divide(prod - eta * eta, Z)
    hc = [int(h.coefficient({"Z": i}).re) for i in range(n - k - 1)]
    return _invariants(n, k, fc=fc, hc=hc, eta=eta, roots=tuple(t))


def dn_family(n: int, k: int) -> MatFac:
    """Ξ of the universal flop pulled back along the invariant substitution."""
    _d_index_check(n, k)
    inv = _invariants(n, k)
    names = D_VARS + inv.params
    xi = flop_xi().substitute(inv.mainsub()).with_vars(names)
    f = inv.hypersurface().with_vars(names)
    tags: Tuple[str, ...] = ()
    if n - k <= 3:
        tags = (f"degenerate:D{n - k}",)
    return MatFac.from_xi(
        xi, "X", f, name=f"D:n={n}:k={k}", params=inv.params, tags=tags,
        data={"F": inv.F, "gamma": inv.gamma, "h": inv.h, "eta": inv.eta, "G": inv.G, "S": inv.S, "f": inv.f},
    )


def _signed_z(e: int) -> Poly:
    """(−Z)^e expanded."""
    z = Poly.var("Z")
    return z ** e if e % 2 == 0 else -(z ** e)


def dn_gsv(n: int, k: int) -> PolyMatrix:
    _d_index_check(n, k)
    Y, Z = Poly.var("Y"), Poly.var("Z")
    O = Poly.zero()
    s = 1 if (n - 1) % 2 == 0 else -1
    if k % 2 == 0:
        a, b = _signed_z(k // 2), _signed_z(n - (k + 2) // 2).scale(s)
        rows = [[O, Y, a, O], [-Y * Z, O, O, a], [b, O, O, -Y], [O, b, Y * Z, O]]
    else:
        a1, a2 = _signed_z((k - 1) // 2), _signed_z((k + 1) // 2)
        b1, b2 = _signed_z(n - (k + 3) // 2).scale(s), _signed_z(n - (k + 1) // 2).scale(s)
        rows = [[O, Y, O, a1], [-Y * Z, O, a2, O], [O, b1, O, -Y], [b2, O, Y * Z, O]]
    return PolyMatrix.from_rows(rows, D_VARS)


def dn_gsv_matfac(n: int, k: int) -> MatFac:
    X, Y, Z = (Poly.var(v, D_VARS) for v in D_VARS)
    f = X * X + Y * Y * Z - Z ** (n - 1)
    return MatFac.from_xi(dn_gsv(n, k), "X", f, name=f"D:n={n}:k={k}:gsv")


def dn_origin(n: int, k: int) -> Dict[str, int]:
    """Bindings sending every PRes parameter of dn_family(n, k) to 0."""
    return {p: 0 for p in _invariants(n, k).params}


# -----------------------------
# D4, k=2 against the universal flop
# -----------------------------
def d4_from_flop() -> Dict[str, Poly]:
    x, y, z, t, u, v, w = (Poly.var(n) for n in FLOP_VARS)
    return {"X": x, "Y": y - v, "Z": u, "eta": v, "hc0": -u - w, "fc1": t, "fc0": z + u}


def flop_from_d4() -> Dict[str, Poly]:
    X, Y, Z = (Poly.var(n) for n in D_VARS)
    eta, hc0, fc0, fc1 = (Poly.var(n) for n in ("eta", "hc0", "fc0", "fc1"))
    return {"x": X, "y": Y + eta, "z": -Z + fc0, "t": fc1, "u": Z, "v": eta, "w": -Z - hc0}


# -----------------------------
# E series
# -----------------------------
def e_polynomial(series: str) -> Poly:
    if series not in E_SERIES:
        raise UnknownLabel(f"unknown E series {series!r}", {"series": series, "known": sorted(E_SERIES)})
    return parse(E_SERIES[series]["g"], E_VARS)


def e_labels(series: str) -> List[str]:
    if series not in E_SERIES:
        raise UnknownLabel(f"unknown E series {series!r}", {"series": series, "known": sorted(E_SERIES)})
    return list(E_SERIES[series]["labels"])


def _matrix(rows: Sequence[Sequence[str]]) -> PolyMatrix:
    return PolyMatrix.from_rows([[parse(e, E_VARS) for e in r] for r in rows], E_VARS)


def e_pair(series: str, label: str) -> Tuple[PolyMatrix, PolyMatrix]:
    table = E_SERIES.get(series)
    if table is None or label not in table["pairs"]:
        raise UnknownLabel(
            f"{series} has no (phi, psi) table for label {label!r}",
            {"series": series, "label": label, "known": e_labels(series) if table else []},
        )
    phi_rows, psi_rows = table["pairs"][label]
    return _matrix(phi_rows), _matrix(psi_rows)


def e_series(series: str, label: str) -> MatFac:
    """The table entry: a direct Ξ (E6 1±, 2±) or a (φ, ψ) pair with φψ = −g·I."""
    g = e_polynomial(series)
    table = E_SERIES[series]
    name = f"{series}:{label}"
    if label in table["xi"]:
        X = Poly.var("X", E_VARS)
        return MatFac.from_xi(_matrix(table["xi"][label]), "X", X * X + g, name=name, data={"g": g})
    if label in table["pairs"]:
        phi, psi = e_pair(series, label)
        return MatFac(phi=phi, psi=psi, f=-g, name=name, data={"g": g})
    raise UnknownLabel(
        f"{series} has no label {label!r}",
        {"series": series, "label": label, "known": e_labels(series)},
    )


def ell_of_label(label: str) -> int:
    digits = "".join(itertools.takewhile(str.isdigit, label))
    return int(digits) if digits else 1


def stabilize(phi: PolyMatrix, psi: PolyMatrix, g: Poly, name: str = "") -> MatFac:
    """Ξ = [[0, φ], [ψ, 0]] of size 2ℓ, giving (XI − Ξ)(XI + Ξ) = (X² + g)·I."""
    n = phi.rows
    want = PolyMatrix.scalar(-g, n)
    for label, prod in (("phi*psi", matmul(phi, psi)), ("psi*phi", matmul(psi, phi))):
        if prod != want:
            raise NotAFactorization(
                f"{label} is not -g*I",
                {"product": label, "got": prod.to_text(), "g": g.to_text()},
            )
    O = Poly.zero()
    rows = []
    for i in range(n):
        rows.append([O] * n + phi.row(i))
    for i in range(n):
        rows.append(psi.row(i) + [O] * n)
    names = E_VARS + tuple(v for v in phi.vars + psi.vars + g.vars if v not in E_VARS)
    xi = PolyMatrix.from_rows(rows, names)
    X = Poly.var("X", names)
    return MatFac.from_xi(xi, "X", X * X + g, name=name or "stabilized", data={"g": g})


def e_stabilized(series: str, label: str) -> MatFac:
    m = e_series(series, label)
    if m.split is not None:
        return m
    return stabilize(m.phi, m.psi, m.data["g"], name=f"{series}:{label}:stable")


# -----------------------------
# Base changes for the D decompositions
# -----------------------------
def b0_b1(inv: DnInvariantData) -> Tuple[PolyMatrix, PolyMatrix]:
    X, Y = Poly.var("X"), Poly.var("Y")
    one, O = Poly.const(1), Poly.zero()
    eta, q0 = inv.eta, inv.q0
    b0 = PolyMatrix.from_rows(
        [[X - eta, Y, q0, one], [-one, O, O, O], [-q0, one, O, O], [Y, O, one, O]], D_VARS
    )
    b1 = PolyMatrix.from_rows(
        [[one, O, O, O], [-X - eta, Y, q0, one], [-q0, one, O, O], [Y, O, one, O]], D_VARS
    )
    return b0, b1


def b2() -> PolyMatrix:
    Z = Poly.var("Z")
    half = Fraction(1, 2)
    one, O = Poly.const(1), Poly.zero()
    return PolyMatrix.from_rows(
        [[one, O, O, Poly.const(-half)], [O, one, Z.scale(-half), O], [O, O, one, O], [O, O, O, -one]],
        D_VARS,
    )


def b3() -> PolyMatrix:
    return PolyMatrix.from_rows([[1, 0, 1, 0], [0, -1, 0, 1], [1, 0, -1, 0], [0, -1, 0, -1]], D_VARS)


@dataclass(frozen=True)
class Decomposition:
    """Base changes, partition and the expected split blocks for one D case."""

    case: str
    b_left: PolyMatrix
    b_right: PolyMatrix
    partition: Tuple[Tuple[int, ...], ...]
    expected_xi: Tuple[Optional[PolyMatrix], ...]


def xi_blocks(inv: DnInvariantData) -> Dict[str, PolyMatrix]:
    """ξ1..ξ4 as functions of the invariant data."""
    Y, Z = Poly.var("Y"), Poly.var("Z")
    eta, q0, h, P, Q, S = inv.eta, inv.q0, inv.h, inv.P, inv.Q, inv.S
    return {
        "xi1": PolyMatrix.from_rows(
            [[eta - q0 * Y, -Z - q0 * q0], [Y * Y - h, -eta + q0 * Y]], D_VARS
        ),
        "xi2": PolyMatrix.from_rows([[-P, Y - S], [-Y * Z + Z * S - 2 * Q, P]], D_VARS),
        "xi3": PolyMatrix.from_rows(
            [[Q - eta * P, -Y + eta * S + P], [Z * (Y - eta * S + P) + 2 * eta * Q, eta * P - Q]], D_VARS
        ),
        "xi4": PolyMatrix.from_rows(
            [[-eta * P - Q, -Y + eta * S - P], [Z * (Y - eta * S - P) + 2 * eta * Q, eta * P + Q]], D_VARS
        ),
    }


def dn_decomposition(n: int, k: int) -> Decomposition:
    """Fixture for k = 1, k = n or k = n − 1 (k = 1 wins when n = 2)."""
    _d_index_check(n, k)
    inv = _invariants(n, k)
    xis = xi_blocks(inv)
    if k == 1:
        b0, b1 = b0_b1(inv)
        return Decomposition("k=1", b0, b1, ((0,), (1,), (2, 3)), (None, None, xis["xi1"]))
    if k == n:
        b = b2()
        return Decomposition("k=n", b, b, ((0, 1), (2, 3)), (xis["xi2"], xis["xi2"]))
    if k == n - 1:
        b = b3()
        return Decomposition("k=n-1", b, b, ((0, 1), (2, 3)), (xis["xi3"], xis["xi4"]))
    raise BadIndex(f"no decomposition fixture for n={n}, k={k}", {"n": n, "k": k})


# -----------------------------
# Manifest
# -----------------------------
def d_ell(n: int, k: int) -> int:
    return 1 if k in (1, n - 1, n) else 2


def manifest() -> List[FamilySpec]:
    out: List[FamilySpec] = []
    for n in A_RANKS:
        for k in range(1, n):
            out.append(FamilySpec(series="A", n=n, k=k, ell=1))
    for n in D_RANKS:
        for k in range(1, n + 1):
            tags = [f"degenerate:D{n - k}"] if n - k <= 3 else []
            out.append(FamilySpec(series="D", n=n, k=k, ell=d_ell(n, k), tags=tags))
            out.append(FamilySpec(series="D", n=n, k=k, deformed=False, ell=d_ell(n, k)))
    for series in ("E6", "E7", "E8"):
        for label in E_SERIES[series]["labels"]:
            out.append(FamilySpec(series=series, label=label, deformed=False, ell=ell_of_label(label)))
    out.append(FamilySpec(series="UF1", ell=1))
    out.append(FamilySpec(series="UF2", ell=2))
    for n in REID_RANKS:
        out.append(FamilySpec(series="REID", n=n, ell=1))
    return out


def build(entry: FamilySpec) -> MatFac:
    """MatFac for one manifest entry."""
    if entry.series == "A":
        return an_family(entry.n, entry.k, entry.deformed)
    if entry.series == "D":
        return dn_family(entry.n, entry.k) if entry.deformed else dn_gsv_matfac(entry.n, entry.k)
    if entry.series in E_SERIES:
        return e_series(entry.series, entry.label or "")
    if entry.series == "UF1":
        return universal_flop1()
    if entry.series == "UF2":
        return universal_flop2()
    if entry.series == "REID":
        return reid_pagoda(entry.n)
    raise UnknownLabel(f"unknown series {entry.series!r}", {"series": entry.series, "known": list(SERIES)})
