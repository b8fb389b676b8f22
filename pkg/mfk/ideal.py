"""Desk-scale ideal engine: division, Buchberger, elimination.

Used as an independent oracle for the closed-form chart computations in
`mfk.blowup`; nothing in the verification path depends on it otherwise.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from mfk.config import Caps
from mfk.errors import CapExceeded
from mfk.poly import Exps, GaussRat, Poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialOrder:
    """grlex, or an elimination (block) order: grlex on the first `split`
    variables, ties broken by grlex on the rest."""

    kind: str = "grlex"
    split: int = 0

    def key(self, e: Exps):
        if self.kind == "elim":
            head, tail = e[: self.split], e[self.split:]
            return (sum(head), head, sum(tail), tail)
        return (sum(e), e)

    def to_json(self) -> dict:
        return {"kind": self.kind, "split": self.split}


GRLEX = MonomialOrder()


@dataclass(frozen=True)
class Ideal:
    gens: Tuple[Poly, ...]
    order: MonomialOrder = GRLEX
    vars: Tuple[str, ...] = field(default=())

    @classmethod
    def of(cls, gens: Sequence[Poly], order: MonomialOrder = GRLEX, vars: Sequence[str] = ()) -> "Ideal":
        names: List[str] = list(vars)
        for g in gens:
            for v in g.vars:
                if v not in names:
                    names.append(v)
        order_names = tuple(names)
        kept = tuple(g.with_vars(order_names) for g in gens if not g.is_zero())
        return cls(kept, order, order_names)

    def to_json(self) -> dict:
        return {"order": self.order.to_json(), "gens": [g.to_json() for g in self.gens]}


# -----------------------------
# Leading terms
# -----------------------------
def leading(p: Poly, order: MonomialOrder) -> Tuple[Exps, GaussRat]:
    return max(p.terms.items(), key=lambda t: order.key(t[0]))


def monic(p: Poly, order: MonomialOrder) -> Poly:
    if p.is_zero():
        return p
    _, c = leading(p, order)
    return p if c.is_one() else p.scale(c.inverse())


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exps, b: Exps) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _monomial(names: Tuple[str, ...], e: Exps, c: GaussRat) -> Poly:
    return Poly._make(names, {e: c})


# -----------------------------
# Division
# -----------------------------
def divide(p: Poly, gens: Sequence[Poly], order: MonomialOrder, names: Sequence[str] = ()) -> Tuple[List[Poly], Poly]:
    """Multivariate division: p = Σ q_i·g_i + r, no term of r divisible by any LT(g_i)."""
    names_t = tuple(names) or p.vars
    work = dict(p.with_vars(names_t).terms)
    gs = [g.with_vars(names_t) for g in gens]
    leads = [leading(g, order) for g in gs]
    quots: List[Dict[Exps, GaussRat]] = [{} for _ in gs]
    rem: Dict[Exps, GaussRat] = {}
    while work:
        e, c = max(work.items(), key=lambda t: order.key(t[0]))
        for idx, (le, lc) in enumerate(leads):
            if _divides(le, e):
                qe = tuple(x - y for x, y in zip(e, le))
                qc = c / lc
                prev = quots[idx].get(qe)
                quots[idx][qe] = qc if prev is None else prev + qc
                for ge, gc in gs[idx].terms.items():
                    te = tuple(x + y for x, y in zip(ge, qe))
                    s = work.get(te, GaussRat(0)) - qc * gc
                    if s.is_zero():
                        work.pop(te, None)
                    else:
                        work[te] = s
                break
        else:
            rem[e] = c
            del work[e]
    quotients = [Poly._make(names_t, {e: c for e, c in q.items() if not c.is_zero()}) for q in quots]
    return quotients, Poly._make(names_t, rem)


def reduce(p: Poly, ideal: Ideal) -> Poly:
    """Normal form of p by the ideal's generators (a membership certificate
    when they form a Gröbner basis)."""
    names = ideal.vars + tuple(v for v in p.vars if v not in ideal.vars)
    _, r = divide(p, ideal.gens, ideal.order, names)
    return r


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    fe, fc = leading(f, order)
    ge, gc = leading(g, order)
    m = _lcm(fe, ge)
    names = f.vars
    left = _monomial(names, tuple(x - y for x, y in zip(m, fe)), fc.inverse())
    right = _monomial(names, tuple(x - y for x, y in zip(m, ge)), gc.inverse())
    return left * f - right * g


# -----------------------------
# Buchberger with Gebauer–Möller pair pruning
# -----------------------------
@dataclass
class _State:
    polys: List[Poly] = field(default_factory=list)
    leads: List[Exps] = field(default_factory=list)
    basis: List[int] = field(default_factory=list)
    pairs: List[Tuple[int, int]] = field(default_factory=list)


def _pair_key(state: _State, pair: Tuple[int, int]):
    i, j = pair
    return (sum(_lcm(state.leads[i], state.leads[j])), i, j)


def _update(state: _State, h: int) -> None:
    lead = state.leads
    lh = lead[h]

    candidates = [g for g in state.basis]
    kept: List[int] = []
    # drop (h, g) when another (h, g2) has an lcm dividing it, unless coprime
    for pos, g in enumerate(candidates):
        lhg = _lcm(lh, lead[g])
        if _coprime(lh, lead[g]):
            kept.append(g)
            continue
        others = candidates[pos + 1:] + kept
        if any(_divides(_lcm(lh, lead[g2]), lhg) for g2 in others if g2 != g):
            continue
        kept.append(g)
    new_pairs = [(min(g, h), max(g, h)) for g in kept if not _coprime(lh, lead[g])]

    old_pairs = []
    for (a, b) in state.pairs:
        lab = _lcm(lead[a], lead[b])
        if (
            _divides(lh, lab)
            and _lcm(lead[a], lh) != lab
            and _lcm(lead[b], lh) != lab
        ):
            continue
        old_pairs.append((a, b))

    state.pairs = old_pairs + new_pairs
    state.basis = [g for g in state.basis if not _divides(lh, lead[g])] + [h]


def _add(state: _State, p: Poly, order: MonomialOrder, caps: Caps) -> None:
    p = monic(p, order)
    e, _ = leading(p, order)
    if sum(e) > caps.max_degree:
        raise CapExceeded(
            f"basis element of degree {sum(e)} exceeds max_degree={caps.max_degree}",
            {"max_degree": caps.max_degree, "basis_size": len(state.basis), "element": p.to_text()},
        )
    state.polys.append(p)
    state.leads.append(e)
    _update(state, len(state.polys) - 1)
    if len(state.basis) > caps.max_basis:
        raise CapExceeded(
            f"basis grew to {len(state.basis)} elements, max_basis={caps.max_basis}",
            {"max_basis": caps.max_basis, "basis_size": len(state.basis)},
        )
    logger.debug("basis size %d after adding lead %s", len(state.basis), e)


def _interreduce(polys: List[Poly], order: MonomialOrder, names: Tuple[str, ...]) -> List[Poly]:
    # minimal basis first, then reduce every tail
    leads = [leading(p, order)[0] for p in polys]
    minimal = []
    for i, p in enumerate(polys):
        if any(j != i and _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i) for j in range(len(polys))):
            continue
        minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        _, r = divide(p, others, order, names)
        out.append(monic(r, order))
    return sorted(out, key=lambda g: order.key(leading(g, order)[0]))


def buchberger(ideal: Ideal, caps: Optional[Caps] = None) -> Ideal:
    """Reduced Gröbner basis of `ideal` under its own order.

    Pairs are processed by increasing lcm degree, then by generator
    indices. Raises CapExceeded when the degree or basis-size cap is hit.
    """
    caps = caps or Caps()
    order = ideal.order
    names = ideal.vars
    state = _State()

    for g in ideal.gens:
        _, r = divide(g, [state.polys[i] for i in state.basis], order, names)
        if not r.is_zero():
            _add(state, r, order, caps)

    steps = 0
    while state.pairs:
        pair = min(state.pairs, key=lambda pr: _pair_key(state, pr))
        state.pairs.remove(pair)
        i, j = pair
        deg = sum(_lcm(state.leads[i], state.leads[j]))
        if deg > caps.max_degree:
            raise CapExceeded(
                f"S-pair lcm degree {deg} exceeds max_degree={caps.max_degree}",
                {"max_degree": caps.max_degree, "basis_size": len(state.basis), "pair": [i, j]},
            )
        s = s_polynomial(state.polys[i], state.polys[j], order)
        _, r = divide(s, [state.polys[k] for k in state.basis], order, names)
        steps += 1
        if not r.is_zero():
            _add(state, r, order, caps)

    basis = _interreduce([state.polys[k] for k in state.basis], order, names)
    logger.debug("buchberger done: %d S-pairs, %d basis elements", steps, len(basis))
    return Ideal(tuple(basis), order, names)


def is_groebner(ideal: Ideal) -> bool:
    """Post-hoc check: every S-polynomial reduces to zero."""
    gs = list(ideal.gens)
    for a in range(len(gs)):
        for b in range(a + 1, len(gs)):
            s = s_polynomial(gs[a], gs[b], ideal.order)
            _, r = divide(s, gs, ideal.order, ideal.vars)
            if not r.is_zero():
                return False
    return True


def contains(ideal: Ideal, p: Poly, caps: Optional[Caps] = None) -> bool:
    gb = buchberger(ideal, caps)
    return reduce(p, gb).is_zero()


def elimination_ideal(ideal: Ideal, keep: Sequence[str], caps: Optional[Caps] = None) -> Ideal:
    """Generators of I ∩ k[keep], via a block order with the other variables first."""
    keep_set = set(keep)
    drop = [v for v in ideal.vars if v not in keep_set]
    rest = [v for v in ideal.vars if v in keep_set]
    names = tuple(drop + rest)
    order = MonomialOrder("elim", len(drop)) if drop else GRLEX
    gb = buchberger(Ideal(tuple(g.with_vars(names) for g in ideal.gens), order, names), caps)
    kept = tuple(g.with_vars(tuple(rest)) for g in gb.gens if not g.involves(drop))
    inner = MonomialOrder("grlex", 0)
    return Ideal(kept, inner, tuple(rest))


def same_principal(a: Poly, b: Poly) -> bool:
    """(a) == (b): equal up to a non-zero constant factor."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    names = a.vars + tuple(v for v in b.vars if v not in a.vars)
    return monic(a.with_vars(names), GRLEX) == monic(b.with_vars(names), GRLEX)
