# Localization witnesses and generation identities for the two worked charts of
# the universal flop of length 2. Every expression is written in the flop
# coordinates x, y, z, t, u, v, w plus the chart unknowns; the D charts reuse
# them after the invariant substitution.
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from mfk.catalog import FLOP_VARS
from mfk.poly import Poly, parse


@dataclass(frozen=True)
class Witness:
    name: str
    cofactors: Tuple[Tuple[str, str], ...]
    divisor: str
    quotient: str


@dataclass(frozen=True)
class Generation:
    target: str
    combination: Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class ConcreteWitness:
    name: str
    cofactors: Dict[str, Poly]
    divisor: Poly
    quotient: Poly


@dataclass(frozen=True)
class WitnessSet:
    pivots: Tuple[int, ...]
    prefix: str
    gen_prefix: str
    witnesses: Tuple[Witness, ...]
    generation: Tuple[Generation, ...]
    # (variable, generator) pairs for the flop itself
    plan: Tuple[Tuple[str, str], ...]

    def instantiate(self, bindings: Optional[Mapping[str, Poly]] = None) -> List[ConcreteWitness]:
        return [
            ConcreteWitness(
                name=w.name,
                cofactors={g: _expr(c, bindings) for g, c in w.cofactors},
                divisor=_expr(w.divisor, bindings),
                quotient=_expr(w.quotient, bindings),
            )
            for w in self.witnesses
        ]

    def expressions(self, bindings: Optional[Mapping[str, Poly]] = None) -> Dict[str, Dict[str, Poly]]:
        return {g.target: {name: _expr(c, bindings) for name, c in g.combination} for g in self.generation}


def _expr(text: str, bindings: Optional[Mapping[str, Poly]]) -> Poly:
    p = parse(text, FLOP_VARS)
    return p.subs(bindings) if bindings else p


CHART1 = WitnessSet(
    pivots=(0, 1),
    prefix="alpha",
    gen_prefix="lam",
    witnesses=(
        Witness(
            "lam1",
            (("lam11", "z"), ("lam12", "-u*t"), ("lam21", "-t"), ("lam22", "-z")),
            "z^2 + u*t^2",
            "alpha11 - alpha22",
        ),
        Witness(
            "lam2",
            (("lam11", "-u*t"), ("lam12", "-u*z"), ("lam21", "-z"), ("lam22", "u*t")),
            "z^2 + u*t^2",
            "2*v - alpha12*u - alpha21",
        ),
        Witness(
            "lam3",
            (
                ("lam12", "alpha12*u*z + alpha22*u*t"),
                ("lam22", "-alpha12*u*t + alpha22*z"),
                ("lam32", "u*t"),
                ("lam42", "-z"),
            ),
            "z^2 + u*t^2",
            "alpha22^2 + alpha12^2*u - 2*alpha12*v + w",
        ),
    ),
    generation=(
        Generation("lam11", (("lam22", "1"), ("lam1", "z"), ("lam2", "-t"))),
        Generation("lam21", (("lam12", "-u"), ("lam1", "-u*t"), ("lam2", "-z"))),
        Generation(
            "lam31",
            (
                ("lam12", "alpha12*u - 2*v"),
                ("lam22", "alpha22"),
                ("lam1", "x - v*t"),
                ("lam2", "y"),
                ("lam3", "-z"),
            ),
        ),
        Generation("lam32", (("lam12", "-alpha22"), ("lam22", "alpha12"), ("lam3", "t"))),
        Generation(
            "lam41",
            (
                ("lam12", "alpha11*u"),
                ("lam22", "alpha21"),
                ("lam1", "-alpha12*u*z - alpha22*u*t + 2*v*z"),
                ("lam2", "alpha22*z - alpha12*u*t"),
                ("lam3", "-u*t"),
            ),
        ),
        Generation("lam42", (("lam12", "alpha12*u"), ("lam22", "alpha22"), ("lam3", "-z"))),
    ),
    plan=(("y", "lam12"), ("x", "lam22"), ("alpha11", "lam1"), ("alpha21", "lam2"), ("w", "lam3")),
)


CHART2 = WitnessSet(
    pivots=(0, 2),
    prefix="beta",
    gen_prefix="mu",
    witnesses=(
        Witness(
            "mu1",
            (("mu11", "y"), ("mu12", "w*t"), ("mu31", "t"), ("mu32", "-y")),
            "y^2 + w*t^2",
            "beta11 + beta22",
        ),
        Witness(
            "mu2",
            (("mu11", "-w*t"), ("mu12", "w*y"), ("mu31", "y"), ("mu32", "w*t")),
            "y^2 + w*t^2",
            "-beta21 + beta12*w",
        ),
        Witness(
            "mu3",
            (
                ("mu12", "-2*v*y + beta12*w*y + beta22*w*t"),
                ("mu32", "beta12*w*t - beta22*y"),
                ("mu22", "-w*t"),
                ("mu42", "y"),
            ),
            "y^2 + w*t^2",
            "beta22^2 + u - 2*beta12*v + beta12^2*w",
        ),
    ),
    generation=(
        Generation("mu11", (("mu32", "1"), ("mu1", "y"), ("mu2", "-t"))),
        Generation(
            "mu21",
            (
                ("mu12", "-2*v + beta12*w"),
                ("mu32", "-beta22"),
                ("mu1", "x + v*t"),
                ("mu2", "-z"),
                ("mu3", "-y"),
            ),
        ),
        Generation("mu22", (("mu12", "beta22"), ("mu32", "beta12"), ("mu3", "-t"))),
        Generation("mu31", (("mu12", "-w"), ("mu1", "w*t"), ("mu2", "y"))),
        Generation(
            "mu41",
            (
                ("mu12", "beta22*w"),
                ("mu32", "beta12*w"),
                ("mu1", "-w*z"),
                ("mu2", "-x - v*t"),
                ("mu3", "-w*t"),
            ),
        ),
        Generation("mu42", (("mu12", "2*v - beta12*w"), ("mu32", "beta22"), ("mu3", "y"))),
    ),
    plan=(("z", "mu12"), ("x", "mu32"), ("beta11", "mu1"), ("beta21", "mu2"), ("u", "mu3")),
)


FLOP_CHARTS = {1: CHART1, 2: CHART2}

# eliminations on the D charts, after the invariant substitution
D_PLANS = {
    1: (("alpha11", "lam1"), ("alpha21", "lam2"), ("Y", "lam12"), ("X", "lam22")),
    2: (("beta11", "mu1"), ("beta21", "mu2"), ("X", "mu32")),
}
