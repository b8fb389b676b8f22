"""Exact arithmetic in Q(i) and sparse multivariate polynomials over it.

Every identity checked by the engine (factorizations, witness identities,
eliminations) is an equality in some polynomial ring over Q(i), so this
module is the substrate for all of them. Values are immutable once built
and are safe to share between threads.
"""
from __future__ import annotations

import logging
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from mfk.errors import NotDivisible, ParseError

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]
Scalar = Union[int, Fraction, "GaussRat"]

_FZERO = Fraction(0)


# -----------------------------
# Coefficients: Q(i)
# -----------------------------
class GaussRat:
    """re + im*i with both parts exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # numerator/denominator views
    @property
    def re_num(self) -> int:
        return self.re.numerator

    @property
    def re_den(self) -> int:
        return self.re.denominator

    @property
    def im_num(self) -> int:
        return self.im.numerator

    @property
    def im_den(self) -> int:
        return self.im.denominator

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __add__(self, other: Scalar) -> "GaussRat":
        o = as_coefficient(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussRat":
        o = as_coefficient(other)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> "GaussRat":
        return as_coefficient(other) - self

    def __mul__(self, other: Scalar) -> "GaussRat":
        o = as_coefficient(other)
        if not self.im and not o.im:
            return GaussRat(self.re * o.re, _FZERO)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        if not self.im:
            return GaussRat(1 / self.re, _FZERO)
        d = self.re * self.re + self.im * self.im
        return GaussRat(self.re / d, -self.im / d)

    def __truediv__(self, other: Scalar) -> "GaussRat":
        return self * as_coefficient(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "GaussRat":
        return as_coefficient(other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def to_text(self) -> str:
        if not self.im:
            return str(self.re)
        return _complex_text(self)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"GaussRat({self.to_text()!r})"


I = GaussRat(0, 1)


def as_coefficient(value: Scalar) -> GaussRat:
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRat(value)
    raise TypeError(f"cannot use {type(value).__name__} as a Q(i) coefficient")


def _complex_text(c: GaussRat) -> str:
    if not c.re:
        return f"({c.im}*i)"
    sign = "+" if c.im > 0 else "-"
    return f"({c.re}{sign}{abs(c.im)}*i)"


# -----------------------------
# Monomial orders
# -----------------------------
def grlex_key(e: Exps):
    """Graded-lex key: larger key means larger monomial."""
    return (sum(e), e)


# -----------------------------
# Polynomials
# -----------------------------
class Poly:
    """Sparse polynomial over Q(i) with a declared variable order.

    `terms` maps exponent vectors (aligned with `vars`) to non-zero
    coefficients. Binary operations merge variable orders by name: the
    left operand's names first, then the right operand's new ones.
    Equality is semantic, so polynomials over different declared orders
    compare equal when they are the same element of the ring.
    """

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, vars: Sequence[str] = (), terms: Optional[Mapping[Sequence[int], Scalar]] = None):
        names = tuple(vars)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        n = len(names)
        clean: Dict[Exps, GaussRat] = {}
        for e, c in (terms or {}).items():
            exps = tuple(int(x) for x in e)
            if len(exps) != n or any(x < 0 for x in exps):
                raise ValueError(f"bad exponent vector {exps} for variables {names}")
            coef = as_coefficient(c)
            if coef.is_zero():
                continue
            prev = clean.get(exps)
            coef = coef if prev is None else prev + coef
            if coef.is_zero():
                clean.pop(exps, None)
            else:
                clean[exps] = coef
        self._vars = names
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, names: Tuple[str, ...], terms: Dict[Exps, GaussRat]) -> "Poly":
        p = cls.__new__(cls)
        p._vars = names
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "Poly":
        return cls._make(tuple(vars), {})

    @classmethod
    def const(cls, value: Scalar, vars: Sequence[str] = ()) -> "Poly":
        names = tuple(vars)
        c = as_coefficient(value)
        return cls._make(names, {} if c.is_zero() else {(0,) * len(names): c})

    @classmethod
    def var(cls, name: str, vars: Optional[Sequence[str]] = None) -> "Poly":
        names = tuple(vars) if vars is not None else (name,)
        if name not in names:
            names = names + (name,)
        e = tuple(1 if v == name else 0 for v in names)
        return cls._make(names, {e: GaussRat(1)})

    # accessors
    @property
    def vars(self) -> Tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> Mapping[Exps, GaussRat]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or all(not any(e) for e in self._terms)

    def constant_term(self) -> GaussRat:
        return self._terms.get((0,) * len(self._vars), GaussRat(0))

    def as_constant(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError(f"{self.to_text()} is not a constant")
        return self.constant_term()

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, name: str) -> int:
        if not self._terms:
            return -1
        if name not in self._vars:
            return 0
        i = self._vars.index(name)
        return max(e[i] for e in self._terms)

    def used_vars(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self._vars) if any(e[i] for e in self._terms))

    def involves(self, names) -> bool:
        used = set(self.used_vars())
        return any(n in used for n in names)

    def coefficient(self, monomial: Mapping[str, int]) -> GaussRat:
        for name, k in monomial.items():
            if k and name not in self._vars:
                return GaussRat(0)
        e = tuple(int(monomial.get(v, 0)) for v in self._vars)
        return self._terms.get(e, GaussRat(0))

    def coefficients_in(self, name: str) -> Dict[int, "Poly"]:
        """Split by the power of `name`; the pieces keep the declared order."""
        if name not in self._vars:
            return {0: self} if self._terms else {}
        i = self._vars.index(name)
        parts: Dict[int, Dict[Exps, GaussRat]] = {}
        for e, c in self._terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._make(self._vars, t) for k, t in parts.items()}

    def sorted_terms(self, key=grlex_key) -> List[Tuple[Exps, GaussRat]]:
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def with_vars(self, names: Sequence[str]) -> "Poly":
        """Re-express over `names`, which must cover every variable in use."""
        names = tuple(names)
        if names == self._vars:
            return self
        missing = [v for v in self.used_vars() if v not in names]
        if missing:
            raise ValueError(f"variables {missing} in use but absent from {names}")
        return Poly._make(names, _lift(self, names))

    # arithmetic
    def __neg__(self) -> "Poly":
        return Poly._make(self._vars, {e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "Poly":
        return _add(self, _as_poly(other), False)

    def __radd__(self, other) -> "Poly":
        return _add(_as_poly(other), self, False)

    def __sub__(self, other) -> "Poly":
        return _add(self, _as_poly(other), True)

    def __rsub__(self, other) -> "Poly":
        return _add(_as_poly(other), self, True)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, GaussRat)):
            return self.scale(other)
        return _mul(self, _as_poly(other))

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, GaussRat)):
            return self.scale(other)
        return _mul(_as_poly(other), self)

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, GaussRat)):
            return self.scale(as_coefficient(other).inverse())
        return exact_divide(self, other)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, value: Scalar) -> "Poly":
        c = as_coefficient(value)
        if c.is_zero():
            return Poly.zero(self._vars)
        return Poly._make(self._vars, {e: a * c for e, a in self._terms.items()})

    def subs(self, bindings: Mapping[str, object]) -> "Poly":
        return substitute(self, bindings)

    def evaluate(self, values: Mapping[str, Scalar]) -> GaussRat:
        return substitute(self, values).as_constant()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, GaussRat)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self._vars == other._vars:
            return self._terms == other._terms
        return (self - other).is_zero()

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        if self._hash is None:
            items = []
            for e, c in self._terms.items():
                mono = tuple((v, k) for v, k in zip(self._vars, e) if k)
                items.append((mono, c))
            self._hash = hash(frozenset(items))
        return self._hash

    # rendering
    def to_text(self) -> str:
        return poly_to_text(self)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self._vars),
            "terms": [{"c": coefficient_text(c), "e": list(e)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Poly":
        names = tuple(data.get("vars") or ())
        terms: Dict[Exps, GaussRat] = {}
        for t in data.get("terms") or []:
            c = parse(str(t["c"])).as_constant() if not isinstance(t["c"], int) else GaussRat(t["c"])
            terms[tuple(t["e"])] = c
        return cls(names, terms)


# -----------------------------
# Internals
# -----------------------------
def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, GaussRat)):
        return Poly.const(value)
    if isinstance(value, str):
        return parse(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def _merged(a: Poly, b: Poly) -> Tuple[str, ...]:
    if a._vars == b._vars:
        return a._vars
    seen = set(a._vars)
    return a._vars + tuple(v for v in b._vars if v not in seen)


def _lift(p: Poly, names: Tuple[str, ...]) -> Dict[Exps, GaussRat]:
    if p._vars == names:
        return p._terms
    pos = {v: i for i, v in enumerate(names)}
    src = [(i, pos.get(v)) for i, v in enumerate(p._vars)]
    n = len(names)
    out: Dict[Exps, GaussRat] = {}
    for e, c in p._terms.items():
        ne = [0] * n
        for i, j in src:
            if e[i]:
                ne[j] = e[i]
        out[tuple(ne)] = c
    return out


def _add(a: Poly, b: Poly, negate: bool) -> Poly:
    names = _merged(a, b)
    out = dict(_lift(a, names))
    for e, c in _lift(b, names).items():
        if negate:
            c = -c
        prev = out.get(e)
        if prev is None:
            out[e] = c
        else:
            s = prev + c
            if s.is_zero():
                del out[e]
            else:
                out[e] = s
    return Poly._make(names, out)


def _mul(a: Poly, b: Poly) -> Poly:
    names = _merged(a, b)
    ta = _lift(a, names)
    tb = _lift(b, names)
    out: Dict[Exps, GaussRat] = {}
    for e1, c1 in ta.items():
        for e2, c2 in tb.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            c = c1 * c2
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
    return Poly._make(names, {e: c for e, c in out.items() if not c.is_zero()})


# -----------------------------
# Operations
# -----------------------------
def var(name: str) -> Poly:
    return Poly.var(name)


def symbols(names: Union[str, Sequence[str]]) -> Tuple[Poly, ...]:
    """symbols("x y z") -> (x, y, z); each declared over all the names."""
    if isinstance(names, str):
        names = [n for n in re.split(r"[\s,]+", names) if n]
    order = tuple(names)
    return tuple(Poly.var(n, order) for n in order)


def arith(a: Poly, b: Poly, kind: str) -> Poly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def substitute(p: Poly, bindings: Mapping[str, object]) -> Poly:
    """Simultaneous substitution. Bindings for names p does not declare are ignored.

    The result is declared over p's unbound names followed by any new names
    the bound polynomials bring in.
    """
    binds = {k: _as_poly(v) for k, v in bindings.items() if k in p._vars}
    if not binds:
        return p

    keep = [v for v in p._vars if v not in binds]
    names = list(keep)
    for b in binds.values():
        for v in b._vars:
            if v not in names:
                names.append(v)
    names_t = tuple(names)

    lifted = {k: Poly._make(names_t, _lift(b, names_t)) for k, b in binds.items()}
    keep_idx = [(p._vars.index(v), names_t.index(v)) for v in keep]
    bound_idx = [(i, lifted[v]) for i, v in enumerate(p._vars) if v in binds]

    powers: Dict[Tuple[int, int], Poly] = {}
    acc: Dict[Exps, GaussRat] = {}
    n = len(names_t)
    for e, c in p._terms.items():
        mono = [0] * n
        for i, j in keep_idx:
            mono[j] = e[i]
        term = Poly._make(names_t, {tuple(mono): c})
        for i, bp in bound_idx:
            k = e[i]
            if not k:
                continue
            pw = powers.get((i, k))
            if pw is None:
                pw = bp ** k
                powers[(i, k)] = pw
            term = term * pw
            if term.is_zero():
                break
        for te, tc in term._terms.items():
            prev = acc.get(te)
            acc[te] = tc if prev is None else prev + tc
    return Poly._make(names_t, {e: c for e, c in acc.items() if not c.is_zero()})


def _divide(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    """Single-divisor division under graded-lex; returns (quotient, remainder)."""
    if den.is_zero():
        raise NotDivisible("division by the zero polynomial", {"num": num.to_text()})
    names = _merged(num, den)
    work = dict(_lift(num, names))
    dterms = _lift(den, names)
    lead_e, lead_c = max(dterms.items(), key=lambda t: grlex_key(t[0]))
    inv = lead_c.inverse()
    quot: Dict[Exps, GaussRat] = {}
    rem: Dict[Exps, GaussRat] = {}
    while work:
        e, c = max(work.items(), key=lambda t: grlex_key(t[0]))
        if all(x >= y for x, y in zip(e, lead_e)):
            qe = tuple(x - y for x, y in zip(e, lead_e))
            qc = c * inv
            quot[qe] = qc
            for de, dc in dterms.items():
                te = tuple(x + y for x, y in zip(de, qe))
                s = work.get(te, GaussRat(0)) - qc * dc
                if s.is_zero():
                    work.pop(te, None)
                else:
                    work[te] = s
        else:
            rem[e] = c
            del work[e]
    return Poly._make(names, quot), Poly._make(names, rem)


def exact_divide(num: Poly, den) -> Poly:
    den = _as_poly(den)
    q, r = _divide(num, den)
    if not r.is_zero():
        raise NotDivisible(
            "polynomial division leaves a remainder",
            {"num": num.to_text(), "den": den.to_text(), "remainder": r.to_text()},
        )
    return q


def divides(den: Poly, num: Poly) -> Optional[Poly]:
    """Quotient num/den when den divides num exactly, else None."""
    if den.is_zero():
        return None
    q, r = _divide(num, den)
    return q if r.is_zero() else None


def reduce_mod_usq(p: Poly, u_name: str = "U", z_name: str = "Z") -> Tuple[Poly, Poly]:
    """Divide by U^2 + Z treating p as a polynomial in U.

    Returns (quotient, remainder) with p = (U^2 + Z)*quotient + remainder and
    the remainder of U-degree at most 1.
    """
    u = Poly.var(u_name)
    divisor = u * u + Poly.var(z_name)
    quot = Poly.zero(p.vars)
    rem = p
    while True:
        d = rem.degree(u_name)
        if d <= 1:
            break
        lead = rem.coefficients_in(u_name)[d]
        q = lead * u ** (d - 2)
        quot = quot + q
        rem = rem - q * divisor
    return quot, rem


def derivative(p: Poly, name: str) -> Poly:
    if name not in p.vars:
        return Poly.zero(p.vars)
    i = p.vars.index(name)
    out: Dict[Exps, GaussRat] = {}
    for e, c in p.terms.items():
        k = e[i]
        if k:
            out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
    return Poly._make(p.vars, out)


# -----------------------------
# Canonical text
# -----------------------------
def coefficient_text(c: GaussRat) -> str:
    return c.to_text()


def monomial_text(names: Sequence[str], e: Sequence[int]) -> str:
    return "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(names, e) if k)


def poly_to_text(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out: List[str] = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = monomial_text(p.vars, e)
        if not c.im:
            neg = c.re < 0
            mag = -c.re if neg else c.re
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
        else:
            neg = False
            coef = _complex_text(c)
            body = f"{coef}*{mono}" if mono else coef
        if idx == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names: List[str] = list(names)
        self.toks: List[Tuple[str, str]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                break
            pos = m.end()
            if m.group(1):
                self.toks.append(("num", m.group(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3)))
        self.i = 0

    def fail(self, why: str):
        raise ParseError(f"cannot parse polynomial: {why}", {"text": self.text, "at_token": self.i})

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> Tuple[str, str]:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        self.i += 1
        return tok

    def is_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    def expr(self) -> Poly:
        if self.is_op("+", "-"):
            neg = self.take()[1] == "-"
            acc = self.term()
            if neg:
                acc = -acc
        else:
            acc = self.term()
        while self.is_op("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.is_op("*", "/"):
            op = self.take()[1]
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    self.fail("division by a non-constant or zero")
                acc = acc.scale(f.as_constant().inverse())
        return acc

    def factor(self) -> Poly:
        if self.is_op("-"):
            self.take()
            return -self.factor()
        base = self.atom()
        if self.is_op("^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(int(val))
        if kind == "name":
            if val == "i":
                return Poly.const(I)
            if val not in self.names:
                self.names.append(val)
            return Poly.var(val)
        if val == "(":
            inner = self.expr()
            if not self.is_op(")"):
                self.fail("missing ')'")
            self.take()
            return inner
        self.fail(f"unexpected {val!r}")

    def run(self) -> Poly:
        if not self.toks:
            self.fail("empty input")
        p = self.expr()
        if self.peek() is not None:
            self.fail(f"trailing input {self.peek()[1]!r}")
        return p.with_vars(self.names)


def parse(text: str, vars: Sequence[str] = ()) -> Poly:
    """Parse canonical text (or any +,-,*,/,^ expression with integer constants).

    The result is declared over `vars` followed by new names in order of
    first appearance. `i` is the imaginary unit.
    """
    return _Parser(text, vars).run()
