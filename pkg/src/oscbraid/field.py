"""Exact arithmetic in the rational function field Q(q, Q1).

Elements are quotients num/den of bivariate polynomials with Fraction
coefficients, kept in a canonical form: num and den share no common factor,
and den has leading coefficient 1 in the lex order with q < Q1.  Negative
powers of the generators (Laurent input) are cleared into the denominator
at construction time.

Polynomials are dicts mapping exponent pairs (e_q, e_Q1) to Fraction; the
gcd is computed by a primitive polynomial remainder sequence over Q[q][Q1].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Coeff = Fraction
Monomial = tuple[int, int]  # (exponent of q, exponent of Q1)
PolyDict = dict[Monomial, Fraction]

Scalar = Union[int, Fraction, "FieldElem"]


class EvalPole(ArithmeticError):
    """Raised when evaluation or substitution hits a zero denominator."""


class FieldParseError(ValueError):
    """Raised on malformed input to parse_field."""


# ---------------------------------------------------------------------------
# polynomial layer: dict-based bivariate polynomials over Q
# ---------------------------------------------------------------------------

def _pclean(d: PolyDict) -> PolyDict:
    return {m: c for m, c in d.items() if c != 0}


def _padd(a: PolyDict, b: PolyDict) -> PolyDict:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, _ZERO_FR) + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


def _pneg(a: PolyDict) -> PolyDict:
    return {m: -c for m, c in a.items()}


def _pmul(a: PolyDict, b: PolyDict) -> PolyDict:
    if not a or not b:
        return {}
    out: PolyDict = {}
    for (e1, f1), c1 in a.items():
        for (e2, f2), c2 in b.items():
            m = (e1 + e2, f1 + f2)
            s = out.get(m, _ZERO_FR) + c1 * c2
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def _pscale(a: PolyDict, c: Fraction) -> PolyDict:
    if c == 0:
        return {}
    return {m: k * c for m, k in a.items()}


_ZERO_FR = Fraction(0)
_P_ONE: PolyDict = {(0, 0): Fraction(1)}


def _lexkey(m: Monomial) -> tuple[int, int]:
    # lex with q < Q1: the Q1 exponent dominates
    return (m[1], m[0])


def _plead(a: PolyDict) -> Monomial:
    return max(a, key=_lexkey)


# univariate helpers over Q[q], represented as dict[int, Fraction]

def _u_divmod(a: dict[int, Fraction], b: dict[int, Fraction]):
    q_: dict[int, Fraction] = {}
    r = dict(a)
    db = max(b)
    lb = b[db]
    while r and max(r) >= db:
        dr = max(r)
        c = r[dr] / lb
        q_[dr - db] = q_.get(dr - db, _ZERO_FR) + c
        for e, k in b.items():
            m = dr - db + e
            s = r.get(m, _ZERO_FR) - c * k
            if s:
                r[m] = s
            elif m in r:
                del r[m]
    return q_, r


def _u_gcd(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    a = {e: c for e, c in a.items() if c}
    b = {e: c for e, c in b.items() if c}
    while b:
        _, r = _u_divmod(a, b)
        a, b = b, {e: c for e, c in r.items() if c}
    if not a:
        return {}
    lead = a[max(a)]
    return {e: c / lead for e, c in a.items()}


def _nested(a: PolyDict) -> dict[int, dict[int, Fraction]]:
    """View as polynomial in Q1 with coefficients in Q[q]."""
    out: dict[int, dict[int, Fraction]] = {}
    for (eq, eQ), c in a.items():
        out.setdefault(eQ, {})[eq] = c
    return out


def _flat(n: dict[int, dict[int, Fraction]]) -> PolyDict:
    out: PolyDict = {}
    for eQ, coeff in n.items():
        for eq, c in coeff.items():
            if c:
                out[(eq, eQ)] = c
    return out


def _u_mul(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            s = out.get(e1 + e2, _ZERO_FR) + c1 * c2
            if s:
                out[e1 + e2] = s
            elif e1 + e2 in out:
                del out[e1 + e2]
    return out


def _content_q1(a: PolyDict) -> dict[int, Fraction]:
    """gcd over Q[q] of the Q1-coefficients; monic, so a constant gives {0: 1}."""
    g: dict[int, Fraction] = {}
    for coeff in _nested(a).values():
        g = _u_gcd(g, coeff)
        if g == {0: Fraction(1)}:
            break
    return g


def _pp_q1(a: PolyDict, content: dict[int, Fraction]) -> PolyDict:
    if content == {0: Fraction(1)}:
        return a
    n = _nested(a)
    out: dict[int, dict[int, Fraction]] = {}
    for eQ, coeff in n.items():
        quo, rem = _u_divmod(coeff, content)
        if any(rem.values()):
            raise ArithmeticError("content division not exact")
        out[eQ] = quo
    return _flat(out)


def _prem_q1(f: PolyDict, g: PolyDict) -> PolyDict:
    """Pseudo-remainder of f by g, both viewed in Q[q][Q1]."""
    nf, ng = _nested(f), _nested(g)
    dg = max(ng)
    lg = ng[dg]
    r = nf
    while r:
        dr = max(r)
        if dr < dg:
            break
        lr = r[dr]
        # lg * r - lr * g * Q1^(dr-dg)
        new: dict[int, dict[int, Fraction]] = {}
        for eQ, coeff in r.items():
            new[eQ] = _u_mul(coeff, lg)
        for eQ, coeff in ng.items():
            t = _u_mul(coeff, lr)
            tgt = new.setdefault(eQ + dr - dg, {})
            for e, c in t.items():
                s = tgt.get(e, _ZERO_FR) - c
                if s:
                    tgt[e] = s
                elif e in tgt:
                    del tgt[e]
        r = {eQ: c for eQ, c in new.items() if any(c.values())}
        for eQ in list(r):
            r[eQ] = {e: c for e, c in r[eQ].items() if c}
            if not r[eQ]:
                del r[eQ]
    return _flat(r)


def _pgcd(a: PolyDict, b: PolyDict) -> PolyDict:
    """gcd in Q[q, Q1], normalized later by the field element constructor."""
    a, b = _pclean(a), _pclean(b)
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    if a == b:
        return dict(a)
    # monomial fast path: the gcd is the common monomial factor
    if len(a) == 1 or len(b) == 1:
        eq = min(min(m[0] for m in a), min(m[0] for m in b))
        eQ = min(min(m[1] for m in a), min(m[1] for m in b))
        return {(eq, eQ): Fraction(1)}
    ca, cb = _content_q1(a), _content_q1(b)
    pa, pb = _pp_q1(a, ca), _pp_q1(b, cb)
    cg = _u_gcd(ca, cb)
    # primitive PRS in Q1
    while pb:
        r = _prem_q1(pa, pb)
        r = _pclean(r)
        if r:
            r = _pp_q1(r, _content_q1(r))
        pa, pb = pb, r
    # if the PRS collapsed to a q-only polynomial the gcd is its content times cg
    res = _pmul(pa, _flat({0: cg}))
    return res


def _pdivexact(f: PolyDict, d: PolyDict) -> PolyDict:
    """Exact division f/d in Q[q, Q1] by lex leading-term cancellation."""
    if not f:
        return {}
    if d == _P_ONE:
        return dict(f)
    out: PolyDict = {}
    r = dict(f)
    ld = _plead(d)
    cd = d[ld]
    while r:
        lr = _plead(r)
        me = (lr[0] - ld[0], lr[1] - ld[1])
        if me[0] < 0 or me[1] < 0:
            raise ArithmeticError("division not exact")
        c = r[lr] / cd
        out[me] = c
        for m, k in d.items():
            mm = (m[0] + me[0], m[1] + me[1])
            s = r.get(mm, _ZERO_FR) - c * k
            if s:
                r[mm] = s
            elif mm in r:
                del r[mm]
    return out


def _peval(a: PolyDict, qv, Q1v):
    total = None
    for (eq, eQ), c in a.items():
        term = c * qv**eq * Q1v**eQ
        total = term if total is None else total + term
    if total is None:
        if isinstance(qv, Fraction) and isinstance(Q1v, Fraction):
            return Fraction(0)
        return 0.0
    return total


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumericPoint:
    """A numeric parameter point (q, Q1); exact if both values are Fraction."""
    q: Union[Fraction, int, float, complex]
    Q1: Union[Fraction, int, float, complex]

    def is_exact(self) -> bool:
        return isinstance(self.q, (Fraction, int)) and isinstance(self.Q1, (Fraction, int))

    def values(self):
        if self.is_exact():
            return Fraction(self.q), Fraction(self.Q1)
        return self.q, self.Q1


class FieldElem:
    """Element of Q(q, Q1) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: PolyDict, den: PolyDict, reduce: bool = True):
        num = _pclean(num)
        den = _pclean(den)
        if not den:
            raise ZeroDivisionError("zero denominator in field element")
        if not num:
            den = dict(_P_ONE)
        elif reduce and den != _P_ONE:
            g = _pgcd(num, den)
            if g != _P_ONE:
                num = _pdivexact(num, g)
                den = _pdivexact(den, g)
        if num:
            lc = den[_plead(den)]
            if lc != 1:
                inv = 1 / lc
                num = _pscale(num, inv)
                den = _pscale(den, inv)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_fraction(c: Union[int, Fraction]) -> "FieldElem":
        c = Fraction(c)
        return FieldElem({(0, 0): c} if c else {}, dict(_P_ONE), reduce=False)

    @staticmethod
    def monomial(c: Union[int, Fraction], eq: int = 0, eQ1: int = 0) -> "FieldElem":
        """c * q^eq * Q1^eQ1 with exponents of either sign."""
        c = Fraction(c)
        if c == 0:
            return FE_ZERO
        num = {(max(eq, 0), max(eQ1, 0)): c}
        den = {(max(-eq, 0), max(-eQ1, 0)): Fraction(1)}
        return FieldElem(num, den, reduce=False)

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.num == _P_ONE and self.den == _P_ONE

    def __bool__(self) -> bool:
        return bool(self.num)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem.from_fraction(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        if self.den == o.den:
            return FieldElem(_padd(self.num, o.num), dict(self.den))
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return FieldElem(num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(_pneg(self.num), dict(self.den), reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return FE_ZERO
        return FieldElem(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inv(self) -> "FieldElem":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        return FieldElem(dict(self.den), dict(self.num), reduce=False)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return FE_ONE
        base = self if n > 0 else self.inv()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))
            self._hash = h
        return h

    # -- evaluation and substitution -----------------------------------------

    def eval(self, point: NumericPoint):
        """Evaluate at a numeric point; exact for Fraction coordinates.

        Raises EvalPole when the denominator vanishes at the point.
        """
        qv, Q1v = point.values()
        dv = _peval(self.den, qv, Q1v)
        if dv == 0:
            raise EvalPole(f"denominator vanishes at q={point.q}, Q1={point.Q1}")
        return _peval(self.num, qv, Q1v) / dv

    def substitute(self, q: Scalar | None = None, Q1: Scalar | None = None) -> "FieldElem":
        """Substitute field elements (or rationals) for one or both generators."""
        if q is None and Q1 is None:
            return self
        qv = QVAR if q is None else (q if isinstance(q, FieldElem) else FieldElem.from_fraction(q))
        Q1v = Q1VAR if Q1 is None else (Q1 if isinstance(Q1, FieldElem) else FieldElem.from_fraction(Q1))

        def subpoly(p: PolyDict) -> FieldElem:
            total = FE_ZERO
            powcache_q: dict[int, FieldElem] = {}
            powcache_Q: dict[int, FieldElem] = {}
            for (eq, eQ), c in p.items():
                tq = powcache_q.get(eq)
                if tq is None:
                    tq = qv**eq
                    powcache_q[eq] = tq
                tQ = powcache_Q.get(eQ)
                if tQ is None:
                    tQ = Q1v**eQ
                    powcache_Q[eQ] = tQ
                total = total + FieldElem.from_fraction(c) * tq * tQ
            return total

        den = subpoly(self.den)
        if den.is_zero:
            raise EvalPole("substitution maps denominator to zero")
        return subpoly(self.num) / den

    # -- printing -------------------------------------------------------------

    def to_string(self) -> str:
        num_s, num_terms = _poly_string(self.num)
        if self.den == _P_ONE:
            return num_s
        den_s, den_terms = _poly_string(self.den)
        left = f"({num_s})" if num_terms > 1 else num_s
        right = f"({den_s})" if den_terms > 1 or "*" in den_s else den_s
        return f"{left}/{right}"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"FieldElem({self.to_string()!r})"


def _mono_string(m: Monomial, c: Fraction) -> str:
    parts = []
    if abs(c) != 1 or m == (0, 0):
        parts.append(str(abs(c)))
    if m[0]:
        parts.append("q" if m[0] == 1 else f"q^{m[0]}")
    if m[1]:
        parts.append("Q1" if m[1] == 1 else f"Q1^{m[1]}")
    return "*".join(parts)


def _poly_string(p: PolyDict) -> tuple[str, int]:
    if not p:
        return "0", 1
    monos = sorted(p, key=_lexkey, reverse=True)
    out = []
    for i, m in enumerate(monos):
        c = p[m]
        if i == 0:
            prefix = "-" if c < 0 else ""
        else:
            prefix = " - " if c < 0 else " + "
        out.append(prefix + _mono_string(m, c))
    return "".join(out), len(monos)


FE_ZERO = FieldElem({}, dict(_P_ONE), reduce=False)
FE_ONE = FieldElem(dict(_P_ONE), dict(_P_ONE), reduce=False)
QVAR = FieldElem({(1, 0): Fraction(1)}, dict(_P_ONE), reduce=False)
Q1VAR = FieldElem({(0, 1): Fraction(1)}, dict(_P_ONE), reduce=False)


def fe(x: Union[int, Fraction, str, FieldElem]) -> FieldElem:
    """Convenience coercion: ints, Fractions and grammar strings to FieldElem."""
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem.from_fraction(x)
    if isinstance(x, str):
        return parse_field(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to FieldElem")


# ---------------------------------------------------------------------------
# parser for the expression grammar: integers, q, Q1, + - * / ^ ( )
# ---------------------------------------------------------------------------

_TOKEN_CHARS = set("+-*/^()")


def _tokenize(s: str) -> list[str]:
    toks: list[str] = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch in _TOKEN_CHARS:
            toks.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            toks.append(s[i:j])
            i = j
        elif s.startswith("Q1", i):
            toks.append("Q1")
            i += 2
        elif ch == "q":
            toks.append("q")
            i += 1
        else:
            raise FieldParseError(f"unexpected character {ch!r} in {s!r}")
    return toks


class _Parser:
    def __init__(self, toks: list[str]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        t = self.peek()
        if t is None:
            raise FieldParseError("unexpected end of input")
        self.pos += 1
        return t

    def expr(self) -> FieldElem:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> FieldElem:
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.factor()
            if op == "*":
                v = v * rhs
            else:
                if rhs.is_zero:
                    raise ZeroDivisionError("division by zero in expression")
                v = v / rhs
        return v

    def factor(self) -> FieldElem:
        if self.peek() == "-":
            self.next()
            return -self.factor()
        if self.peek() == "+":
            self.next()
            return self.factor()
        return self.power()

    def power(self) -> FieldElem:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            t = self.next()
            if not t.isdigit():
                raise FieldParseError(f"expected integer exponent, got {t!r}")
            return base ** (sign * int(t))
        return base

    def atom(self) -> FieldElem:
        t = self.next()
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise FieldParseError("missing closing parenthesis")
            return v
        if t == "q":
            return QVAR
        if t == "Q1":
            return Q1VAR
        if t.isdigit():
            return FieldElem.from_fraction(int(t))
        raise FieldParseError(f"unexpected token {t!r}")


def parse_field(s: str) -> FieldElem:
    """Parse an expression in q, Q1 with + - * / ^ and integer constants."""
    toks = _tokenize(s)
    if not toks:
        raise FieldParseError("empty expression")
    p = _Parser(toks)
    v = p.expr()
    if p.peek() is not None:
        raise FieldParseError(f"trailing input at token {p.peek()!r}")
    return v
