"""Noncommutative polynomial arithmetic and length-2 rewrite systems.

Words are tuples of generator names; polynomials map words to coefficients
in Q(q, Q1) (or any duck-compatible ring).  A RewriteSystem carries rules
whose left sides are length-2 words; normal forms are computed by repeated
leftmost reduction with a global step budget, and local confluence is
checked on all degree-3 overlap words.

The braided tensor square of an algebra is built by tagging two copies of
the generators and adding cross rules that move right-copy letters past
left-copy letters; with the braiding matrix as cross coefficients this is
exactly the hexagon extension of the braiding to products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .field import FE_ONE, fe, parse_field

Word = tuple[str, ...]

EMPTY_WORD: Word = ()

DEFAULT_BUDGET = 10**6


class Divergence(RuntimeError):
    """Normal-form computation exceeded its rewrite step budget."""


@dataclass(frozen=True)
class Generator:
    """A generator with its star partner and rewrite rank.

    Rules are expected to rewrite toward words that descend in rank rightward;
    the rank is bookkeeping for presentations, termination is not proved here.
    """
    name: str
    star: str
    rank: int


class NCPoly:
    """Noncommutative polynomial: dict from words to coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                if not _is_zero_coeff(c):
                    t[tuple(w)] = c
        self.terms = t

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly()

    @staticmethod
    def one() -> "NCPoly":
        return NCPoly({EMPTY_WORD: FE_ONE})

    @staticmethod
    def gen(name: str, coeff=FE_ONE) -> "NCPoly":
        return NCPoly({(name,): coeff})

    @staticmethod
    def word(w: Iterable[str], coeff=FE_ONE) -> "NCPoly":
        return NCPoly({tuple(w): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if _is_zero_coeff(s):
                out.pop(w, None)
            else:
                out[w] = s
        p = NCPoly.__new__(NCPoly)
        p.terms = out
        return p

    def __neg__(self) -> "NCPoly":
        p = NCPoly.__new__(NCPoly)
        p.terms = {w: -c for w, c in self.terms.items()}
        return p

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        out: dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if _is_zero_coeff(s):
                    out.pop(w, None)
                else:
                    out[w] = s
        p = NCPoly.__new__(NCPoly)
        p.terms = out
        return p

    def scale(self, c) -> "NCPoly":
        if _is_zero_coeff(c):
            return NCPoly()
        p = NCPoly.__new__(NCPoly)
        p.terms = {w: c * k for w, k in self.terms.items()}
        return p

    def map_coeffs(self, f: Callable) -> "NCPoly":
        return NCPoly({w: f(c) for w, c in self.terms.items()})

    def map_words(self, f: Callable[[Word], Word]) -> "NCPoly":
        out: dict[Word, object] = {}
        for w, c in self.terms.items():
            nw = f(w)
            s = out.get(nw)
            s = c if s is None else s + c
            if not _is_zero_coeff(s):
                out[nw] = s
            else:
                out.pop(nw, None)
        p = NCPoly.__new__(NCPoly)
        p.terms = out
        return p

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"NCPoly({self.to_string()})"

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            cs = c.to_string() if hasattr(c, "to_string") else str(c)
            ws = " ".join(w) if w else "1"
            parts.append(f"({cs}) {ws}")
        return " + ".join(parts)


def _is_zero_coeff(c) -> bool:
    z = getattr(c, "is_zero", None)
    if z is not None:
        return bool(z)
    return c == 0


class RewriteSystem:
    """Length-2 rewrite rules over a fixed generator list."""

    def __init__(self, generators: list[Generator], rules: Mapping[tuple[str, str], NCPoly]):
        self.generators = list(generators)
        self.by_name = {g.name: g for g in self.generators}
        if len(self.by_name) != len(self.generators):
            raise ValueError("duplicate generator names")
        for g in self.generators:
            if g.star not in self.by_name:
                raise ValueError(f"star partner {g.star!r} of {g.name!r} not a generator")
        self.rules = {tuple(k): v for k, v in rules.items()}
        for lhs in self.rules:
            if len(lhs) != 2 or any(x not in self.by_name for x in lhs):
                raise ValueError(f"bad rule left side {lhs!r}")

    # -- reduction ----------------------------------------------------------

    def is_normal(self, w: Word) -> bool:
        return all((w[i], w[i + 1]) not in self.rules for i in range(len(w) - 1))

    def reduce_once(self, w: Word) -> NCPoly | None:
        """Rewrite the leftmost reducible pair of w, or None if w is normal."""
        for i in range(len(w) - 1):
            rhs = self.rules.get((w[i], w[i + 1]))
            if rhs is not None:
                prefix, suffix = w[:i], w[i + 2:]
                return NCPoly({prefix + m + suffix: c for m, c in rhs.terms.items()})
        return None

    def normal_form(self, p: NCPoly, budget: int = DEFAULT_BUDGET) -> NCPoly:
        """Fully reduce p; raises Divergence if the step budget is exhausted."""
        pending = dict(p.terms)
        done: dict[Word, object] = {}
        steps = 0
        while pending:
            w, c = pending.popitem()
            red = self.reduce_once(w)
            if red is None:
                s = done.get(w)
                s = c if s is None else s + c
                if _is_zero_coeff(s):
                    done.pop(w, None)
                else:
                    done[w] = s
                continue
            steps += 1
            if steps > budget:
                raise Divergence(f"rewrite budget {budget} exhausted")
            for m, k in red.terms.items():
                add = c * k
                s = pending.get(m)
                s = add if s is None else s + add
                if _is_zero_coeff(s):
                    pending.pop(m, None)
                else:
                    pending[m] = s
        out = NCPoly.__new__(NCPoly)
        out.terms = done
        return out

    def nf_word(self, w: Iterable[str], budget: int = DEFAULT_BUDGET) -> NCPoly:
        return self.normal_form(NCPoly.word(w), budget)

    # -- confluence ---------------------------------------------------------

    def overlap_words(self) -> Iterator[Word]:
        """All degree-3 words xyz with (x,y) and (y,z) both reducible."""
        for (x, y) in self.rules:
            for (y2, z) in self.rules:
                if y == y2:
                    yield (x, y, z)

    def check_confluence(self, budget: int = DEFAULT_BUDGET) -> list[tuple[Word, NCPoly]]:
        """Reduce every overlap word both ways; returns the failures.

        Each failure is (word, difference of the two normal forms); an empty
        list certifies local confluence on degree-3 overlaps.
        """
        failures = []
        for w in self.overlap_words():
            left = self.normal_form(self._rewrite_at(w, 0), budget)
            right = self.normal_form(self._rewrite_at(w, 1), budget)
            diff = left - right
            if not diff.is_zero:
                failures.append((w, diff))
        return failures

    def _rewrite_at(self, w: Word, i: int) -> NCPoly:
        rhs = self.rules[(w[i], w[i + 1])]
        prefix, suffix = w[:i], w[i + 2:]
        return NCPoly({prefix + m + suffix: c for m, c in rhs.terms.items()})

    # -- star structure -----------------------------------------------------

    def star(self, p: NCPoly) -> NCPoly:
        """Antilinear involution: reverse words, star each letter.

        Coefficients live in Q(q, Q1) with q, Q1 real, so conjugation fixes them.
        """
        smap = {g.name: g.star for g in self.generators}
        return p.map_words(lambda w: tuple(smap[x] for x in reversed(w)))

    # -- enumeration --------------------------------------------------------

    def normal_words(self, degree: int) -> list[Word]:
        """All normal words of the given length, in lexicographic generator order."""
        names = [g.name for g in self.generators]
        out: list[Word] = []

        def extend(w: Word):
            if len(w) == degree:
                out.append(w)
                return
            for x in names:
                if not w or (w[-1], x) not in self.rules:
                    extend(w + (x,))

        extend(EMPTY_WORD)
        return out

    # -- presentation text format --------------------------------------------

    def to_text(self) -> str:
        lines = []
        for g in self.generators:
            lines.append(f"gen {g.name} star={g.star} rank={g.rank}")
        for (x, y) in sorted(self.rules, key=lambda k: (-self.by_name[k[0]].rank, -self.by_name[k[1]].rank)):
            rhs = self.rules[(x, y)]
            lines.append(f"rule {x} {y} -> {rhs.to_string() if rhs else '0'}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "RewriteSystem":
        gens: list[Generator] = []
        rules: dict[tuple[str, str], NCPoly] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("gen "):
                parts = line.split()
                name = parts[1]
                attrs = dict(p.split("=", 1) for p in parts[2:])
                gens.append(Generator(name, attrs["star"], int(attrs["rank"])))
            elif line.startswith("rule "):
                head, rhs_s = line[5:].split("->", 1)
                x, y = head.split()
                rules[(x, y)] = _parse_ncpoly(rhs_s.strip())
            else:
                raise ValueError(f"unrecognized presentation line: {raw!r}")
        return RewriteSystem(gens, rules)


def _parse_ncpoly(s: str) -> NCPoly:
    """Parse '(coeff) w1 w2 + (coeff) w3 + ...' with field-grammar coefficients."""
    if s == "0":
        return NCPoly.zero()
    total = NCPoly.zero()
    # split on top-level ' + ' only; coefficients are parenthesized so this is safe
    for chunk in s.split(" + "):
        chunk = chunk.strip()
        if not chunk.startswith("("):
            raise ValueError(f"bad term {chunk!r}: coefficient must be parenthesized")
        depth = 0
        for i, ch in enumerate(chunk):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    break
        coeff = parse_field(chunk[1:i])
        rest = chunk[i + 1:].strip()
        word = tuple(rest.split()) if rest and rest != "1" else EMPTY_WORD
        total = total + NCPoly({word: coeff})
    return total


# ---------------------------------------------------------------------------
# the deformed oscillator algebra
# ---------------------------------------------------------------------------

A_NAME, AST_NAME, QN_NAME = "a", "a*", "qN"


def oscillator_system(Q1=None, q=None) -> RewriteSystem:
    """Rewrite system of the deformed oscillator algebra.

    Relations: a a* = Q1 a* a + qN qN,  a qN = q qN a,  qN a* = q a* qN.
    Normal words are (a*)^i (qN)^k (a)^j.  Optional arguments specialize the
    two parameters (FieldElem or rational), e.g. Q1=q^2.
    """
    from .field import Q1VAR, QVAR
    Q1v = Q1VAR if Q1 is None else fe(Q1)
    qv = QVAR if q is None else fe(q)
    gens = [
        Generator(AST_NAME, A_NAME, 0),
        Generator(QN_NAME, QN_NAME, 1),
        Generator(A_NAME, AST_NAME, 2),
    ]
    rules = {
        (A_NAME, AST_NAME): NCPoly({(AST_NAME, A_NAME): Q1v, (QN_NAME, QN_NAME): FE_ONE}),
        (A_NAME, QN_NAME): NCPoly({(QN_NAME, A_NAME): qv}),
        (QN_NAME, AST_NAME): NCPoly({(AST_NAME, QN_NAME): qv}),
    }
    return RewriteSystem(gens, rules)


# ---------------------------------------------------------------------------
# braided tensor squares and cubes
# ---------------------------------------------------------------------------

def tagged(name: str, tag: str) -> str:
    return f"{name}.{tag}"


def untag(name: str) -> tuple[str, str]:
    base, _, tag = name.rpartition(".")
    return base, tag


def tensor_square(base: RewriteSystem,
                  cross: Mapping[tuple[str, str], NCPoly]) -> RewriteSystem:
    """Two tagged copies (.L and .R) of base with cross rules.

    cross maps a pair of base names (r, l) to the replacement for the word
    (r.R, l.L), given as an NCPoly over base names where each term must be a
    two-letter word (b, a) standing for (b.L, a.R).  The identity cross rule
    { (r, l): (l, r) } builds the ordinary commuting tensor square.
    """
    gens = []
    for tag in ("L", "R"):
        for g in base.generators:
            # L letters rank below R letters so mixed words sort L-first
            offset = 0 if tag == "L" else len(base.generators)
            gens.append(Generator(tagged(g.name, tag), tagged(g.star, tag), g.rank + offset))
    rules: dict[tuple[str, str], NCPoly] = {}
    for tag in ("L", "R"):
        for (x, y), rhs in base.rules.items():
            rules[(tagged(x, tag), tagged(y, tag))] = rhs.map_words(
                lambda w, t=tag: tuple(tagged(n, t) for n in w))
    for (r, l), rhs in cross.items():
        lhs = (tagged(r, "R"), tagged(l, "L"))
        conv: dict[Word, object] = {}
        for w, c in rhs.terms.items():
            if len(w) != 2:
                raise ValueError("cross rule terms must be two-letter words (b, a)")
            conv[(tagged(w[0], "L"), tagged(w[1], "R"))] = c
        rules[lhs] = NCPoly(conv)
    return RewriteSystem(gens, rules)


def tensor_cube(base: RewriteSystem,
                cross: Mapping[tuple[str, str], NCPoly]) -> RewriteSystem:
    """Three tagged copies (.1, .2, .3) with the same cross rule between
    every higher-numbered copy letter and every lower-numbered copy letter."""
    tags = ("1", "2", "3")
    gens = []
    for i, tag in enumerate(tags):
        for g in base.generators:
            gens.append(Generator(tagged(g.name, tag), tagged(g.star, tag),
                                  g.rank + i * len(base.generators)))
    rules: dict[tuple[str, str], NCPoly] = {}
    for tag in tags:
        for (x, y), rhs in base.rules.items():
            rules[(tagged(x, tag), tagged(y, tag))] = rhs.map_words(
                lambda w, t=tag: tuple(tagged(n, t) for n in w))
    for hi in range(1, 3):
        for lo in range(hi):
            thi, tlo = tags[hi], tags[lo]
            for (r, l), rhs in cross.items():
                conv: dict[Word, object] = {}
                for w, c in rhs.terms.items():
                    if len(w) != 2:
                        raise ValueError("cross rule terms must be two-letter words")
                    conv[(tagged(w[0], tlo), tagged(w[1], thi))] = c
                rules[(tagged(r, thi), tagged(l, tlo))] = NCPoly(conv)
    return RewriteSystem(gens, rules)


def tag_poly(p: NCPoly, tag: str) -> NCPoly:
    return p.map_words(lambda w: tuple(tagged(n, tag) for n in w))
