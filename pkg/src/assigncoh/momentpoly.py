"""Polynomial moment data for linear torus actions.

A moment polynomial collects terms beta * z^k * zbar^l with rational
covector coefficients beta.  The membership criterion asks each beta to lie
in the span of the weights of the variables actually present in its
monomial; when it holds the polynomial splits as
sum_j (z_j f_j + zbar_j g_j) alpha_j with scalar polynomial cofactors,
computed here by a deterministic per-monomial solve.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .builders import WeightMatrix
from .errors import (
    ArityError,
    ConditionFailedError,
    NonzeroConstantTermError,
    ParseError,
)
from .ratlin import RatMatrix, rank, solve

ExpPair = Tuple[Tuple[int, ...], Tuple[int, ...]]   # (k, l) exponent vectors


def _exp_text(k: Sequence[int], l: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(k):
        if e == 1:
            parts.append(f"z{i + 1}")
        elif e > 1:
            parts.append(f"z{i + 1}^{e}")
    for i, e in enumerate(l):
        if e == 1:
            parts.append(f"zb{i + 1}")
        elif e > 1:
            parts.append(f"zb{i + 1}^{e}")
    return " ".join(parts)


class MomentPolynomial:
    """Finitely many terms (k, l) -> beta, zero coefficients dropped."""

    __slots__ = ("weights", "terms")

    def __init__(self, weights: WeightMatrix, terms: Dict[ExpPair, Sequence[Fraction]]):
        self.weights = weights
        clean = {}
        for key, vec in terms.items():
            v = tuple(Fraction(x) for x in vec)
            if len(v) != weights.torus_dim:
                raise ArityError(
                    f"coefficient has length {len(v)}, expected {weights.torus_dim}"
                )
            if any(v):
                clean[key] = v
        self.terms = clean

    def __eq__(self, other):
        return (
            isinstance(other, MomentPolynomial)
            and self.weights == other.weights
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.weights, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"MomentPolynomial({self.to_text()!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "MomentPolynomial") -> "MomentPolynomial":
        if self.weights != other.weights:
            raise ValueError("polynomials over different weight matrices")
        out = dict(self.terms)
        for key, vec in other.terms.items():
            cur = out.get(key)
            out[key] = vec if cur is None else tuple(a + b for a, b in zip(cur, vec))
        return MomentPolynomial(self.weights, out)

    def scale(self, c) -> "MomentPolynomial":
        c = Fraction(c)
        return MomentPolynomial(
            self.weights,
            {key: tuple(c * x for x in vec) for key, vec in self.terms.items()},
        )

    def to_text(self) -> str:
        if not self.terms:
            n = self.weights.torus_dim
            return "[" + ",".join(["0"] * n) + "]"
        chunks = []
        for (k, l) in sorted(self.terms):
            vec = self.terms[(k, l)]
            head = "[" + ",".join(str(x) for x in vec) + "]"
            tail = _exp_text(k, l)
            chunks.append(head + (" " + tail if tail else ""))
        return " + ".join(chunks)


class ScalarPoly:
    """Rational-coefficient polynomial in z, zbar; used for the cofactors."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Optional[Dict[ExpPair, Fraction]] = None):
        self.d = d
        self.terms = {
            key: Fraction(c) for key, c in (terms or {}).items() if c != 0
        }

    def __eq__(self, other):
        return isinstance(other, ScalarPoly) and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"ScalarPoly({self.to_text()!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def added(self, key: ExpPair, c: Fraction) -> None:
        cur = self.terms.get(key, Fraction(0)) + c
        if cur == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = cur

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (k, l) in sorted(self.terms):
            c = self.terms[(k, l)]
            tail = _exp_text(k, l)
            if not tail:
                chunks.append(str(c))
            elif c == 1:
                chunks.append(tail)
            elif c == -1:
                chunks.append("-" + tail)
            else:
                chunks.append(f"{c} {tail}")
        return " + ".join(chunks)


@dataclass(frozen=True)
class FormCoefficients:
    """Cofactor pairs (f_j, g_j), one per complex coordinate."""

    weights: WeightMatrix
    pairs: Tuple[Tuple[ScalarPoly, ScalarPoly], ...]

    def one_form_text(self) -> str:
        """Invariant primitive one-form, written out coordinate by coordinate."""
        inner = []
        for j, (f, g) in enumerate(self.pairs):
            inner.append(f"({f.to_text()}) dz{j + 1} - ({g.to_text()}) dzb{j + 1}")
        return "mu = -sqrt(-1) * [ " + " + ".join(inner) + " ]"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<var>zb?\d+)|(?P<num>\d+)|(?P<punct>[\[\],+\-*/^]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[at]!r}", at)
        if m.lastgroup == "var":
            tokens.append(("var", m.group("var"), m.start("var")))
        elif m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        else:
            tokens.append((m.group("punct"), m.group("punct"), m.start("punct")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, weights: WeightMatrix):
        self.tokens = _tokenize(text)
        self.i = 0
        self.weights = weights

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def rational(self) -> Fraction:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        num_tok = self.take("num")
        value = Fraction(int(num_tok[1]))
        if self.peek()[0] == "/":
            self.take()
            den_tok = self.take("num")
            if int(den_tok[1]) == 0:
                raise ParseError("zero denominator", den_tok[2])
            value /= int(den_tok[1])
        return sign * value

    def vector(self) -> Tuple[Fraction, ...]:
        open_tok = self.take("[")
        entries = []
        if self.peek()[0] != "]":
            entries.append(self.rational())
            while self.peek()[0] == ",":
                self.take()
                entries.append(self.rational())
        self.take("]")
        if len(entries) != self.weights.torus_dim:
            raise ArityError(
                f"coefficient vector has length {len(entries)}, "
                f"expected {self.weights.torus_dim} (at position {open_tok[2]})"
            )
        return tuple(entries)

    def term(self) -> Tuple[ExpPair, Tuple[Fraction, ...]]:
        vec = self.vector()
        d = self.weights.count
        k, l = [0] * d, [0] * d
        while self.peek()[0] in ("*", "var"):
            if self.peek()[0] == "*":
                self.take()
            var_tok = self.take("var")
            name = var_tok[1]
            conj = name.startswith("zb")
            idx = int(name[2:] if conj else name[1:])
            if not 1 <= idx <= d:
                raise ArityError(
                    f"variable {name} out of range for {d} coordinates "
                    f"(at position {var_tok[2]})"
                )
            exp = 1
            if self.peek()[0] == "^":
                self.take()
                exp = int(self.take("num")[1])
            (l if conj else k)[idx - 1] += exp
        return (tuple(k), tuple(l)), vec

    def poly(self) -> MomentPolynomial:
        terms: Dict[ExpPair, List[Fraction]] = {}

        def absorb(sign: int):
            key, vec = self.term()
            cur = terms.setdefault(key, [Fraction(0)] * self.weights.torus_dim)
            for j, x in enumerate(vec):
                cur[j] += sign * x
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        absorb(sign)
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            absorb(sign)
        self.take("end")
        return MomentPolynomial(self.weights, {k: tuple(v) for k, v in terms.items()})


def parse_poly(text: str, weights: WeightMatrix) -> MomentPolynomial:
    """Parse `[c,...] z1^a zb2^b + ...`; raises ParseError or ArityError."""
    return _Parser(text, weights).poly()


# ---------------------------------------------------------------------------
# criterion and decomposition

@dataclass(frozen=True)
class MomentReport:
    """Outcome of the per-monomial span test."""

    failing: Tuple[ExpPair, ...]

    @property
    def ok(self) -> bool:
        return not self.failing


def _support(key: ExpPair) -> List[int]:
    k, l = key
    return [i for i in range(len(k)) if k[i] or l[i]]


def check_moment_condition(p: MomentPolynomial) -> MomentReport:
    """Each coefficient must lie in the span of its monomial's weights."""
    d = p.weights.count
    zero_key = ((0,) * d, (0,) * d)
    if zero_key in p.terms:
        raise NonzeroConstantTermError(
            "polynomial has a nonzero constant term; it must vanish at the origin"
        )
    failing = []
    for key in sorted(p.terms):
        beta = p.terms[key]
        rows = [p.weights.rows[i] for i in _support(key)]
        base = rank(RatMatrix.from_rows(rows)) if rows else 0
        extended = rank(RatMatrix.from_rows(rows + [beta]))
        if extended != base:
            failing.append(key)
    return MomentReport(tuple(failing))


def decompose(p: MomentPolynomial) -> FormCoefficients:
    """Split p as sum_j (z_j f_j + zbar_j g_j) alpha_j.

    Per monomial the coefficient is solved over the supported weights with
    smallest-index pivots and free variables zero; each contribution factors
    out z_i when possible, zbar_i otherwise.
    """
    report = check_moment_condition(p)
    if not report.ok:
        raise ConditionFailedError(report.failing)
    d, n = p.weights.count, p.weights.torus_dim
    fs = [ScalarPoly(d) for _ in range(d)]
    gs = [ScalarPoly(d) for _ in range(d)]
    for key in sorted(p.terms):
        beta = p.terms[key]
        support = _support(key)
        cols = RatMatrix.from_rows(
            [[p.weights.rows[i][r] for i in support] for r in range(n)]
        )
        lam = solve(cols, list(beta))
        assert lam is not None, "criterion passed but solve failed"
        k, l = key
        for pos, i in enumerate(support):
            if lam[pos] == 0:
                continue
            if k[i] > 0:
                smaller = tuple(e - (j == i) for j, e in enumerate(k))
                fs[i].added((smaller, l), lam[pos])
            else:
                smaller = tuple(e - (j == i) for j, e in enumerate(l))
                gs[i].added((k, smaller), lam[pos])
    return FormCoefficients(p.weights, tuple(zip(fs, gs)))


def recombine(fc: FormCoefficients) -> MomentPolynomial:
    """Expand sum_j (z_j f_j + zbar_j g_j) alpha_j back into a polynomial."""
    w = fc.weights
    terms: Dict[ExpPair, List[Fraction]] = {}

    def bump(key: ExpPair, c: Fraction, alpha: Sequence[int]):
        cur = terms.setdefault(key, [Fraction(0)] * w.torus_dim)
        for r in range(w.torus_dim):
            cur[r] += c * alpha[r]

    for j, (f, g) in enumerate(fc.pairs):
        alpha = w.rows[j]
        for (k, l), c in f.terms.items():
            bigger = tuple(e + (i == j) for i, e in enumerate(k))
            bump((bigger, l), c, alpha)
        for (k, l), c in g.terms.items():
            bigger = tuple(e + (i == j) for i, e in enumerate(l))
            bump((k, bigger), c, alpha)
    return MomentPolynomial(w, {key: tuple(v) for key, v in terms.items()})


def verify_decomposition(p: MomentPolynomial, fc: FormCoefficients) -> bool:
    """Exact term-map comparison of p against the recombined cofactors."""
    return fc.weights == p.weights and recombine(fc) == p
