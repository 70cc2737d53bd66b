"""Sparse polynomial arithmetic in the variables z_1..z_n and their conjugates.

A polynomial is stored as a mapping from monomials to complex coefficients,
where a monomial is a pair of exponent tuples (alpha, beta) representing
z^alpha * conj(z)^beta.  The zero polynomial is the empty map; coefficients
that are exactly zero are never stored.

Two layers of arithmetic live here:

  * ``CxPolynomial`` -- double-precision complex coefficients, the working
    representation for all geometric computations.
  * the parser -- it expands expressions written in x_j, y_j, z_j, conj(z_j)
    over exact Gaussian-rational coefficients (pairs of ``Fraction``) and
    only converts to floats at the very end, so rational input stays exact
    through the substitutions x_j = (z_j + conj z_j)/2 and
    y_j = (z_j - conj z_j)/(2i).

Monomials are ordered graded-lexicographically on the concatenated exponent
tuple (alpha, beta); printing and iteration use that order, which makes text
output and JSON serialisation deterministic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

Monomial = tuple[tuple[int, ...], tuple[int, ...]]

__all__ = [
    "CxPolynomial",
    "HermitianPolynomial",
    "ParseError",
    "NonHermitianError",
    "DegreeCapError",
    "parse_polynomial",
    "parse_defining",
    "poly_norm",
    "wirtinger_derivative",
    "compose_affine",
    "zero",
    "constant",
    "variable",
]


class ParseError(ValueError):
    """Syntax or semantic error in a polynomial expression.

    ``offset`` is the byte offset into the input where the problem starts.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class NonHermitianError(ValueError):
    """Expression is not real-valued; ``pair`` names the offending monomials."""

    def __init__(self, message: str, pair: tuple[Monomial, Monomial]):
        super().__init__(message)
        self.pair = pair


class DegreeCapError(ValueError):
    """A polynomial exceeded the degree cap it is required to satisfy."""


def _grade_key(mono: Monomial) -> tuple:
    alpha, beta = mono
    return (sum(alpha) + sum(beta), alpha + beta)


@dataclass(frozen=True)
class CxPolynomial:
    """Polynomial in (z, conj z) with complex coefficients.

    Instances are immutable; all operations return new polynomials.  The
    ``terms`` dict must never contain exactly-zero coefficients.
    """

    nvars: int
    terms: Mapping[Monomial, complex]

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_terms(nvars: int, terms: Mapping[Monomial, complex]) -> "CxPolynomial":
        clean = {m: complex(c) for m, c in terms.items() if c != 0}
        return CxPolynomial(nvars, clean)

    @staticmethod
    def zero(nvars: int) -> "CxPolynomial":
        return CxPolynomial(nvars, {})

    @staticmethod
    def constant(nvars: int, c: complex) -> "CxPolynomial":
        if c == 0:
            return CxPolynomial.zero(nvars)
        e = (0,) * nvars
        return CxPolynomial(nvars, {(e, e): complex(c)})

    @staticmethod
    def variable(nvars: int, j: int, conjugated: bool = False) -> "CxPolynomial":
        if not 0 <= j < nvars:
            raise IndexError(f"variable index {j} out of range for nvars={nvars}")
        e = [0] * nvars
        e[j] = 1
        zeros = (0,) * nvars
        mono = (zeros, tuple(e)) if conjugated else (tuple(e), zeros)
        return CxPolynomial(nvars, {mono: 1.0 + 0.0j})

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(a) + sum(b) for a, b in self.terms)

    def graded_terms(self) -> Iterator[tuple[Monomial, complex]]:
        """Terms in graded-lexicographic monomial order."""
        for mono in sorted(self.terms, key=_grade_key):
            yield mono, self.terms[mono]

    def homogeneous_part(self, d: int) -> "CxPolynomial":
        sel = {m: c for m, c in self.terms.items() if sum(m[0]) + sum(m[1]) == d}
        return CxPolynomial(self.nvars, sel)

    def is_holomorphic(self) -> bool:
        """True when no conjugated variable occurs."""
        return all(sum(b) == 0 for _, b in self.terms)

    def norm1(self) -> float:
        """Sum of absolute coefficient values; zero iff the polynomial is 0."""
        return float(sum(abs(c) for c in self.terms.values()))

    def chop(self, tol: float) -> "CxPolynomial":
        """Drop coefficients with |c| <= tol (cleanup after float composition)."""
        return CxPolynomial(self.nvars, {m: c for m, c in self.terms.items() if abs(c) > tol})

    def without_constant(self) -> "CxPolynomial":
        e = ((0,) * self.nvars, (0,) * self.nvars)
        if e not in self.terms:
            return self
        t = dict(self.terms)
        del t[e]
        return CxPolynomial(self.nvars, t)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "CxPolynomial") -> "CxPolynomial":
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0j) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return CxPolynomial(self.nvars, out)

    def __sub__(self, other: "CxPolynomial") -> "CxPolynomial":
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, CxPolynomial):
            if self.nvars != other.nvars:
                raise ValueError("nvars mismatch")
            out: dict[Monomial, complex] = {}
            for (a1, b1), c1 in self.terms.items():
                for (a2, b2), c2 in other.terms.items():
                    m = (
                        tuple(x + y for x, y in zip(a1, a2)),
                        tuple(x + y for x, y in zip(b1, b2)),
                    )
                    s = out.get(m, 0j) + c1 * c2
                    if s == 0:
                        out.pop(m, None)
                    else:
                        out[m] = s
            return CxPolynomial(self.nvars, out)
        return self.__rmul__(other)

    def __rmul__(self, scalar) -> "CxPolynomial":
        c = complex(scalar)
        if c == 0:
            return CxPolynomial.zero(self.nvars)
        return CxPolynomial(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __neg__(self) -> "CxPolynomial":
        return (-1.0) * self

    def pow(self, k: int) -> "CxPolynomial":
        if k < 0:
            raise ValueError("negative power")
        result = CxPolynomial.constant(self.nvars, 1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def conjugate(self) -> "CxPolynomial":
        return CxPolynomial(
            self.nvars, {(b, a): c.conjugate() for (a, b), c in self.terms.items()}
        )

    # -- evaluation --------------------------------------------------------

    def eval(self, z: Sequence[complex]) -> complex:
        if len(z) != self.nvars:
            raise ValueError(f"point has dimension {len(z)}, expected {self.nvars}")
        zc = [complex(v) for v in z]
        zb = [v.conjugate() for v in zc]
        # cached powers per variable, up to the max exponent used
        maxa = [0] * self.nvars
        maxb = [0] * self.nvars
        for a, b in self.terms:
            for j in range(self.nvars):
                if a[j] > maxa[j]:
                    maxa[j] = a[j]
                if b[j] > maxb[j]:
                    maxb[j] = b[j]
        pa = [[1.0 + 0j] * (m + 1) for m in maxa]
        pb = [[1.0 + 0j] * (m + 1) for m in maxb]
        for j in range(self.nvars):
            for k in range(1, maxa[j] + 1):
                pa[j][k] = pa[j][k - 1] * zc[j]
            for k in range(1, maxb[j] + 1):
                pb[j][k] = pb[j][k - 1] * zb[j]
        total = 0j
        for (a, b), c in self.terms.items():
            v = c
            for j in range(self.nvars):
                if a[j]:
                    v *= pa[j][a[j]]
                if b[j]:
                    v *= pb[j][b[j]]
            total += v
        return total

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        """Evaluate at an (N, nvars) complex array; returns (N,) complex."""
        pts = np.asarray(pts, dtype=complex)
        if pts.ndim == 1:
            pts = pts[None, :]
        if pts.shape[1] != self.nvars:
            raise ValueError(f"points have dimension {pts.shape[1]}, expected {self.nvars}")
        out = np.zeros(pts.shape[0], dtype=complex)
        conj = pts.conjugate()
        for (a, b), c in self.terms.items():
            v = np.full(pts.shape[0], c, dtype=complex)
            for j in range(self.nvars):
                if a[j]:
                    v *= pts[:, j] ** a[j]
                if b[j]:
                    v *= conj[:, j] ** b[j]
            out += v
        return out

    # -- serialisation -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {
                    "alpha": list(a),
                    "beta": list(b),
                    "re": c.real,
                    "im": c.imag,
                }
                for (a, b), c in self.graded_terms()
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "CxPolynomial":
        terms = {
            (tuple(t["alpha"]), tuple(t["beta"])): complex(t["re"], t["im"])
            for t in d["terms"]
        }
        return CxPolynomial.from_terms(int(d["nvars"]), terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_text(self) -> str:
        """Render in the grammar accepted by the parser (round-trips exactly)."""
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.graded_terms():
            factors = []
            for j, e in enumerate(a):
                if e == 1:
                    factors.append(f"z{j + 1}")
                elif e > 1:
                    factors.append(f"z{j + 1}^{e}")
            for j, e in enumerate(b):
                if e == 1:
                    factors.append(f"conj(z{j + 1})")
                elif e > 1:
                    factors.append(f"conj(z{j + 1})^{e}")
            coeff = _format_complex(c)
            parts.append("*".join([coeff] + factors) if factors else coeff)
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


def _format_complex(c: complex) -> str:
    re, im = c.real, c.imag
    if im == 0:
        return _format_float(re)
    if re == 0:
        return f"({_format_float(im)}*i)"
    return f"({_format_float(re)} + {_format_float(im)}*i)"


def _format_float(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def zero(nvars: int) -> CxPolynomial:
    return CxPolynomial.zero(nvars)


def constant(nvars: int, c: complex) -> CxPolynomial:
    return CxPolynomial.constant(nvars, c)


def variable(nvars: int, j: int, conjugated: bool = False) -> CxPolynomial:
    return CxPolynomial.variable(nvars, j, conjugated)


def poly_norm(p: CxPolynomial) -> float:
    """Sum of the absolute values of all coefficients."""
    return p.norm1()


def wirtinger_derivative(p: CxPolynomial, var: int, antiholomorphic: bool = False) -> CxPolynomial:
    """Formal derivative with respect to z_var (or conj(z_var)); exact."""
    if not 0 <= var < p.nvars:
        raise IndexError(f"variable index {var} out of range for nvars={p.nvars}")
    out: dict[Monomial, complex] = {}
    for (a, b), c in p.terms.items():
        exps = b if antiholomorphic else a
        e = exps[var]
        if e == 0:
            continue
        new = list(exps)
        new[var] = e - 1
        mono = (a, tuple(new)) if antiholomorphic else (tuple(new), b)
        s = out.get(mono, 0j) + e * c
        if s == 0:
            out.pop(mono, None)
        else:
            out[mono] = s
    return CxPolynomial(p.nvars, out)


def compose_affine(p: CxPolynomial, b: Sequence[complex], M: np.ndarray) -> CxPolynomial:
    """Substitute z = b + M w exactly; returns a polynomial in the w variables.

    M must have p.nvars rows; conjugated variables are substituted with the
    conjugated affine map, so real-valued input stays real-valued.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != p.nvars or len(b) != p.nvars:
        raise ValueError(f"affine map must be {p.nvars} x k with offset of length {p.nvars}")
    k = M.shape[1]

    lin: list[CxPolynomial] = []
    for j in range(p.nvars):
        form = CxPolynomial.constant(k, complex(b[j]))
        for i in range(k):
            if M[j, i] != 0:
                form = form + complex(M[j, i]) * CxPolynomial.variable(k, i)
        lin.append(form)
    lin_conj = [f.conjugate() for f in lin]

    # cache powers of each linear form
    pow_cache: dict[tuple[int, bool, int], CxPolynomial] = {}

    def power(j: int, conj: bool, e: int) -> CxPolynomial:
        key = (j, conj, e)
        if key not in pow_cache:
            base = lin_conj[j] if conj else lin[j]
            pow_cache[key] = base.pow(e)
        return pow_cache[key]

    total = CxPolynomial.zero(k)
    for (a, bb), c in p.terms.items():
        term = CxPolynomial.constant(k, c)
        for j in range(p.nvars):
            if a[j]:
                term = term * power(j, False, a[j])
            if bb[j]:
                term = term * power(j, True, bb[j])
        total = total + term
    return total


def check_degree_cap(p: CxPolynomial, cap: int) -> CxPolynomial:
    d = p.degree()
    if d > cap:
        raise DegreeCapError(f"polynomial degree {d} exceeds cap {cap}")
    return p


# ---------------------------------------------------------------------------
# Hermitian (real-valued) polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermitianPolynomial:
    """Real-valued polynomial on C^n: coefficient at (a,b) = conj(coefficient at (b,a))."""

    inner: CxPolynomial

    @staticmethod
    def from_cx(p: CxPolynomial, tol: float = 1e-12) -> "HermitianPolynomial":
        bad = hermitian_defect(p)
        if bad is not None and bad[2] > tol * max(1.0, p.norm1()):
            raise NonHermitianError(
                f"polynomial is not real-valued: coefficient at {bad[0]} is not the "
                f"conjugate of the coefficient at {bad[1]} (defect {bad[2]:.3e})",
                (bad[0], bad[1]),
            )
        return HermitianPolynomial(p)

    @property
    def nvars(self) -> int:
        return self.inner.nvars

    def degree(self) -> int:
        return self.inner.degree()

    def eval_real(self, z: Sequence[complex]) -> float:
        v = self.inner.eval(z)
        return v.real

    def eval_many_real(self, pts: np.ndarray) -> np.ndarray:
        return self.inner.eval_many(pts).real

    def __add__(self, other: "HermitianPolynomial") -> "HermitianPolynomial":
        return HermitianPolynomial(self.inner + other.inner)

    def __str__(self) -> str:
        return self.inner.to_text()


def hermitian_defect(p: CxPolynomial) -> tuple[Monomial, Monomial, float] | None:
    """Worst violation of coefficient Hermitian symmetry, or None if exact."""
    worst = None
    worst_d = 0.0
    seen = set()
    for (a, b), c in p.terms.items():
        if (a, b) in seen:
            continue
        seen.add((a, b))
        seen.add((b, a))
        mirror = p.terms.get((b, a), 0j)
        d = abs(c - mirror.conjugate())
        if d > worst_d:
            worst_d = d
            worst = ((a, b), (b, a), d)
    return worst


# ---------------------------------------------------------------------------
# Parser: exact rational expansion of defining-function expressions
# ---------------------------------------------------------------------------
#
# Grammar (EBNF):
#
#   expr    := term (("+" | "-") term)*
#   term    := factor (("*" | "/") factor)*
#   factor  := atom ("^" uint)?  |  "-" factor
#   atom    := number | "i" | var | "conj" "(" expr ")" | "(" expr ")"
#   var     := ("x"|"y"|"z") "_"? uint          (index is 1-based)
#   number  := digits ("." digits)? (("e"|"E") ("+"|"-")? digits)?
#
# "/" requires the divisor to reduce to a nonzero constant.  "**" is accepted
# as a synonym for "^".


_QC = tuple[Fraction, Fraction]  # Gaussian rational re + im*i
_QPoly = dict[Monomial, _QC]

_QZERO: _QC = (Fraction(0), Fraction(0))
_QONE: _QC = (Fraction(1), Fraction(0))


def _qc_add(a: _QC, b: _QC) -> _QC:
    return (a[0] + b[0], a[1] + b[1])


def _qc_mul(a: _QC, b: _QC) -> _QC:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _qc_neg(a: _QC) -> _QC:
    return (-a[0], -a[1])


def _qc_conj(a: _QC) -> _QC:
    return (a[0], -a[1])


def _qc_inv(a: _QC) -> _QC:
    n = a[0] * a[0] + a[1] * a[1]
    return (a[0] / n, -a[1] / n)


def _qp_add(p: _QPoly, q: _QPoly) -> _QPoly:
    out = dict(p)
    for m, c in q.items():
        s = _qc_add(out.get(m, _QZERO), c)
        if s == _QZERO:
            out.pop(m, None)
        else:
            out[m] = s
    return out


def _qp_mul(p: _QPoly, q: _QPoly) -> _QPoly:
    out: _QPoly = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            m = (
                tuple(x + y for x, y in zip(a1, a2)),
                tuple(x + y for x, y in zip(b1, b2)),
            )
            s = _qc_add(out.get(m, _QZERO), _qc_mul(c1, c2))
            if s == _QZERO:
                out.pop(m, None)
            else:
                out[m] = s
    return out


def _qp_scale(p: _QPoly, c: _QC) -> _QPoly:
    if c == _QZERO:
        return {}
    return {m: _qc_mul(v, c) for m, v in p.items()}


def _qp_pow(p: _QPoly, k: int, nvars: int) -> _QPoly:
    result: _QPoly = {((0,) * nvars, (0,) * nvars): _QONE}
    for _ in range(k):
        result = _qp_mul(result, p)
    return result


def _qp_conj(p: _QPoly) -> _QPoly:
    return {(b, a): _qc_conj(c) for (a, b), c in p.items()}


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, value, offset); kinds: num, ident, op."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], i))
            i = j
            continue
        if ch == "*" and i + 1 < n and text[i + 1] == "*":
            toks.append(("op", "^", i))
            i += 2
            continue
        if ch in _TOKEN_CHARS:
            toks.append(("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return toks


class _Parser:
    def __init__(self, text: str, nvars_hint: int | None):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.max_index = 0
        self.nvars_hint = nvars_hint

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("end", "", len(self.text))

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect_op(self, op: str):
        kind, val, off = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val!r}", off)

    # two-pass: first scan identifiers to size the variable tuple
    def scan_nvars(self) -> int:
        mx = 0
        for kind, val, off in self.toks:
            if kind == "ident" and val not in ("conj", "i", "I"):
                idx = _var_index(val, off)
                mx = max(mx, idx)
        if self.nvars_hint is not None:
            if mx > self.nvars_hint:
                raise ParseError(
                    f"variable index {mx} exceeds declared nvars={self.nvars_hint}", 0
                )
            return self.nvars_hint
        return max(mx, 1)

    def parse(self) -> tuple[_QPoly, int]:
        nv = self.scan_nvars()
        self.nvars = nv
        p = self.parse_expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", off)
        return p, nv

    def parse_expr(self) -> _QPoly:
        p = self.parse_term()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.parse_term()
                if val == "-":
                    q = _qp_scale(q, (Fraction(-1), Fraction(0)))
                p = _qp_add(p, q)
            else:
                return p

    def parse_term(self) -> _QPoly:
        p = self.parse_factor()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                q = self.parse_factor()
                if val == "/":
                    c = _qp_constant_value(q)
                    if c is None:
                        raise ParseError("division is only allowed by a nonzero constant", off)
                    if c == _QZERO:
                        raise ParseError("division by zero", off)
                    p = _qp_scale(p, _qc_inv(c))
                else:
                    p = _qp_mul(p, q)
            else:
                return p

    def parse_factor(self) -> _QPoly:
        kind, val, off = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return _qp_scale(self.parse_factor(), (Fraction(-1), Fraction(0)))
        atom = self.parse_atom()
        kind, val, off = self.peek()
        if kind == "op" and val == "^":
            self.next()
            k2, v2, o2 = self.next()
            if k2 != "num" or not v2.isdigit():
                raise ParseError("exponent must be a nonnegative integer", o2)
            return _qp_pow(atom, int(v2), self.nvars)
        return atom

    def parse_atom(self) -> _QPoly:
        kind, val, off = self.next()
        zeros = (0,) * self.nvars
        if kind == "num":
            frac = Fraction(Decimal(val))
            return {(zeros, zeros): (frac, Fraction(0))}
        if kind == "op" and val == "(":
            p = self.parse_expr()
            self.expect_op(")")
            return p
        if kind == "ident":
            if val in ("i", "I"):
                return {(zeros, zeros): (Fraction(0), Fraction(1))}
            if val == "conj":
                self.expect_op("(")
                p = self.parse_expr()
                self.expect_op(")")
                return _qp_conj(p)
            idx = _var_index(val, off)
            j = idx - 1
            zj = _qp_var(self.nvars, j, False)
            zjc = _qp_var(self.nvars, j, True)
            letter = val[0]
            half = (Fraction(1, 2), Fraction(0))
            if letter == "z":
                return zj
            if letter == "x":
                # x_j = (z_j + conj z_j)/2
                return _qp_scale(_qp_add(zj, zjc), half)
            # y_j = (z_j - conj z_j)/(2i) = -i/2 z_j + i/2 conj z_j
            mi2 = (Fraction(0), Fraction(-1, 2))
            pi2 = (Fraction(0), Fraction(1, 2))
            return _qp_add(_qp_scale(zj, mi2), _qp_scale(zjc, pi2))
        raise ParseError(f"unexpected token {val!r}", off)


def _qp_var(nvars: int, j: int, conjugated: bool) -> _QPoly:
    e = [0] * nvars
    e[j] = 1
    zeros = (0,) * nvars
    mono = (zeros, tuple(e)) if conjugated else (tuple(e), zeros)
    return {mono: _QONE}


def _qp_constant_value(p: _QPoly) -> _QC | None:
    if not p:
        return _QZERO
    if len(p) == 1:
        (mono, c), = p.items()
        if sum(mono[0]) + sum(mono[1]) == 0:
            return c
    return None


def _var_index(name: str, off: int) -> int:
    if not name or name[0] not in "xyz":
        raise ParseError(f"unknown identifier {name!r}", off)
    body = name[1:]
    if body.startswith("_"):
        body = body[1:]
    if not body.isdigit() or int(body) < 1:
        raise ParseError(f"malformed variable {name!r} (expected e.g. x1, y_2, z3)", off)
    return int(body)


def _qp_to_cx(p: _QPoly, nvars: int) -> CxPolynomial:
    return CxPolynomial.from_terms(
        nvars, {m: complex(float(c[0]), float(c[1])) for m, c in p.items()}
    )


def parse_polynomial(text: str, nvars: int | None = None) -> CxPolynomial:
    """Parse an expression in x_j, y_j, z_j, conj(z_j); complex values allowed."""
    qp, nv = _Parser(text, nvars).parse()
    return _qp_to_cx(qp, nv)


def parse_defining(text: str, nvars: int | None = None) -> HermitianPolynomial:
    """Parse a real-valued defining function; rejects non-Hermitian expressions.

    The expansion into (z, conj z) monomials is performed over exact rational
    coefficients, so rational input has exactly representable terms.
    """
    qp, nv = _Parser(text, nvars).parse()
    for (a, b), c in qp.items():
        mirror = qp.get((b, a), _QZERO)
        if _qc_conj(mirror) != c:
            raise NonHermitianError(
                f"expression is not real-valued: monomial pair {(a, b)} / {(b, a)} "
                "violates Hermitian symmetry",
                ((a, b), (b, a)),
            )
    return HermitianPolynomial(_qp_to_cx(qp, nv))
