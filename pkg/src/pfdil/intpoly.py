"""Exact Laurent polynomials with integer coefficients.

A polynomial is a map from exponent vectors (one integer per variable,
negative entries allowed) to non-zero integer coefficients.  Everything in
this module is exact; there is no floating point.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from .errors import DivisionError, DomainError, PolySyntaxError

__all__ = [
    "IntLaurentPoly",
    "parse",
    "arith",
    "specialize",
    "is_reciprocal",
    "lt_polynomial",
    "named_polynomial",
    "from_coeffs",
    "monomial",
]

Exponent = tuple[int, ...]


class IntLaurentPoly:
    """Immutable multivariate Laurent polynomial over the integers."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        variables = tuple(variables)
        if not variables:
            raise DomainError("a polynomial needs at least one variable")
        if len(set(variables)) != len(variables):
            raise DomainError(f"repeated variable names in {variables}")
        k = len(variables)
        clean: dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != k:
                raise DomainError(f"exponent {e} does not match variables {variables}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self._vars = variables
        self._terms = {e: c for e, c in sorted(clean.items()) if c}
        self._hash = None

    # basic accessors

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def nvars(self) -> int:
        return len(self._vars)

    def is_zero(self) -> bool:
        return not self._terms

    def is_univariate(self) -> bool:
        return len(self._vars) == 1

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly.const(other, self._vars)
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, tuple(self._terms.items())))
        return self._hash

    @classmethod
    def const(cls, c: int, variables: Sequence[str] = ("t",)) -> "IntLaurentPoly":
        k = len(tuple(variables))
        return cls(variables, {(0,) * k: c})

    # univariate helpers

    def _require_univariate(self):
        if len(self._vars) != 1:
            raise DomainError(f"expected a univariate polynomial, got variables {self._vars}")

    def degree(self) -> int:
        """Top exponent of a non-zero univariate polynomial."""
        self._require_univariate()
        if not self._terms:
            raise DomainError("the zero polynomial has no degree")
        return max(e[0] for e in self._terms)

    def valuation(self) -> int:
        """Bottom exponent of a non-zero univariate polynomial."""
        self._require_univariate()
        if not self._terms:
            raise DomainError("the zero polynomial has no valuation")
        return min(e[0] for e in self._terms)

    def coeffs(self) -> list[int]:
        """Coefficients from t^valuation up to t^degree, i.e. with monomial content removed."""
        self._require_univariate()
        if not self._terms:
            return []
        lo, hi = self.valuation(), self.degree()
        out = [0] * (hi - lo + 1)
        for (e,), c in self._terms.items():
            out[e - lo] = c
        return out

    def coeff(self, *exponent: int) -> int:
        return self._terms.get(tuple(exponent), 0)

    def content_exponent(self) -> Exponent:
        """Componentwise minimum exponent, the monomial content."""
        if not self._terms:
            return (0,) * len(self._vars)
        return tuple(min(e[i] for e in self._terms) for i in range(len(self._vars)))

    def strip_content(self) -> "IntLaurentPoly":
        """Divide by the monomial content so every variable has minimum exponent zero."""
        m = self.content_exponent()
        return self.shift(tuple(-x for x in m))

    def shift(self, by: Exponent) -> "IntLaurentPoly":
        """Multiply by the monomial with exponent vector ``by``."""
        return IntLaurentPoly(
            self._vars, {tuple(a + b for a, b in zip(e, by)): c for e, c in self._terms.items()}
        )

    # arithmetic

    def _coerce(self, other) -> "IntLaurentPoly":
        if isinstance(other, int):
            return IntLaurentPoly.const(other, self._vars)
        if not isinstance(other, IntLaurentPoly):
            raise TypeError(f"cannot combine polynomial with {type(other).__name__}")
        if other._vars != self._vars:
            raise DomainError(f"variable lists differ: {self._vars} vs {other._vars}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return IntLaurentPoly(self._vars, out)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurentPoly(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntLaurentPoly(self._vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if abs(c) == 1:
                    return IntLaurentPoly(self._vars, {tuple(-x * -k for x in e): c ** -k})
            raise DomainError("only monomial units have negative powers")
        out = IntLaurentPoly.const(1, self._vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other) -> "IntLaurentPoly":
        """Quotient r with r * other == self; raises DivisionError otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        p_m, q_m = self.content_exponent(), other.content_exponent()
        p, q = self.strip_content(), other.strip_content()
        lead_e = max(q._terms)
        lead_c = q._terms[lead_e]
        rem = dict(p._terms)
        quo: dict[Exponent, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lead_c or any(a < b for a, b in zip(e, lead_e)):
                raise DivisionError(f"{format_poly(self)} is not divisible by {format_poly(other)}")
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = c // lead_c
            quo[qe] = qc
            for e2, c2 in q._terms.items():
                t = tuple(a + b for a, b in zip(qe, e2))
                v = rem.get(t, 0) - qc * c2
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        shift = tuple(a - b for a, b in zip(p_m, q_m))
        return IntLaurentPoly(self._vars, quo).shift(shift)

    def __floordiv__(self, other):
        return self.exact_div(other)

    def evaluate(self, *values):
        """Evaluate at the given values (exact for ints and Fractions)."""
        if len(values) != len(self._vars):
            raise DomainError(f"expected {len(self._vars)} values")
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(values, e):
                term = term * v**k
            total += term
        return total

    def rename(self, variables: Sequence[str]) -> "IntLaurentPoly":
        return IntLaurentPoly(variables, self._terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"IntLaurentPoly({format_poly(self)!r}, vars={list(self._vars)})"


# construction helpers


def from_coeffs(coeffs: Iterable[int], var: str = "t", shift: int = 0) -> IntLaurentPoly:
    """Univariate polynomial sum(c_i t^(i+shift)) from coefficients listed low to high."""
    return IntLaurentPoly((var,), {(i + shift,): c for i, c in enumerate(coeffs)})


def monomial(exponent: int | Exponent, coeff: int = 1, variables: Sequence[str] = ("t",)) -> IntLaurentPoly:
    if isinstance(exponent, int):
        exponent = (exponent,)
    return IntLaurentPoly(variables, {tuple(exponent): coeff})


# text format

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()])")


def _tokens(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), pos))
        elif m.group(2) is not None:
            out.append(("var", m.group(2), pos))
        else:
            out.append(("sym", "^" if m.group(3) == "**" else m.group(3), pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse(text: str, variables: Sequence[str] | None = None) -> IntLaurentPoly:
    """Parse a polynomial such as ``"t^4 - t^3 - t^2 - t + 1"`` or ``"x*y - x - y + 1"``.

    Terms are ``[integer][*]var[^integer]`` products joined by ``+``/``-``.
    Negative exponents may be written ``t^-2`` or ``t^(-2)``.  When
    ``variables`` is given, any other identifier is rejected; otherwise the
    variables are taken in order of first appearance (``t`` for a constant).
    """
    toks = _tokens(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def expect_int():
        sign = 1
        kind, val, pos = take()
        if kind == "sym" and val == "(":
            e = expect_int()
            kind, val, pos = take()
            if (kind, val) != ("sym", ")"):
                raise PolySyntaxError("expected ')'", text, pos)
            return e
        while kind == "sym" and val in "+-":
            if val == "-":
                sign = -sign
            kind, val, pos = take()
        if kind != "int":
            raise PolySyntaxError("expected an integer exponent", text, pos)
        return sign * val

    names: list[str] = list(variables) if variables is not None else []
    raw: list[tuple[int, dict[str, int]]] = []
    if peek()[0] == "end":
        raise PolySyntaxError("empty polynomial", text, 0)
    first = True
    while peek()[0] != "end":
        sign = 1
        kind, val, pos = peek()
        if kind == "sym" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
            while peek()[0] == "sym" and peek()[1] in "+-":
                if take()[1] == "-":
                    sign = -sign
        elif not first:
            raise PolySyntaxError("expected '+' or '-'", text, pos)
        first = False
        coeff = 1
        powers: dict[str, int] = {}
        kind, val, pos = peek()
        if kind == "int":
            take()
            coeff = val
            if peek()[0] == "sym" and peek()[1] == "*":
                take()
                if peek()[0] != "var":
                    raise PolySyntaxError("expected a variable after '*'", text, peek()[2])
            elif peek()[0] == "var":
                pass
            elif peek()[0] == "sym" and peek()[1] == "^":
                raise PolySyntaxError("exponent on a bare integer", text, peek()[2])
        elif kind != "var":
            raise PolySyntaxError("expected a term", text, pos)
        while peek()[0] == "var":
            _, name, vpos = take()
            if name not in names:
                if variables is not None:
                    raise PolySyntaxError(f"unknown variable {name!r}", text, vpos)
                names.append(name)
            e = 1
            if peek()[0] == "sym" and peek()[1] == "^":
                take()
                e = expect_int()
            powers[name] = powers.get(name, 0) + e
            if peek()[0] == "sym" and peek()[1] == "*":
                take()
                if peek()[0] != "var":
                    raise PolySyntaxError("expected a variable after '*'", text, peek()[2])
        kind, val, pos = peek()
        if kind not in ("end",) and not (kind == "sym" and val in "+-"):
            raise PolySyntaxError(f"unexpected {val!r}", text, pos)
        raw.append((sign * coeff, powers))
    if not names:
        names = ["t"]
    terms: dict[Exponent, int] = {}
    for c, powers in raw:
        e = tuple(powers.get(v, 0) for v in names)
        terms[e] = terms.get(e, 0) + c
    return IntLaurentPoly(names, terms)


def _format_monomial(variables, e) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 0:
            continue
        parts.append(v if k == 1 else f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: IntLaurentPoly) -> str:
    """Canonical text: descending total degree, ties broken by descending exponent vector."""
    if p.is_zero():
        return "0"
    order = sorted(p.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)
    out = []
    for idx, (e, c) in enumerate(order):
        mono = _format_monomial(p.variables, e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


# module-level operations


def arith(p: IntLaurentPoly, q: IntLaurentPoly, op: str) -> IntLaurentPoly:
    """Apply ``op`` in {"add", "sub", "mul", "exact_div"} to p and q."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "exact_div":
        return p.exact_div(q)
    raise DomainError(f"unknown operation {op!r}")


def specialize(p: IntLaurentPoly, m: Sequence[int], var: str = "t") -> IntLaurentPoly:
    """Substitute x_i -> t^(m_i) for every variable, summing colliding terms."""
    m = tuple(int(x) for x in m)
    if len(m) != p.nvars:
        raise DomainError(f"exponent map has length {len(m)}, polynomial has {p.nvars} variables")
    out: dict[Exponent, int] = {}
    for e, c in p.items():
        k = sum(a * b for a, b in zip(e, m))
        out[(k,)] = out.get((k,), 0) + c
    return IntLaurentPoly((var,), out)


def is_reciprocal(p: IntLaurentPoly) -> bool:
    """True if the coefficient list (content removed) is a palindrome up to a global sign."""
    if p.is_zero():
        raise DomainError("the zero polynomial is not reciprocal or otherwise")
    c = p.coeffs()
    rev = c[::-1]
    return c == rev or c == [-x for x in rev]


def lt_polynomial(a: int, b: int, var: str = "t") -> IntLaurentPoly:
    """t^(2b) - t^(b+a) - t^b - t^(b-a) + 1, with colliding terms summed when a = 0."""
    if b <= 0 or a < 0 or a >= b:
        raise DomainError(f"need 0 <= a < b, got a={a}, b={b}")
    terms: dict[Exponent, int] = {}
    for e, c in ((2 * b, 1), (b + a, -1), (b, -1), (b - a, -1), (0, 1)):
        terms[(e,)] = terms.get((e,), 0) + c
    return IntLaurentPoly((var,), terms)


_NAMED = {
    "lehmer": [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1],
    "smyth": [-1, -1, 0, 1],
    "sigma": [1, -1, 1],
}

_PN = re.compile(r"^pn\(?(\d+)\)?$")


def named_polynomial(name: str, n: int | None = None, var: str = "t") -> IntLaurentPoly:
    """Lehmer's polynomial, Smyth's cubic, sigma = t^2 - t + 1, or p_n = t^n - t - 1.

    ``pn`` takes ``n`` either as the keyword or inline, e.g. ``"pn(5)"``.
    """
    key = name.strip().lower()
    if key in _NAMED:
        return from_coeffs(_NAMED[key], var)
    m = _PN.match(key)
    if key == "pn" or m:
        if m:
            n = int(m.group(1))
        if n is None or n < 2:
            raise DomainError("p_n needs n >= 2")
        return IntLaurentPoly((var,), {(n,): 1, (1,): -1, (0,): -1})
    raise DomainError(f"unknown polynomial name {name!r}; expected lehmer, smyth, sigma or pn(n)")
