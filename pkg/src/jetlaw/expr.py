"""Exact symbolic expressions over jet coordinates.

An :class:`Expr` is kept permanently in canonical form: a sum of monomials,
each a rational coefficient times a product of atomic factors with positive
integer exponents.  Atoms are independent symbols (``xi``, ``eta``, ``t``,
``x``), jet coordinates ``name[i,j]`` standing for the mixed partial
derivative of order ``(i, j)`` of a dependent variable, and the
transcendental heads ``exp``/``sin``/``cos``/``ln`` applied to expressions.
All coefficient arithmetic uses :class:`fractions.Fraction`, so equality of
canonical forms is exact, never floating point.

Canonical form is maintained by construction: arithmetic merges monomials,
drops zero coefficients, fuses products of exponentials (``exp(a)*exp(b)``
becomes ``exp(a+b)``), and orders terms by a graded lexicographic rule so
printing is deterministic and ``parse(str(e)) == e`` holds structurally.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Union

import mpmath

SYMBOL_NAMES = ("xi", "eta", "t", "x")
FUNCTION_NAMES = ("exp", "sin", "cos", "ln")

Rational = Union[int, Fraction]


class ParseError(ValueError):
    """Raised on malformed input text; carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedExpressionError(ValueError):
    """The requested operation leaves the polynomial-exponential fragment."""


class UnsupportedIntegrandError(ValueError):
    """The integrand is outside the closed-form antiderivative classes."""


# ---------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class Sym:
    """An independent variable: one of xi, eta, t, x."""

    name: str

    def __post_init__(self):
        if self.name not in SYMBOL_NAMES:
            raise ValueError(f"unknown independent symbol {self.name!r}")

    @property
    def sort_key(self):
        return (0, SYMBOL_NAMES.index(self.name))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Jet:
    """Jet coordinate var[i,j]: d^(i+j) var / d(first)^i d(second)^j."""

    var: str
    i: int
    j: int

    def __post_init__(self):
        if self.var in SYMBOL_NAMES or self.var in FUNCTION_NAMES:
            raise ValueError(f"reserved name {self.var!r} cannot be a jet variable")
        if self.i < 0 or self.j < 0:
            raise ValueError(f"negative jet index in {self.var}[{self.i},{self.j}]")

    @property
    def sort_key(self):
        return (1, self.var, self.i, self.j)

    @property
    def order(self) -> int:
        return self.i + self.j

    def shifted(self, axis: int) -> "Jet":
        """The jet one derivative deeper along axis 0 (first) or 1 (second)."""
        if axis == 0:
            return Jet(self.var, self.i + 1, self.j)
        return Jet(self.var, self.i, self.j + 1)

    def __str__(self):
        return f"{self.var}[{self.i},{self.j}]"


@dataclass(frozen=True)
class Fn:
    """A transcendental factor head(arg) with head in exp/sin/cos/ln.

    Instances are created through :func:`fn_apply`, which folds special
    values (exp(0), sin(0), cos(0), ln(1)) and normalizes the sign of
    sin/cos arguments, so two mathematically identical factors share one
    representation.
    """

    head: str
    arg: "Expr"

    def __post_init__(self):
        if self.head not in FUNCTION_NAMES:
            raise ValueError(f"unknown function {self.head!r}")

    @cached_property
    def sort_key(self):
        return (2, str(self))

    def __str__(self):
        return f"{self.head}({self.arg})"


Atom = Union[Sym, Jet, Fn]

XI = Sym("xi")
ETA = Sym("eta")
T = Sym("t")
X = Sym("x")

# A monomial is a tuple of (atom, exponent) pairs, ascending in atom sort
# key, exponents >= 1.  The empty tuple is the constant monomial.
Mono = tuple


def _mono_key(mono: Mono):
    degree = sum(p for _, p in mono)
    return (degree, tuple((a.sort_key, p) for a, p in reversed(mono)))


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    """Merge two monomials; products of exp factors fuse their arguments."""
    powers: dict[Atom, int] = {}
    exp_arg = None
    for a, p in (*m1, *m2):
        if isinstance(a, Fn) and a.head == "exp":
            contrib = a.arg if p == 1 else a.arg * Expr.from_rational(p)
            exp_arg = contrib if exp_arg is None else exp_arg + contrib
        else:
            powers[a] = powers.get(a, 0) + p
    factors = [(a, p) for a, p in powers.items() if p != 0]
    if exp_arg is not None and not exp_arg.is_zero_literal:
        factors.append((Fn("exp", exp_arg), 1))
    factors.sort(key=lambda ap: ap[0].sort_key)
    return tuple(factors)


class Expr:
    """Canonical sum of monomials with Fraction coefficients. Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: tuple):
        # internal: terms must already be canonical (sorted, nonzero coeffs)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", hash(terms))

    def __setattr__(self, *_):
        raise AttributeError("Expr is immutable")

    # -- construction ------------------------------------------------------

    @staticmethod
    def _build(coeffs: dict) -> "Expr":
        items = [(m, c) for m, c in coeffs.items() if c != 0]
        items.sort(key=lambda mc: _mono_key(mc[0]), reverse=True)
        return Expr(tuple(items))

    @staticmethod
    def zero() -> "Expr":
        return _ZERO

    @staticmethod
    def one() -> "Expr":
        return _ONE

    @staticmethod
    def from_rational(q: Rational) -> "Expr":
        q = Fraction(q)
        if q == 0:
            return _ZERO
        return Expr((((), q),))

    @staticmethod
    def from_atom(a: Atom) -> "Expr":
        return Expr(((((a, 1),), Fraction(1)),))

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def is_zero_literal(self) -> bool:
        return not self._terms

    def as_rational(self) -> Fraction | None:
        """The value as a rational constant, or None if non-constant."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and self._terms[0][0] == ():
            return self._terms[0][1]
        return None

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[0][1]

    def base_atoms(self) -> frozenset:
        """All Sym and Jet atoms, including those inside function arguments."""
        found = set()
        for mono, _ in self._terms:
            for a, _p in mono:
                if isinstance(a, Fn):
                    found |= a.arg.base_atoms()
                else:
                    found.add(a)
        return frozenset(found)

    def fn_atoms(self) -> frozenset:
        """All transcendental factors, including nested ones."""
        found = set()
        for mono, _ in self._terms:
            for a, _p in mono:
                if isinstance(a, Fn):
                    found.add(a)
                    found |= a.arg.fn_atoms()
        return frozenset(found)

    def jets(self, var: str | None = None) -> frozenset:
        return frozenset(
            a
            for a in self.base_atoms()
            if isinstance(a, Jet) and (var is None or a.var == var)
        )

    def symbols(self) -> frozenset:
        return frozenset(a for a in self.base_atoms() if isinstance(a, Sym))

    def depends_on(self, atom) -> bool:
        return atom in self.base_atoms()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Expr":
        other = as_expr(other)
        coeffs = dict(self._terms)
        for m, c in other._terms:
            acc = coeffs.get(m, Fraction(0)) + c
            if acc:
                coeffs[m] = acc
            else:
                coeffs.pop(m, None)
        return Expr._build(coeffs)

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr(tuple((m, -c) for m, c in self._terms))

    def __sub__(self, other) -> "Expr":
        return self + (-as_expr(other))

    def __rsub__(self, other) -> "Expr":
        return as_expr(other) + (-self)

    def __mul__(self, other) -> "Expr":
        other = as_expr(other)
        coeffs: dict = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = _mono_mul(m1, m2)
                acc = coeffs.get(m, Fraction(0)) + c1 * c2
                if acc:
                    coeffs[m] = acc
                else:
                    coeffs.pop(m, None)
        return Expr._build(coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Expr":
        if isinstance(other, Expr):
            q = other.as_rational()
            if q is None:
                raise UnsupportedExpressionError("division only by rational constants")
            other = q
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> "Expr":
        if not isinstance(n, int):
            raise TypeError("exponents must be integers")
        if n == 0:
            return _ONE
        if n < 0:
            return self._invert() ** (-n)
        out = _ONE
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def _invert(self) -> "Expr":
        """Reciprocal; defined only for c * exp(...) monomials."""
        if len(self._terms) != 1:
            raise UnsupportedExpressionError(
                "negative power of a non-invertible expression"
            )
        mono, c = self._terms[0]
        for a, _p in mono:
            if not (isinstance(a, Fn) and a.head == "exp"):
                raise UnsupportedExpressionError(
                    f"negative power of non-invertible factor {a}"
                )
        inv = Expr.from_rational(Fraction(1) / c)
        for a, p in mono:
            inv = inv * Expr.from_atom(Fn("exp", -(a.arg * Expr.from_rational(p))))
        return inv

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expr.from_rational(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for idx, (mono, c) in enumerate(self._terms):
            body = "*".join(
                str(a) + (f"^{p}" if p > 1 else "") for a, p in mono
            )
            mag = abs(c)
            if body:
                text = body if mag == 1 else f"{mag}*{body}"
            else:
                text = str(mag)
            if idx == 0:
                chunks.append(f"-{text}" if c < 0 else text)
            else:
                chunks.append(f" - {text}" if c < 0 else f" + {text}")
        return "".join(chunks)

    def __repr__(self):
        return f"Expr({str(self)!r})"


_ZERO = Expr(())
_ONE = Expr((((), Fraction(1)),))


def as_expr(value) -> Expr:
    """Coerce ints, Fractions and atoms to Expr."""
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Expr.from_rational(value)
    if isinstance(value, (Sym, Jet, Fn)):
        return Expr.from_atom(value)
    raise TypeError(f"cannot interpret {value!r} as an expression")


def fn_apply(head: str, arg) -> Expr:
    """Apply a transcendental head to an argument, normalizing as we go.

    exp(0) -> 1, sin(0) -> 0, cos(0) -> 1, ln(1) -> 0; sin/cos arguments
    have their overall sign normalized (sin is odd, cos is even) so the
    canonical form does not depend on how the argument was written.
    """
    arg = as_expr(arg)
    if head == "exp":
        if arg.is_zero_literal:
            return _ONE
        return Expr.from_atom(Fn("exp", arg))
    if head == "ln":
        if arg == _ONE:
            return _ZERO
        return Expr.from_atom(Fn("ln", arg))
    if head in ("sin", "cos"):
        if arg.is_zero_literal:
            return _ZERO if head == "sin" else _ONE
        if arg.leading_coefficient() < 0:
            flipped = Expr.from_atom(Fn(head, -arg))
            return -flipped if head == "sin" else flipped
        return Expr.from_atom(Fn(head, arg))
    raise ValueError(f"unknown function {head!r}")


def normalize(e: Expr) -> Expr:
    """Rebuild the canonical form from scratch.

    Expressions are canonicalized on construction, so this is the identity
    on every Expr produced by this module's own operations; it exists to
    make normalization explicit at API boundaries and as a consistency
    check (it re-applies all construction rules, including function-value
    folding inside arguments).
    """
    out = _ZERO
    for mono, c in e.terms:
        term = Expr.from_rational(c)
        for a, p in mono:
            if isinstance(a, Fn):
                term = term * fn_apply(a.head, normalize(a.arg)) ** p
            else:
                term = term * Expr.from_atom(a) ** p
        out = out + term
    return out


# ---------------------------------------------------------------------------
# calculus


def diff_partial(e: Expr, v) -> Expr:
    """Partial derivative with respect to a single Sym or Jet atom.

    Other atoms are held fixed; the chain rule is applied through function
    arguments.  Differentiating ln with an argument that depends on v would
    produce a rational function, which this fragment cannot represent, so
    that case raises UnsupportedExpressionError.
    """
    if not isinstance(v, (Sym, Jet)):
        raise TypeError("differentiation variable must be a symbol or jet atom")
    out = _ZERO
    for mono, c in e.terms:
        for idx, (a, p) in enumerate(mono):
            da = _atom_diff(a, v)
            if da.is_zero_literal:
                continue
            rest = list(mono)
            if p > 1:
                rest[idx] = (a, p - 1)
            else:
                del rest[idx]
            partial = Expr._build({tuple(rest): c * p})
            out = out + partial * da
    return out


def _atom_diff(a: Atom, v) -> Expr:
    if isinstance(a, (Sym, Jet)):
        return _ONE if a == v else _ZERO
    darg = diff_partial(a.arg, v)
    if darg.is_zero_literal:
        return _ZERO
    if a.head == "exp":
        return Expr.from_atom(a) * darg
    if a.head == "sin":
        return fn_apply("cos", a.arg) * darg
    if a.head == "cos":
        return -fn_apply("sin", a.arg) * darg
    raise UnsupportedExpressionError(
        f"derivative of {a} leaves the polynomial-exponential fragment"
    )


def substitute(e: Expr, bindings: Mapping) -> Expr:
    """Simultaneous substitution of Sym/Jet atoms by expressions.

    All replacements read the original expression, so exchanging two atoms
    through each other works as expected.  Substitution descends into
    function arguments.
    """
    if not bindings:
        return e
    table = {}
    for key, val in bindings.items():
        if not isinstance(key, (Sym, Jet)):
            raise TypeError("substitution keys must be symbol or jet atoms")
        table[key] = as_expr(val)
    out = _ZERO
    for mono, c in e.terms:
        term = Expr.from_rational(c)
        for a, p in mono:
            if isinstance(a, Fn):
                factor = fn_apply(a.head, substitute(a.arg, table))
            elif a in table:
                factor = table[a]
            else:
                factor = Expr.from_atom(a)
            term = term * factor**p
        out = out + term
    return out


def integrate_univar(e: Expr, v, lower=0) -> Expr:
    """Definite integral of e in the single variable v from the base point.

    Supported integrand classes, per monomial in v: polynomial, and
    polynomial times a single first-power exp/sin/cos factor whose argument
    is linear in v with a nonzero rational slope.  The result H satisfies
    diff_partial(H, v) == e and H|_{v=lower} == 0 exactly.  Anything else
    raises UnsupportedIntegrandError.
    """
    if not isinstance(v, (Sym, Jet)):
        raise TypeError("integration variable must be a symbol or jet atom")
    lower = as_expr(lower)
    v_expr = Expr.from_atom(v)
    anti = _ZERO
    for mono, c in e.terms:
        k = 0
        trans = None
        rest = []
        for a, p in mono:
            if isinstance(a, (Sym, Jet)) and a == v:
                k = p
            elif isinstance(a, Fn) and a.arg.depends_on(v):
                if trans is not None:
                    raise UnsupportedIntegrandError(
                        f"two {v}-dependent transcendental factors in one term"
                    )
                if p != 1:
                    raise UnsupportedIntegrandError(
                        f"power {p} of {a.head}(...) with {v}-dependent argument"
                    )
                trans = a
            else:
                rest.append((a, p))
        rest_expr = Expr._build({tuple(rest): c})
        if trans is None:
            part = rest_expr * v_expr ** (k + 1) / (k + 1)
        else:
            slope = diff_partial(trans.arg, v).as_rational()
            if slope is None or slope == 0:
                raise UnsupportedIntegrandError(
                    f"argument of {trans} is not linear in {v} with rational slope"
                )
            if trans.head == "exp":
                part = rest_expr * _exp_antiderivative(k, slope, trans, v_expr)
            elif trans.head in ("sin", "cos"):
                part = rest_expr * _trig_antiderivative(k, trans.head, slope, trans.arg, v_expr)
            else:
                raise UnsupportedIntegrandError(f"cannot integrate {trans.head}(...)")
        anti = anti + part
    return anti - substitute(anti, {v: lower})


def _exp_antiderivative(k: int, a: Fraction, atom: Fn, v_expr: Expr) -> Expr:
    # d/dv [v^k exp/a] = v^k exp + (k/a) v^(k-1) exp
    e_expr = Expr.from_atom(atom)
    if k == 0:
        return e_expr / a
    return v_expr**k * e_expr / a - _exp_antiderivative(k - 1, a, atom, v_expr) * Fraction(k) / a


def _trig_antiderivative(k: int, head: str, a: Fraction, arg: Expr, v_expr: Expr) -> Expr:
    sin_e = fn_apply("sin", arg)
    cos_e = fn_apply("cos", arg)
    if head == "sin":
        lead = -(v_expr**k) * cos_e / a if k else -cos_e / a
        if k == 0:
            return lead
        return lead + _trig_antiderivative(k - 1, "cos", a, arg, v_expr) * Fraction(k) / a
    lead = v_expr**k * sin_e / a if k else sin_e / a
    if k == 0:
        return lead
    return lead - _trig_antiderivative(k - 1, "sin", a, arg, v_expr) * Fraction(k) / a


# ---------------------------------------------------------------------------
# zero testing


@dataclass(frozen=True)
class ZeroVerdict:
    """Outcome of a zero test; probabilistic=True means randomized evaluation."""

    zero: bool
    probabilistic: bool


def _decidable(e: Expr) -> bool:
    # Canonical form is a complete zero test for polynomials and for sums of
    # polynomial multiples of exp with polynomial arguments (distinct
    # exponential arguments are linearly independent over polynomials).
    # sin/cos/ln identities, and exp applied to transcendental arguments,
    # are not decided structurally.
    for f in e.fn_atoms():
        if f.head != "exp":
            return False
        if f.arg.fn_atoms():
            return False
    return True


def zero_verdict(e: Expr, *, samples: int = 8, seed: int = 42) -> ZeroVerdict:
    """Decide whether e is mathematically zero.

    Exact when the canonical form is zero or the expression lies in the
    decidable fragment (polynomials and exp-monomials).  Otherwise the
    expression is evaluated at `samples` random rational points in high
    precision; a verdict reached this way is tagged probabilistic.
    """
    if e.is_zero_literal:
        return ZeroVerdict(True, False)
    if _decidable(e):
        return ZeroVerdict(False, False)
    rng = random.Random(seed)
    atoms = sorted(e.base_atoms(), key=lambda a: a.sort_key)
    with mpmath.workdps(80):
        for _ in range(samples):
            env = {
                a: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for a in atoms
            }
            value, scale = _eval_mp(e, env)
            if abs(value) > max(scale, mpmath.mpf(1)) * mpmath.mpf("1e-50"):
                return ZeroVerdict(False, True)
    return ZeroVerdict(True, True)


def is_zero(e: Expr, *, samples: int = 8, seed: int = 42) -> bool:
    return zero_verdict(e, samples=samples, seed=seed).zero


def _mp_number(q: Fraction):
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


_MP_FUNCS = {"exp": mpmath.exp, "sin": mpmath.sin, "cos": mpmath.cos, "ln": mpmath.log}


def _eval_mp(e: Expr, env: Mapping):
    """High-precision evaluation; returns (value, largest term magnitude)."""
    total = mpmath.mpf(0)
    scale = mpmath.mpf(0)
    for mono, c in e.terms:
        term = _mp_number(c)
        for a, p in mono:
            if isinstance(a, Fn):
                inner, _ = _eval_mp(a.arg, env)
                term = term * _MP_FUNCS[a.head](inner) ** p
            else:
                term = term * _mp_number(env[a]) ** p
        total = total + term
        scale = max(scale, abs(term))
    return total, scale


_FLOAT_FUNCS = {"exp": math.exp, "sin": math.sin, "cos": math.cos, "ln": math.log}


def evaluate_float(e: Expr, env: Mapping) -> float:
    """Double-precision evaluation; env maps every Sym/Jet atom to a float."""
    total = 0.0
    for mono, c in e.terms:
        term = float(c)
        for a, p in mono:
            if isinstance(a, Fn):
                term *= _FLOAT_FUNCS[a.head](evaluate_float(a.arg, env)) ** p
            else:
                term *= float(env[a]) ** p
        total += term
    return total


def evaluate_exact(e: Expr, env: Mapping) -> Fraction:
    """Exact rational evaluation; rejects transcendental factors."""
    total = Fraction(0)
    for mono, c in e.terms:
        term = c
        for a, p in mono:
            if isinstance(a, Fn):
                raise UnsupportedExpressionError(
                    "exact evaluation applies to polynomial expressions only"
                )
            term *= Fraction(env[a]) ** p
        total += term
    return total


# ---------------------------------------------------------------------------
# parsing


_PUNCT = set("+-*/^()[],")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(("int", text[start:pos], start))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(("name", text[start:pos], start))
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Expr:
        e = self.expression()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return e

    def expression(self) -> Expr:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        e = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            if op == "*":
                e = e * self.factor()
            else:
                e = e / self.integer_token()
        return e

    def factor(self) -> Expr:
        base = self.base()
        if self.peek()[0] == "^":
            caret = self.next()
            n = self.signed_int()
            try:
                return base**n
            except UnsupportedExpressionError as exc:
                raise ParseError(str(exc), caret[2]) from exc
        return base

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.next()
            sign = -1
        tok = self.expect("int")
        return sign * int(tok[1])

    def integer_token(self) -> int:
        tok = self.expect("int")
        value = int(tok[1])
        if value == 0:
            raise ParseError("division by zero", tok[2])
        return value

    def base(self) -> Expr:
        tok = self.next()
        kind, text, at = tok
        if kind == "int":
            return Expr.from_rational(int(text))
        if kind == "(":
            e = self.expression()
            self.expect(")")
            return e
        if kind == "name":
            if text in SYMBOL_NAMES:
                return Expr.from_atom(Sym(text))
            if text in FUNCTION_NAMES:
                self.expect("(")
                arg = self.expression()
                self.expect(")")
                return fn_apply(text, arg)
            if self.peek()[0] == "[":
                self.next()
                i = self.signed_int()
                self.expect(",")
                j = self.signed_int()
                close = self.expect("]")
                if i < 0 or j < 0:
                    raise ParseError(f"negative jet index in {text}[{i},{j}]", at)
                return Expr.from_atom(Jet(text, i, j))
            # a bare dependent-variable name stands for its (0,0) jet
            return Expr.from_atom(Jet(text, 0, 0))
        raise ParseError(f"unexpected {text!r}", at)


def parse(text: str) -> Expr:
    """Parse expression text to a canonical Expr.

    Grammar: sums of terms, terms are products of factors with division
    only by integer literals, factors are bases with an optional integer
    exponent, bases are integers, symbols, jets ``name[i,j]``, function
    applications, or parenthesized expressions.
    """
    return _Parser(text).parse()
