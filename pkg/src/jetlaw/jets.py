"""Jet-space calculus for the 1+1D wave equation in two coordinate frames.

The light-cone frame has independent variables (xi, eta), dependent variable
w, and equation w[1,1] = 0: every mixed jet w[k,l] with k,l >= 1 vanishes on
solutions.  The space-time frame has (t, x), dependent u, and equation
u[2,0] - u[0,2] = 0 put in Kovalevskaya form with respect to t: every jet
u[i,j] with i >= 2 rewrites to u[i-2,j+2] until i <= 1.

``reduce_to_solutions`` applies those rewrites; ``total_derivative`` acts in
the full jet space; ``restricted_derivative`` is the total derivative
evaluated on solutions and is only defined on already-reduced expressions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import Expr, Jet, Sym, as_expr, diff_partial, substitute


class FrameMismatchError(ValueError):
    """Expression uses atoms that do not belong to the frame."""


class PrincipalDerivativeError(ValueError):
    """A reduced expression was required but a principal jet is present."""

    def __init__(self, jet: Jet):
        super().__init__(f"expression contains the principal derivative {jet}")
        self.jet = jet


@dataclass(frozen=True)
class Frame:
    """A coordinate frame: two independent symbols and one dependent variable."""

    name: str
    variables: tuple[str, str]
    dependent: str

    def symbol(self, axis: int) -> Sym:
        return Sym(self.variables[axis])

    def jet(self, i: int, j: int) -> Jet:
        return Jet(self.dependent, i, j)

    def is_principal(self, jet: Jet) -> bool:
        if self.name == "lightcone":
            return jet.i >= 1 and jet.j >= 1
        return jet.i >= 2

    @staticmethod
    def from_name(name: str) -> "Frame":
        try:
            return _FRAMES[name]
        except KeyError:
            raise ValueError(f"unknown frame {name!r}") from None

    def __str__(self):
        return self.name


LIGHTCONE = Frame("lightcone", ("xi", "eta"), "w")
SPACETIME = Frame("spacetime", ("t", "x"), "u")
_FRAMES = {"lightcone": LIGHTCONE, "spacetime": SPACETIME}


def check_frame(e: Expr, frame: Frame) -> None:
    """Raise FrameMismatchError if e mentions atoms foreign to the frame."""
    for a in e.base_atoms():
        if isinstance(a, Sym) and a.name not in frame.variables:
            raise FrameMismatchError(f"symbol {a} does not belong to frame {frame}")
        if isinstance(a, Jet) and a.var != frame.dependent:
            raise FrameMismatchError(
                f"jet variable {a.var!r} is not the {frame} dependent variable"
            )


def reduce_to_solutions(e: Expr, frame: Frame) -> Expr:
    """Rewrite all principal derivatives using the equation; idempotent.

    Light-cone: w[k,l] -> 0 for k,l >= 1.  Space-time: u[i,j] -> u[i-2,j+2]
    applied until i <= 1, which collapses to a single substitution
    u[i,j] -> u[i mod 2, j+i-(i mod 2)].
    """
    bindings = {}
    for a in e.base_atoms():
        if isinstance(a, Jet) and a.var == frame.dependent and frame.is_principal(a):
            if frame.name == "lightcone":
                bindings[a] = Expr.zero()
            else:
                r = a.i % 2
                bindings[a] = as_expr(Jet(a.var, r, a.j + a.i - r))
    return substitute(e, bindings) if bindings else e


def total_derivative(e: Expr, frame: Frame, axis: int) -> Expr:
    """Total derivative along frame variable 0 or 1, in the full jet space."""
    if axis not in (0, 1):
        raise ValueError("axis must be 0 or 1")
    check_frame(e, frame)
    out = diff_partial(e, frame.symbol(axis))
    for a in e.base_atoms():
        if isinstance(a, Jet):
            out = out + as_expr(a.shifted(axis)) * diff_partial(e, a)
    return out


def restricted_derivative(e: Expr, frame: Frame, axis: int) -> Expr:
    """Total derivative evaluated on solutions.

    Requires e to be reduced already, so that the result is again the
    restriction of a well-defined differential function.
    """
    for a in e.base_atoms():
        if isinstance(a, Jet) and a.var == frame.dependent and frame.is_principal(a):
            raise PrincipalDerivativeError(a)
    return reduce_to_solutions(total_derivative(e, frame, axis), frame)


def equation_expression(frame: Frame) -> Expr:
    """Left-hand side of the wave equation in the frame's coordinates."""
    if frame.name == "lightcone":
        return as_expr(frame.jet(1, 1))
    return as_expr(frame.jet(2, 0)) - as_expr(frame.jet(0, 2))


def euler_operator(lagrangian: Expr, frame: Frame) -> Expr:
    """Variational derivative sum((-D1)^i (-D2)^j d/d(jet i,j)) applied to L.

    Computed over the jets actually present, in the full jet space.  The
    result annihilates exactly the total divergences.
    """
    check_frame(lagrangian, frame)
    out = Expr.zero()
    for a in sorted(lagrangian.jets(frame.dependent), key=lambda j: j.sort_key):
        term = diff_partial(lagrangian, a)
        for _ in range(a.i):
            term = total_derivative(term, frame, 0)
        for _ in range(a.j):
            term = total_derivative(term, frame, 1)
        if (a.i + a.j) % 2:
            term = -term
        out = out + term
    return out


def max_jet_order(e: Expr, frame: Frame) -> int | None:
    """Highest derivative order of the frame's dependent variable, or None."""
    orders = [a.order for a in e.jets(frame.dependent)]
    return max(orders) if orders else None
