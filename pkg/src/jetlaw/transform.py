"""Exact translation between the light-cone and space-time frames.

The frames are linked by xi = x + t, eta = x - t with the same dependent
surface, so on solutions every reduced light-cone jet is a rational-linear
combination of reduced space-time jets and vice versa.  The atom images
are generated from the shared zeroth jet by the chain-rule recursions

    image(D_xi e)  = 1/2 (D_t + D_x) image(e)
    image(D_eta e) = 1/2 (D_x - D_t) image(e)
    image(D_x e)   = (D_xi + D_eta) image(e)
    image(D_t e)   = (D_xi - D_eta) image(e)

with restricted derivatives throughout, and memoized per order.

Current components mix under the frame change.  The convention used here
maps the light-cone pair (F, G) to (T, X) = (F - G, F + G) pulled back to
space-time coordinates; then D_t T + D_x X = 2 (D_xi F + D_eta G), so
conserved currents map to conserved currents.  The inverse halves the sum
and difference, making the two maps exact mutual inverses on reduced
currents.  Characteristics pick up the factor -1/2 (forward) and -2
(backward) because w[1,1] = -1/4 (u[2,0] - u[0,2]) modulo the chain rule.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .expr import Expr, Jet, Sym, as_expr, substitute
from .jets import LIGHTCONE, SPACETIME, check_frame, reduce_to_solutions, restricted_derivative
from .conservation import Characteristic, Current

HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def _spacetime_image(i: int, j: int) -> Expr:
    """Reduced space-time form of the light-cone jet w[i,j], min(i,j) = 0."""
    if i and j:
        raise ValueError("mixed light-cone jets have no image; reduce first")
    if i == 0 and j == 0:
        return as_expr(Jet("u", 0, 0))
    if i:
        prev = _spacetime_image(i - 1, 0)
        return HALF * (
            restricted_derivative(prev, SPACETIME, 0)
            + restricted_derivative(prev, SPACETIME, 1)
        )
    prev = _spacetime_image(0, j - 1)
    return HALF * (
        restricted_derivative(prev, SPACETIME, 1)
        - restricted_derivative(prev, SPACETIME, 0)
    )


@lru_cache(maxsize=None)
def _lightcone_image(i: int, j: int) -> Expr:
    """Reduced light-cone form of the space-time jet u[i,j], i <= 1."""
    if i > 1:
        raise ValueError("principal space-time jets have no image; reduce first")
    if i == 0 and j == 0:
        return as_expr(Jet("w", 0, 0))
    if i == 1:
        base = _lightcone_image(0, j)
        return restricted_derivative(base, LIGHTCONE, 0) - restricted_derivative(
            base, LIGHTCONE, 1
        )
    prev = _lightcone_image(0, j - 1)
    return restricted_derivative(prev, LIGHTCONE, 0) + restricted_derivative(
        prev, LIGHTCONE, 1
    )


_SYMBOL_TO_SPACETIME = {
    Sym("xi"): as_expr(Sym("x")) + as_expr(Sym("t")),
    Sym("eta"): as_expr(Sym("x")) - as_expr(Sym("t")),
}

_SYMBOL_TO_LIGHTCONE = {
    Sym("t"): HALF * (as_expr(Sym("xi")) - as_expr(Sym("eta"))),
    Sym("x"): HALF * (as_expr(Sym("xi")) + as_expr(Sym("eta"))),
}


def substitute_to_spacetime(e: Expr) -> Expr:
    """Pull a light-cone expression back to reduced space-time jets."""
    check_frame(e, LIGHTCONE)
    e = reduce_to_solutions(e, LIGHTCONE)
    bindings: dict = dict(_SYMBOL_TO_SPACETIME)
    for a in e.base_atoms():
        if isinstance(a, Jet):
            bindings[a] = _spacetime_image(a.i, a.j)
    return reduce_to_solutions(substitute(e, bindings), SPACETIME)


def substitute_to_lightcone(e: Expr) -> Expr:
    """Pull a space-time expression back to reduced light-cone jets."""
    check_frame(e, SPACETIME)
    e = reduce_to_solutions(e, SPACETIME)
    bindings: dict = dict(_SYMBOL_TO_LIGHTCONE)
    for a in e.base_atoms():
        if isinstance(a, Jet):
            bindings[a] = _lightcone_image(a.i, a.j)
    return reduce_to_solutions(substitute(e, bindings), LIGHTCONE)


def current_to_spacetime(current: Current) -> Current:
    if current.frame is not LIGHTCONE:
        raise ValueError("expected a light-cone current")
    reduced = current.reduced()
    return Current(
        SPACETIME,
        substitute_to_spacetime(reduced.first - reduced.second),
        substitute_to_spacetime(reduced.first + reduced.second),
    )


def current_to_lightcone(current: Current) -> Current:
    if current.frame is not SPACETIME:
        raise ValueError("expected a space-time current")
    reduced = current.reduced()
    return Current(
        LIGHTCONE,
        substitute_to_lightcone(HALF * (reduced.first + reduced.second)),
        substitute_to_lightcone(HALF * (reduced.second - reduced.first)),
    )


def characteristic_to_spacetime(characteristic: Characteristic) -> Characteristic:
    if characteristic.frame is not LIGHTCONE:
        raise ValueError("expected a light-cone characteristic")
    return Characteristic(
        SPACETIME, -HALF * substitute_to_spacetime(characteristic.multiplier)
    )


def characteristic_to_lightcone(characteristic: Characteristic) -> Characteristic:
    if characteristic.frame is not SPACETIME:
        raise ValueError("expected a space-time characteristic")
    return Characteristic(
        LIGHTCONE, -2 * substitute_to_lightcone(characteristic.multiplier)
    )
