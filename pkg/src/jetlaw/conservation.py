"""Conserved currents of the wave equation: verification, canonical form,
characteristics, and triviality certificates.

All structural algorithms work in the light-cone frame, where the equation
is w[1,1] = 0 and a conserved current (F, G) satisfies
D_xi F + D_eta G = 0 on solutions.  The canonical form of a current has F
depending only on eta and the eta-derivatives w[0,l] (l >= 1), and G only
on xi and the xi-derivatives w[k,0] (k >= 1).  In that shape the
characteristic (the multiplier lambda with Div = lambda * w[1,1] modulo
identically divergence-free currents) is read off by an explicit operator,
and a current is trivial precisely when its characteristic vanishes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .expr import (
    Expr,
    Jet,
    Sym,
    UnsupportedIntegrandError,
    as_expr,
    diff_partial,
    integrate_univar,
    is_zero,
    parse,
)
from .jets import (
    LIGHTCONE,
    SPACETIME,
    Frame,
    check_frame,
    equation_expression,
    euler_operator,
    reduce_to_solutions,
    restricted_derivative,
    total_derivative,
)


class NotConservedError(ValueError):
    """The pair fails D1 F + D2 G = 0 on solutions."""


@dataclass(frozen=True)
class ReferenceJetPoint:
    """Base values for symbols and jets used by the normalization integrals.

    Unlisted coordinates default to zero.  Kept as a sorted tuple of
    (atom, value) pairs so instances are hashable.
    """

    overrides: tuple = ()

    @staticmethod
    def from_dict(values: Mapping) -> "ReferenceJetPoint":
        items = tuple(
            sorted(
                ((atom, Fraction(v)) for atom, v in values.items()),
                key=lambda av: av[0].sort_key,
            )
        )
        return ReferenceJetPoint(items)

    def value(self, atom) -> Fraction:
        for a, v in self.overrides:
            if a == atom:
                return v
        return Fraction(0)


ORIGIN = ReferenceJetPoint()


@dataclass(frozen=True)
class Current:
    """A pair of differential functions paired with the frame's divergence."""

    frame: Frame
    first: Expr
    second: Expr

    def __post_init__(self):
        check_frame(self.first, self.frame)
        check_frame(self.second, self.frame)

    def reduced(self) -> "Current":
        return Current(
            self.frame,
            reduce_to_solutions(self.first, self.frame),
            reduce_to_solutions(self.second, self.frame),
        )


def _eta_side_ok(e: Expr) -> bool:
    for a in e.base_atoms():
        if isinstance(a, Sym) and a.name != "eta":
            return False
        if isinstance(a, Jet) and not (a.i == 0 and a.j >= 1):
            return False
    return True


def _xi_side_ok(e: Expr) -> bool:
    for a in e.base_atoms():
        if isinstance(a, Sym) and a.name != "xi":
            return False
        if isinstance(a, Jet) and not (a.j == 0 and a.i >= 1):
            return False
    return True


@dataclass(frozen=True)
class CanonicalCurrent(Current):
    """A light-cone current in canonical shape.

    first = F(eta, w[0,1], ..., w[0,r]); second = G(xi, w[1,0], ..., w[r,0]).
    In particular neither component may contain w itself or any mixed jet.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.frame is not LIGHTCONE:
            raise ValueError("canonical currents live in the light-cone frame")
        if not _eta_side_ok(self.first):
            raise ValueError(f"first component {self.first} is not eta-sided")
        if not _xi_side_ok(self.second):
            raise ValueError(f"second component {self.second} is not xi-sided")


@dataclass(frozen=True)
class Characteristic:
    """A multiplier lambda with Div(current) = lambda * (equation LHS)."""

    frame: Frame
    multiplier: Expr

    def __post_init__(self):
        check_frame(self.multiplier, self.frame)


@dataclass(frozen=True)
class TrivialWitness:
    """Certificate that a canonical current is trivial.

    F == D_eta(f_part) + constant * w[0,1] and
    G == D_xi(g_part) - constant * w[1,0], with the restricted derivatives.
    """

    f_part: Expr
    g_part: Expr
    constant: Fraction


def divergence(current: Current) -> Expr:
    """D1(first) + D2(second) in the full jet space."""
    return total_derivative(current.first, current.frame, 0) + total_derivative(
        current.second, current.frame, 1
    )


def verify_current(current: Current, *, samples: int = 8, seed: int = 42) -> bool:
    """True iff the divergence vanishes on solutions."""
    residue = reduce_to_solutions(divergence(current), current.frame)
    return is_zero(residue, samples=samples, seed=seed)


def _restricted_divergence(frame: Frame, first: Expr, second: Expr) -> Expr:
    return restricted_derivative(first, frame, 0) + restricted_derivative(
        second, frame, 1
    )


def _xi_orders(e: Expr) -> list[int]:
    """Indices k (w itself counting as k = 0) with d e / d w[k,0] nonzero."""
    return sorted(a.i for a in e.jets("w") if a.j == 0)


def normalize_current(
    current: Current, point: ReferenceJetPoint = ORIGIN
) -> CanonicalCurrent:
    """Bring a conserved light-cone current to canonical shape.

    The current is changed only by identically divergence-free pairs
    (D_eta H, -D_xi H), so the output is equivalent to the input and has
    the same characteristic.  Steps: zero out mixed derivatives; strip the
    xi-derivative dependence (w itself included) of F from highest order
    down, integrating the matching slice of G from the reference point;
    strip the xi dependence of F the same way; the conservation identity
    then forces G into xi-sided shape.
    """
    if current.frame is not LIGHTCONE:
        raise ValueError("normalization operates on light-cone currents")
    first = reduce_to_solutions(current.first, LIGHTCONE)
    second = reduce_to_solutions(current.second, LIGHTCONE)
    if not is_zero(_restricted_divergence(LIGHTCONE, first, second)):
        raise NotConservedError("divergence does not vanish on solutions")

    # Stripping the w[q,0]-dependence via the substitution F|_{w[q,0]=p}
    # is exact only for q >= 1; adding the divergence-free pair keeps the
    # equivalence class in every case, including q = 0 where the plain
    # substitution would drop a boundary term w[0,1]*(dG/dw[1,0])|_{w=p}.
    # q can jump upward once at the q = 0 step; afterwards F stays free of
    # w and the orders decrease strictly, so the loop terminates.
    used_zero_step = False
    previous_q = None
    for _ in range(200):
        orders = _xi_orders(first)
        if not orders:
            break
        q = orders[-1]
        if q == 0:
            if used_zero_step:
                raise AssertionError("w-dependence reappeared after elimination")
            used_zero_step = True
            previous_q = None
        elif previous_q is not None and q >= previous_q:
            raise AssertionError(f"normalization failed to make progress at order {q}")
        else:
            previous_q = q
        target = Jet("w", q, 0)
        integrand = diff_partial(second, Jet("w", q + 1, 0))
        shift = integrate_univar(integrand, target, lower=point.value(target))
        first = reduce_to_solutions(
            first + restricted_derivative(shift, LIGHTCONE, 1), LIGHTCONE
        )
        second = reduce_to_solutions(
            second - restricted_derivative(shift, LIGHTCONE, 0), LIGHTCONE
        )
        if first.depends_on(target):
            raise NotConservedError(
                f"could not eliminate {target}; the input pair is inconsistent"
            )
    else:
        raise AssertionError("normalization did not terminate")

    if first.depends_on(Sym("xi")):
        shift = integrate_univar(second, Sym("xi"), lower=point.value(Sym("xi")))
        first = reduce_to_solutions(
            first + restricted_derivative(shift, LIGHTCONE, 1), LIGHTCONE
        )
        second = reduce_to_solutions(
            second - restricted_derivative(shift, LIGHTCONE, 0), LIGHTCONE
        )
        if first.depends_on(Sym("xi")):
            raise NotConservedError("could not eliminate xi from the first component")

    if not is_zero(restricted_derivative(second, LIGHTCONE, 1)):
        raise NotConservedError("second component retains eta-side dependence")
    return CanonicalCurrent(LIGHTCONE, first, second)


def _eta_operator_power(e: Expr, times: int) -> Expr:
    """(-D_eta)^times applied with the restricted derivative."""
    for _ in range(times):
        e = -restricted_derivative(e, LIGHTCONE, 1)
    return e


def _xi_operator_power(e: Expr, times: int) -> Expr:
    for _ in range(times):
        e = -restricted_derivative(e, LIGHTCONE, 0)
    return e


def characteristic_canonical(current: CanonicalCurrent) -> Characteristic:
    """Characteristic of a canonical current.

    lambda = sum_l (-D_eta)^(l-1) dF/dw[0,l] + sum_k (-D_xi)^(k-1) dG/dw[k,0],
    with restricted derivatives; each summand is the result of integrating
    the divergence by parts down to a multiple of w[1,1].
    """
    lam = Expr.zero()
    for a in sorted(current.first.jets("w"), key=lambda j: j.j):
        lam = lam + _eta_operator_power(diff_partial(current.first, a), a.j - 1)
    for a in sorted(current.second.jets("w"), key=lambda j: j.i):
        lam = lam + _xi_operator_power(diff_partial(current.second, a), a.i - 1)
    return Characteristic(LIGHTCONE, lam)


def characteristic_with_remainder(
    current: CanonicalCurrent,
) -> tuple[Characteristic, Current]:
    """Characteristic plus the exact integration-by-parts remainder.

    Returns (lambda, (F0, G0)) with the full-jet-space identity
    D_xi F + D_eta G == lambda * w[1,1] + D_xi F0 + D_eta G0,
    where F0 and G0 vanish on solutions (every term carries a mixed jet).
    The identity is asserted exactly before returning.
    """
    lam = characteristic_canonical(current)
    g_rem = Expr.zero()
    for a in sorted(current.first.jets("w"), key=lambda j: j.j):
        coeff = diff_partial(current.first, a)
        for m in range(a.j - 1):
            g_rem = g_rem + _eta_operator_power(coeff, m) * as_expr(
                Jet("w", 1, a.j - 1 - m)
            )
    f_rem = Expr.zero()
    for a in sorted(current.second.jets("w"), key=lambda j: j.i):
        coeff = diff_partial(current.second, a)
        for m in range(a.i - 1):
            f_rem = f_rem + _xi_operator_power(coeff, m) * as_expr(
                Jet("w", a.i - 1 - m, 1)
            )
    remainder = Current(LIGHTCONE, f_rem, g_rem)
    gap = (
        divergence(current)
        - lam.multiplier * as_expr(Jet("w", 1, 1))
        - divergence(remainder)
    )
    if not is_zero(gap):
        raise AssertionError("integration-by-parts identity failed to close")
    return lam, remainder


def is_trivial(current: Current, point: ReferenceJetPoint = ORIGIN) -> bool:
    """True iff the light-cone current is equivalent to the zero current."""
    canonical = (
        current
        if isinstance(current, CanonicalCurrent)
        else normalize_current(current, point)
    )
    return is_zero(characteristic_canonical(canonical).multiplier)


def _invert_restricted(target: Expr, axis: int) -> Expr:
    """Solve D(result) == target for the restricted derivative on one side.

    axis 1 inverts D_eta on polynomials in (eta, w[0,1], w[0,2], ...);
    axis 0 mirrors this for xi.  Works by stripping the top derivative:
    an exact derivative is linear in its highest jet, and the cofactor is
    the partial of the potential with respect to the next jet down.
    """
    sym = Sym("eta") if axis == 1 else Sym("xi")

    def jet_at(n: int) -> Jet:
        return Jet("w", 0, n) if axis == 1 else Jet("w", n, 0)

    def level(a: Jet) -> int:
        return a.j if axis == 1 else a.i

    if target.fn_atoms():
        raise UnsupportedIntegrandError(
            "triviality witnesses are computed for polynomial components only"
        )
    result = Expr.zero()
    remaining = target
    for _ in range(200):
        if remaining.is_zero_literal:
            return result
        levels = sorted(level(a) for a in remaining.jets("w"))
        if not levels:
            step = integrate_univar(remaining, sym, lower=0)
            return result + step
        top = levels[-1]
        if top <= 1:
            raise UnsupportedIntegrandError(
                f"residual dependence on {jet_at(top)} is not an exact derivative"
            )
        cofactor = diff_partial(remaining, jet_at(top))
        if cofactor.depends_on(jet_at(top)):
            raise UnsupportedIntegrandError(
                f"nonlinear dependence on {jet_at(top)} is not an exact derivative"
            )
        step = integrate_univar(cofactor, jet_at(top - 1), lower=0)
        result = result + step
        remaining = remaining - restricted_derivative(step, LIGHTCONE, axis)
    raise AssertionError("witness inversion did not terminate")


def trivial_witness(current: CanonicalCurrent) -> TrivialWitness:
    """Constructive certificate for a trivial canonical current.

    Splits off the constant multiple of (w[0,1], -w[1,0]) and inverts the
    one-sided restricted derivatives on the rest.  The defining identities
    are re-checked exactly before returning.
    """
    r_first = Expr.zero()
    for a in sorted(current.first.jets("w"), key=lambda j: j.j):
        r_first = r_first + _eta_operator_power(diff_partial(current.first, a), a.j - 1)
    constant = r_first.as_rational()
    if constant is None:
        raise ValueError("current is not trivial: characteristic is non-constant")
    lam = characteristic_canonical(current).multiplier
    if not is_zero(lam):
        raise ValueError("current is not trivial: nonzero characteristic")

    w01 = as_expr(Jet("w", 0, 1))
    w10 = as_expr(Jet("w", 1, 0))
    f_part = _invert_restricted(current.first - constant * w01, axis=1)
    g_part = _invert_restricted(current.second + constant * w10, axis=0)

    f_gap = current.first - restricted_derivative(f_part, LIGHTCONE, 1) - constant * w01
    g_gap = current.second - restricted_derivative(g_part, LIGHTCONE, 0) + constant * w10
    if not (is_zero(f_gap) and is_zero(g_gap)):
        raise AssertionError("witness identities failed to close")
    return TrivialWitness(f_part, g_part, constant)


def is_characteristic(
    characteristic: Characteristic, *, samples: int = 8, seed: int = 42
) -> bool:
    """True iff the Euler operator annihilates multiplier * (equation LHS).

    The product is a total divergence exactly when the multiplier is the
    characteristic of some conserved current, so this is a full test of
    the characteristic property.
    """
    product = characteristic.multiplier * equation_expression(characteristic.frame)
    residue = euler_operator(product, characteristic.frame)
    return is_zero(residue, samples=samples, seed=seed)


def spacetime_remainder(current: Current) -> tuple[Expr, Expr]:
    """Exact divergence identity data for a reduced space-time current.

    For conserved reduced (T, X) returns (mu, X0) with the full-jet-space
    identity D_t T + D_x X == mu * (u[2,0] - u[0,2]) + D_x X0, where every
    term of X0 vanishes on solutions.  Used by the numeric identity check.
    """
    if current.frame is not SPACETIME:
        raise ValueError("spacetime_remainder expects a space-time current")
    reduced = current.reduced()
    if not is_zero(_restricted_divergence(SPACETIME, reduced.first, reduced.second)):
        raise NotConservedError("divergence does not vanish on solutions")
    mu = Expr.zero()
    x_rem = Expr.zero()
    for a in sorted(reduced.first.jets("u"), key=lambda j: j.sort_key):
        if a.i != 1:
            continue
        coeff = diff_partial(reduced.first, a)
        term = coeff
        for _ in range(a.j):
            term = -total_derivative(term, SPACETIME, 1)
        mu = mu + term
        step = coeff
        for m in range(a.j):
            gap_order = a.j - 1 - m
            x_rem = x_rem + step * (
                as_expr(Jet("u", 2, gap_order)) - as_expr(Jet("u", 0, gap_order + 2))
            )
            step = -total_derivative(step, SPACETIME, 1)
    lhs = divergence(reduced)
    rhs = mu * equation_expression(SPACETIME) + total_derivative(x_rem, SPACETIME, 1)
    if not is_zero(lhs - rhs):
        raise AssertionError("space-time divergence identity failed to close")
    return mu, x_rem


# ---------------------------------------------------------------------------
# JSON documents


def current_to_json(current: Current) -> str:
    doc = {
        "kind": "current",
        "frame": current.frame.name,
        "first": str(current.first),
        "second": str(current.second),
    }
    return json.dumps(doc)


def current_from_json(text: str) -> Current:
    doc = json.loads(text)
    frame = Frame.from_name(doc["frame"])
    return Current(frame, parse(doc["first"]), parse(doc["second"]))


def characteristic_to_json(characteristic: Characteristic) -> str:
    doc = {
        "kind": "characteristic",
        "frame": characteristic.frame.name,
        "multiplier": str(characteristic.multiplier),
    }
    return json.dumps(doc)


def characteristic_from_json(text: str) -> Characteristic:
    doc = json.loads(text)
    frame = Frame.from_name(doc["frame"])
    return Characteristic(frame, parse(doc["multiplier"]))


def witness_to_json(witness: TrivialWitness) -> str:
    doc = {
        "kind": "witness",
        "frame": "lightcone",
        "f_part": str(witness.f_part),
        "g_part": str(witness.g_part),
        "constant": str(witness.constant),
    }
    return json.dumps(doc)
