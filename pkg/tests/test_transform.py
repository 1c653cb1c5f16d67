"""Exact translation of expressions, currents, and multipliers between frames."""

import random

import pytest

from jetlaw.expr import is_zero, parse
from jetlaw.jets import LIGHTCONE, SPACETIME, reduce_to_solutions
from jetlaw.conservation import (
    CanonicalCurrent,
    Characteristic,
    Current,
    verify_current,
)
from jetlaw.transform import (
    characteristic_to_lightcone,
    characteristic_to_spacetime,
    current_to_lightcone,
    current_to_spacetime,
    substitute_to_lightcone,
    substitute_to_spacetime,
)

# jet images under the change of independent variables (t, x) <-> (xi, eta),
# with xi = x + t and eta = x - t
TO_SPACETIME = [
    ("w[0,0]", "u[0,0]"),
    ("w[1,0]", "1/2*u[1,0] + 1/2*u[0,1]"),
    ("w[0,1]", "-1/2*u[1,0] + 1/2*u[0,1]"),
    ("w[2,0]", "1/2*u[1,1] + 1/2*u[0,2]"),  # u[2,0] is eliminated on solutions
    ("w[0,2]", "-1/2*u[1,1] + 1/2*u[0,2]"),
    ("w[0,3]", "-1/2*u[1,2] + 1/2*u[0,3]"),
    ("xi", "t + x"),
    ("eta", "-t + x"),
]

TO_LIGHTCONE = [
    ("u[0,0]", "w[0,0]"),
    ("u[1,0]", "w[1,0] - w[0,1]"),
    ("u[0,1]", "w[1,0] + w[0,1]"),
    ("u[0,2]", "w[2,0] + w[0,2]"),
    ("u[1,1]", "w[2,0] - w[0,2]"),
    ("u[0,3]", "w[3,0] + w[0,3]"),
    ("u[1,2]", "w[3,0] - w[0,3]"),
    ("t", "1/2*xi - 1/2*eta"),
    ("x", "1/2*xi + 1/2*eta"),
]


@pytest.mark.parametrize("source,expected", TO_SPACETIME)
def test_atom_images_to_spacetime(source, expected):
    assert substitute_to_spacetime(parse(source)) == parse(expected)


@pytest.mark.parametrize("source,expected", TO_LIGHTCONE)
def test_atom_images_to_lightcone(source, expected):
    assert substitute_to_lightcone(parse(source)) == parse(expected)


def test_substitution_checks_frame():
    with pytest.raises(Exception):
        substitute_to_spacetime(parse("u[1,0]"))
    with pytest.raises(Exception):
        substitute_to_lightcone(parse("w[1,0]"))


REPRESENTATIVE_LIGHTCONE = [
    "w[1,0]*w[0,1]",
    "xi*w[2,0] + eta*w[0,2]",
    "exp(2*w[0,2])",
    "w[0,1]^2 - w[1,0]^2 + xi*eta",
]

REPRESENTATIVE_SPACETIME = [
    "u[1,0]*u[0,1]",
    "t*u[0,2] + x*u[1,1]",
    "exp(u[0,2] - u[1,1])",
    "1/2*u[1,0]^2 + 1/2*u[0,1]^2 - t*x",
]


@pytest.mark.parametrize("text", REPRESENTATIVE_LIGHTCONE)
def test_round_trip_from_lightcone(text):
    e = parse(text)
    assert substitute_to_lightcone(substitute_to_spacetime(e)) == e


@pytest.mark.parametrize("text", REPRESENTATIVE_SPACETIME)
def test_round_trip_from_spacetime(text):
    e = parse(text)
    assert substitute_to_spacetime(substitute_to_lightcone(e)) == e


def test_substitution_reduces_first():
    # principal jets are eliminated before translating, so u[2,0] is legal input
    assert substitute_to_lightcone(parse("u[2,0]")) == parse("w[2,0] + w[0,2]")
    assert substitute_to_spacetime(parse("w[1,1]")) == 0


# --- currents -------------------------------------------------------------------

GOLDEN_TO_SPACETIME = [
    ("-w[0,1]", "-w[1,0]", "u[1,0]", "-u[0,1]"),
    ("w[0,1]^2", "-w[1,0]^2", "1/2*u[1,0]^2 + 1/2*u[0,1]^2", "-u[1,0]*u[0,1]"),
    (
        "eta*w[0,1]",
        "-xi*w[1,0]",
        "x*u[0,1] + t*u[1,0]",
        "-x*u[1,0] - t*u[0,1]",
    ),
    (
        "-eta*w[0,1]",
        "-xi*w[1,0]",
        "x*u[1,0] + t*u[0,1]",
        "-x*u[0,1] - t*u[1,0]",
    ),
    ("exp(2*w[0,2])", "0", "exp(u[0,2] - u[1,1])", "exp(u[0,2] - u[1,1])"),
]


@pytest.mark.parametrize("f,g,t_comp,x_comp", GOLDEN_TO_SPACETIME)
def test_current_to_spacetime(f, g, t_comp, x_comp):
    # scaling convention: (T, X) = (F - G, F + G) after substitution, which
    # keeps D_t T + D_x X a positive multiple of the light-cone divergence
    cur = Current(LIGHTCONE, parse(f), parse(g))
    out = current_to_spacetime(cur)
    assert out.frame is SPACETIME
    assert out.first == parse(t_comp) * parse("1/2") * 2  # exact equality
    assert out.first == parse(t_comp)
    assert out.second == parse(x_comp)


@pytest.mark.parametrize("f,g,t_comp,x_comp", GOLDEN_TO_SPACETIME)
def test_current_round_trip(f, g, t_comp, x_comp):
    cur = Current(LIGHTCONE, parse(f), parse(g))
    back = current_to_lightcone(current_to_spacetime(cur))
    assert back.first == cur.first and back.second == cur.second
    st = Current(SPACETIME, parse(t_comp), parse(x_comp))
    again = current_to_spacetime(current_to_lightcone(st))
    assert again.first == st.first and again.second == st.second


@pytest.mark.parametrize("f,g,t_comp,x_comp", GOLDEN_TO_SPACETIME)
def test_transform_preserves_conservation(f, g, t_comp, x_comp):
    assert verify_current(current_to_spacetime(Current(LIGHTCONE, parse(f), parse(g))))
    assert verify_current(current_to_lightcone(Current(SPACETIME, parse(t_comp), parse(x_comp))))


def test_current_transform_checks_frame():
    with pytest.raises(ValueError):
        current_to_spacetime(Current(SPACETIME, parse("u[1,0]"), parse("-u[0,1]")))
    with pytest.raises(ValueError):
        current_to_lightcone(Current(LIGHTCONE, parse("-w[0,1]"), parse("-w[1,0]")))


def test_canonical_input_stays_current():
    cur = CanonicalCurrent(LIGHTCONE, parse("w[0,1]^2"), parse("-w[1,0]^2"))
    out = current_to_spacetime(cur)
    assert isinstance(out, Current)


# --- characteristics --------------------------------------------------------------

CHARACTERISTIC_PAIRS = [
    ("-2", "1"),
    ("eta - xi", "t"),
    ("-eta - xi", "x"),
    ("2*w[0,1] - 2*w[1,0]", "u[1,0]"),
]


@pytest.mark.parametrize("lam,mu", CHARACTERISTIC_PAIRS)
def test_characteristic_to_spacetime(lam, mu):
    out = characteristic_to_spacetime(Characteristic(LIGHTCONE, parse(lam)))
    assert out.frame is SPACETIME
    assert out.multiplier == parse(mu)


@pytest.mark.parametrize("lam,mu", CHARACTERISTIC_PAIRS)
def test_characteristic_to_lightcone(lam, mu):
    out = characteristic_to_lightcone(Characteristic(SPACETIME, parse(mu)))
    assert out.frame is LIGHTCONE
    assert out.multiplier == parse(lam)


@pytest.mark.parametrize("lam,mu", CHARACTERISTIC_PAIRS)
def test_characteristic_round_trip(lam, mu):
    start = Characteristic(LIGHTCONE, parse(lam))
    assert characteristic_to_lightcone(characteristic_to_spacetime(start)).multiplier == start.multiplier
    other = Characteristic(SPACETIME, parse(mu))
    assert characteristic_to_spacetime(characteristic_to_lightcone(other)).multiplier == other.multiplier


def test_characteristic_transform_checks_frame():
    with pytest.raises(ValueError):
        characteristic_to_spacetime(Characteristic(SPACETIME, parse("1")))
    with pytest.raises(ValueError):
        characteristic_to_lightcone(Characteristic(LIGHTCONE, parse("-2")))


# --- randomized round trips --------------------------------------------------------


def _random_solution_expression(rng, frame):
    if frame is LIGHTCONE:
        atoms = ["xi", "eta", "w[0,0]", "w[1,0]", "w[0,1]", "w[2,0]", "w[0,2]"]
    else:
        atoms = ["t", "x", "u[0,0]", "u[1,0]", "u[0,1]", "u[0,2]", "u[1,1]"]
    total = parse("0")
    for _ in range(rng.randint(1, 4)):
        term = parse(str(rng.randint(-3, 3) or 1))
        for _ in range(rng.randint(1, 3)):
            term = term * parse(rng.choice(atoms))
        total = total + term
    return total


def test_random_round_trips_from_lightcone():
    rng = random.Random(17)
    for _ in range(40):
        e = _random_solution_expression(rng, LIGHTCONE)
        assert is_zero(substitute_to_lightcone(substitute_to_spacetime(e)) - e)


def test_random_round_trips_from_spacetime():
    rng = random.Random(18)
    for _ in range(40):
        e = _random_solution_expression(rng, SPACETIME)
        back = substitute_to_spacetime(substitute_to_lightcone(e))
        assert is_zero(back - reduce_to_solutions(e, SPACETIME))
