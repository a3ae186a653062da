import random
from fractions import Fraction
from pathlib import Path

import pytest

from coniclines import parse
from coniclines.arrangement import Arrangement, Component, conic_form, line_form
from coniclines.poly import HomPoly

DATA = Path(__file__).resolve().parent.parent / "data"

PAIR_FILES = {
    "pair1_B1": DATA / "pair1_B1.txt",
    "pair1_B2": DATA / "pair1_B2.txt",
    "pair2_B1": DATA / "pair2_B1.txt",
    "pair2_B2": DATA / "pair2_B2.txt",
}


def load(name: str) -> Arrangement:
    return parse(PAIR_FILES[name].read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def pair1_b1():
    return load("pair1_B1")


@pytest.fixture(scope="session")
def pair1_b2():
    return load("pair1_B2")


@pytest.fixture(scope="session")
def pair2_b1():
    return load("pair2_B1")


@pytest.fixture(scope="session")
def pair2_b2():
    return load("pair2_B2")


def random_line(rng: random.Random) -> HomPoly:
    while True:
        coeffs = [rng.randint(-6, 6) for _ in range(3)]
        if any(coeffs):
            return line_form(coeffs)


def random_smooth_conic(rng: random.Random) -> HomPoly:
    from coniclines.arrangement import conic_matrix_determinant

    while True:
        coeffs = [rng.randint(-4, 4) for _ in range(6)]
        if not any(coeffs):
            continue
        form = conic_form(coeffs)
        if conic_matrix_determinant(form) != 0:
            return form


def random_arrangement(
    rng: random.Random, max_lines: int = 5, with_conic: bool | None = None
) -> Arrangement:
    """A random valid arrangement with distinct lines and an optional smooth conic."""
    components = []
    forms = set()
    if with_conic is None:
        with_conic = rng.random() < 0.5
    if with_conic:
        q = random_smooth_conic(rng)
        components.append(Component("C", "conic", q))
        forms.add(q)
    n = rng.randint(1, max_lines)
    i = 0
    while i < n:
        f = random_line(rng)
        if f in forms:
            continue
        forms.add(f)
        components.append(Component(f"L{i + 1}", "line", f))
        i += 1
    return Arrangement(tuple(components), {})


def random_invertible_matrix(rng: random.Random) -> tuple[tuple[int, ...], ...]:
    while True:
        m = tuple(tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(3))
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det != 0:
            return m


def transform_arrangement(a: Arrangement, m) -> Arrangement:
    """Apply the linear substitution (x, y, z) -> m * (x, y, z) to every form."""
    images = tuple(
        HomPoly.from_terms(1, {(1, 0, 0): m[i][0], (0, 1, 0): m[i][1], (0, 0, 1): m[i][2]})
        for i in range(3)
    )
    new_components = tuple(
        Component(c.label, c.kind, c.form.substitute(images).primitive())
        for c in a.components
    )
    return Arrangement(new_components, dict(a.subcurves))


def random_matrix_rows(rng: random.Random, max_dim: int = 12):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    grid = [
        [
            Fraction(rng.randint(-9, 9), rng.choice((1, 1, 1, 2, 3)))
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]
    if rng.random() < 0.4 and rows >= 2:
        # plant a dependent row so rank-deficient inputs are common
        src = rng.randrange(rows - 1)
        factor = Fraction(rng.randint(-3, 3))
        grid[-1] = [factor * e for e in grid[src]]
    return grid, cols
