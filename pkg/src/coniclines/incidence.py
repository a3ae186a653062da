"""Intersection points, singular-point classification, abstract combinatorics.

Two rational lines always meet in a rational point, so only line-conic
intersections can leave the rationals.  Those are kept symbolic as a
conjugate pair (line, conic, discriminant): the pair contributes two
nodes, and no third component can pass through either point, so no
field-extension arithmetic is ever needed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, Component
from .linalg import QMatrix, kernel_basis
from .poly import ProjPoint


def is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return (
        math.isqrt(q.numerator) ** 2 == q.numerator
        and math.isqrt(q.denominator) ** 2 == q.denominator
    )


def squarefree_part(q: Fraction) -> int:
    """Squarefree integer representing q modulo nonzero rational squares."""
    if q == 0:
        return 0
    n = q.numerator * q.denominator
    sign = 1 if n > 0 else -1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
        if n % d == 0:
            out *= d
            n //= d
        d += 1
    return sign * out * n


@dataclass(frozen=True)
class Tangent:
    point: ProjPoint


@dataclass(frozen=True)
class TwoRational:
    p1: ProjPoint
    p2: ProjPoint


@dataclass(frozen=True)
class ConjugatePair:
    """Two Galois-conjugate intersection points of a line and the conic.

    The discriminant comes from the canonical parameterization of the
    line (kernel basis of its coefficient row), so it is deterministic;
    it is well defined up to a nonzero square factor.
    """

    discriminant: Fraction
    line: str
    conic: str


LineConicOutcome = Tangent | TwoRational | ConjugatePair


def intersect_lines(l1: Component, l2: Component) -> ProjPoint:
    """The unique common point of two non-proportional lines (cross product)."""
    if l1.kind != "line" or l2.kind != "line":
        raise ValueError("intersect_lines expects two lines")
    a = [l1.form.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    b = [l2.form.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    cross = (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    if not any(cross):
        raise ValueError(f"lines {l1.label} and {l2.label} are proportional")
    return ProjPoint(*cross)


def _line_points(line: Component) -> tuple[tuple, tuple]:
    """Two canonical integer coordinate vectors spanning the line.

    Raw tuples, not ProjPoints: the discriminant arithmetic needs
    unnormalized linear combinations.
    """
    row = [line.form.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    basis = kernel_basis(QMatrix.from_rows([row], cols=3))
    v1, v2 = basis.vectors
    return v1, v2


def intersect_line_conic(line: Component, conic: Component) -> LineConicOutcome:
    """Classify line ∩ conic by the discriminant of the restricted quadratic.

    Parameterize the line by s*P0 + t*P1 and restrict the conic to a binary
    quadratic A s^2 + B s t + C t^2; then Δ = B^2 - 4AC decides: 0 is a
    tangency, a nonzero square gives two rational points, anything else a
    conjugate pair.
    """
    if line.kind != "line" or conic.kind != "conic":
        raise ValueError("intersect_line_conic expects a line and a conic")
    p0, p1 = _line_points(line)
    q = conic.form

    A = q.evaluate_triple(p0)
    C = q.evaluate_triple(p1)
    mixed = tuple(a + b for a, b in zip(p0, p1))
    B = q.evaluate_triple(mixed) - A - C
    disc = B * B - 4 * A * C

    def point_at(s: Fraction, t: Fraction) -> ProjPoint:
        return ProjPoint(*(s * a + t * b for a, b in zip(p0, p1)))

    if disc == 0:
        if A == 0:
            # restriction is C t^2 with C != 0: double root at t = 0
            return Tangent(ProjPoint(*p0))
        return Tangent(point_at(Fraction(-B), Fraction(2 * A)))
    if is_rational_square(disc):
        root = Fraction(
            math.isqrt(disc.numerator), math.isqrt(disc.denominator)
        )
        if A == 0:
            pts = [point_at(Fraction(1), Fraction(0)), point_at(-C, B)]
        else:
            pts = [
                point_at(-B + root, 2 * A),
                point_at(-B - root, 2 * A),
            ]
        pts.sort()
        return TwoRational(pts[0], pts[1])
    return ConjugatePair(disc, line.label, conic.label)


def tangency(line: Component, conic: Component) -> bool:
    return isinstance(intersect_line_conic(line, conic), Tangent)


@dataclass(frozen=True)
class LocalType:
    """Local type of a singular point: node, tacnode, ordinary m-fold, other."""

    kind: str  # "node" | "tacnode" | "ordinary" | "other"
    branch_count: int
    signature: tuple[int, ...]  # sorted pairwise intersection multiplicities

    @property
    def key(self) -> tuple:
        return (self.kind, self.branch_count, self.signature)

    def display(self) -> str:
        if self.kind == "node":
            return "node"
        if self.kind == "tacnode":
            return "tacnode"
        if self.kind == "ordinary":
            if self.branch_count == 3:
                return "ordinary triple point"
            return f"ordinary point of multiplicity {self.branch_count}"
        return f"other (pairwise multiplicities {list(self.signature)})"


def classify(branch_count: int, signature: tuple[int, ...]) -> LocalType:
    if branch_count == 2 and signature == (1,):
        return LocalType("node", 2, signature)
    if branch_count == 2 and signature == (2,):
        return LocalType("tacnode", 2, signature)
    if branch_count >= 3 and all(m == 1 for m in signature):
        return LocalType("ordinary", branch_count, signature)
    return LocalType("other", branch_count, signature)


PairMults = tuple[tuple[tuple[str, str], int], ...]


@dataclass(frozen=True)
class SingularPoint:
    """A singular point of the arrangement with its local data.

    A record with a ConjugatePair location stands for the two conjugate
    nodes at once (point_count = 2); each carries the same rational data.
    """

    location: ProjPoint | ConjugatePair
    branches: frozenset[str]
    pair_mults: PairMults
    local_type: LocalType
    point_count: int = 1

    def mult(self, a: str, b: str) -> int:
        key = (a, b) if a <= b else (b, a)
        for pair, m in self.pair_mults:
            if pair == key:
                return m
        raise KeyError(f"components {a}, {b} do not both pass through this point")

    @property
    def is_rational(self) -> bool:
        return isinstance(self.location, ProjPoint)


def _canonical_pair_mults(raw: dict[tuple[str, str], int]) -> PairMults:
    return tuple(sorted(raw.items()))


def singular_points(a: Arrangement) -> tuple[SingularPoint, ...]:
    """All singular points, rational ones merged by canonical coordinates.

    Rational points come first, in lexicographic order of their canonical
    coordinate triples; conjugate-pair records follow, ordered by labels.
    """
    by_point: dict[ProjPoint, dict[tuple[str, str], int]] = {}
    conjugates: list[ConjugatePair] = []

    def record(p: ProjPoint, la: str, lb: str, mult: int):
        key = (la, lb) if la <= lb else (lb, la)
        by_point.setdefault(p, {})[key] = mult

    for c1, c2 in itertools.combinations(a.components, 2):
        if c1.kind == "line" and c2.kind == "line":
            record(intersect_lines(c1, c2), c1.label, c2.label, 1)
            continue
        line, conic = (c1, c2) if c1.kind == "line" else (c2, c1)
        outcome = intersect_line_conic(line, conic)
        if isinstance(outcome, Tangent):
            record(outcome.point, line.label, conic.label, 2)
        elif isinstance(outcome, TwoRational):
            record(outcome.p1, line.label, conic.label, 1)
            record(outcome.p2, line.label, conic.label, 1)
        else:
            conjugates.append(outcome)

    points: list[SingularPoint] = []
    for p in sorted(by_point):
        mults = by_point[p]
        branches = frozenset(itertools.chain.from_iterable(mults))
        # two components through the same rational point always have their
        # intersection recorded there, so the pair table is complete
        for x, y in itertools.combinations(sorted(branches), 2):
            if (x, y) not in mults:
                raise AssertionError(f"missing pair multiplicity for {x}, {y} at {p}")
        signature = tuple(sorted(mults.values()))
        points.append(
            SingularPoint(
                location=p,
                branches=branches,
                pair_mults=_canonical_pair_mults(mults),
                local_type=classify(len(branches), signature),
            )
        )
    for cj in sorted(conjugates, key=lambda c: (c.line, c.conic)):
        points.append(
            SingularPoint(
                location=cj,
                branches=frozenset((cj.line, cj.conic)),
                pair_mults=_canonical_pair_mults(
                    {tuple(sorted((cj.line, cj.conic))): 1}
                ),
                local_type=classify(2, (1,)),
                point_count=2,
            )
        )
    return tuple(points)


def bezout_table(a: Arrangement) -> dict[tuple[str, str], int]:
    """Sum of local multiplicities per component pair (should equal degree products)."""
    sums: dict[tuple[str, str], int] = {}
    for pt in singular_points(a):
        for pair, m in pt.pair_mults:
            sums[pair] = sums.get(pair, 0) + m * pt.point_count
    return sums


def bezout_check(a: Arrangement) -> bool:
    table = bezout_table(a)
    for c1, c2 in itertools.combinations(a.components, 2):
        key = tuple(sorted((c1.label, c2.label)))
        if table.get(key, 0) != c1.degree * c2.degree:
            return False
    return True


@dataclass(frozen=True)
class PointRecord:
    """Coordinate-free image of one singular point (conjugate pairs expanded)."""

    local_type: LocalType
    branches: frozenset[str]
    pair_mults: PairMults

    def mult(self, a: str, b: str) -> int:
        key = (a, b) if a <= b else (b, a)
        for pair, m in self.pair_mults:
            if pair == key:
                return m
        raise KeyError((a, b))

    def mapped_key(self, mapping: dict[str, str]) -> tuple:
        mapped_mults = tuple(
            sorted(
                ((tuple(sorted((mapping[x], mapping[y]))), m) for (x, y), m in self.pair_mults)
            )
        )
        return (
            self.local_type.key,
            tuple(sorted(mapping[l] for l in self.branches)),
            mapped_mults,
        )


@dataclass(frozen=True)
class Combinatorics:
    """Abstract incidence structure of an arrangement.

    Two projectively equivalent arrangements produce structures equal up
    to a bijection of labels; `equivalences` searches for those bijections.
    """

    degrees: tuple[tuple[str, int], ...]
    points: tuple[PointRecord, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.degrees)

    def degree_of(self, label: str) -> int:
        for l, d in self.degrees:
            if l == label:
                return d
        raise KeyError(f"unknown label {label!r}")

    def type_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for rec in self.points:
            name = rec.local_type.display()
            counts[name] = counts.get(name, 0) + 1
        return counts


def combinatorics(a: Arrangement) -> Combinatorics:
    degrees = tuple((c.label, c.degree) for c in a.components)
    records: list[PointRecord] = []
    for pt in singular_points(a):
        rec = PointRecord(pt.local_type, pt.branches, pt.pair_mults)
        records.extend([rec] * pt.point_count)
    return Combinatorics(degrees, tuple(records))


def component_fingerprint(c: Combinatorics, label: str) -> tuple:
    """(degree, multiset over the component's points of (local type, co-incident degrees)).

    Invariant under every combinatorial equivalence; used both as a report
    item and to prune the equivalence search.
    """
    degree = c.degree_of(label)
    entries = []
    for rec in c.points:
        if label in rec.branches:
            others = tuple(sorted(c.degree_of(other) for other in rec.branches if other != label))
            entries.append((rec.local_type.key, others))
    return (degree, tuple(sorted(entries)))


def _pair_profiles(c: Combinatorics) -> dict[tuple[str, str], tuple]:
    profiles: dict[tuple[str, str], list] = {}
    for rec in c.points:
        for x, y in itertools.combinations(sorted(rec.branches), 2):
            profiles.setdefault((x, y), []).append(
                (rec.local_type.key, rec.mult(x, y), len(rec.branches))
            )
    return {k: tuple(sorted(v)) for k, v in profiles.items()}


def _record_multiset(c: Combinatorics, mapping: dict[str, str]) -> tuple:
    return tuple(sorted(rec.mapped_key(mapping) for rec in c.points))


def equivalences(
    c1: Combinatorics, c2: Combinatorics, find_all: bool = True
) -> list[dict[str, str]]:
    """All label bijections carrying c1's incidence structure onto c2's.

    Backtracking over fingerprint-compatible candidates with pairwise
    profile pruning, then a full multiset check at the leaves.  An empty
    list means the arrangements are combinatorially distinct.
    """
    labels1, labels2 = c1.labels, c2.labels
    if len(labels1) != len(labels2):
        return []
    if sorted(d for _, d in c1.degrees) != sorted(d for _, d in c2.degrees):
        return []
    if sorted(r.local_type.key for r in c1.points) != sorted(
        r.local_type.key for r in c2.points
    ):
        return []

    fp1 = {l: component_fingerprint(c1, l) for l in labels1}
    fp2 = {l: component_fingerprint(c2, l) for l in labels2}
    candidates = {l: [m for m in labels2 if fp2[m] == fp1[l]] for l in labels1}
    if any(not opts for opts in candidates.values()):
        return []
    prof1 = _pair_profiles(c1)
    prof2 = _pair_profiles(c2)
    target = tuple(sorted(rec.mapped_key({l: l for l in labels2}) for rec in c2.points))

    order = sorted(labels1, key=lambda l: (len(candidates[l]), l))
    results: list[dict[str, str]] = []
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def compatible(l: str, m: str) -> bool:
        for other, image in mapping.items():
            key1 = (l, other) if l <= other else (other, l)
            key2 = (m, image) if m <= image else (image, m)
            if prof1.get(key1, ()) != prof2.get(key2, ()):
                return False
        return True

    def extend(i: int):
        if i == len(order):
            if _record_multiset(c1, mapping) == target:
                results.append(dict(mapping))
            return
        l = order[i]
        for m in candidates[l]:
            if m in used or not compatible(l, m):
                continue
            mapping[l] = m
            used.add(m)
            extend(i + 1)
            used.discard(m)
            del mapping[l]
            if results and not find_all:
                return

    extend(0)
    results.sort(key=lambda mp: tuple(mp[l] for l in labels1))
    return results


def equivalent(c1: Combinatorics, c2: Combinatorics) -> bool:
    return bool(equivalences(c1, c2, find_all=False))
