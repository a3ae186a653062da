"""Connectivity certificates: n-values, ordering search, minimality driver."""

import random

import pytest

from coniclines.arrangement import Arrangement, Component, parse
from coniclines.incidence import combinatorics
from coniclines.moduli import (
    AXIOM_LINES,
    connectivity_certificate,
    minimality_check,
    minimality_report_text,
    n_value,
    replay_certificate,
)

from .conftest import load, random_invertible_matrix, transform_arrangement


def comb_of(text: str):
    return combinatorics(parse(text))


def test_n_value_transverse_only():
    # L3 meets two prior lines in two distinct points: every point simple
    c = comb_of("line L1 : 1 0 0\nline L2 : 0 1 0\nline L3 : 1 1 -5\n")
    assert n_value(c, "L3", {"L1", "L2"}) == 0


def test_n_value_through_prior_intersection():
    # L3 passes through the intersection of L1 and L2 at [0:0:1]
    c = comb_of("line L1 : 1 0 0\nline L2 : 0 1 0\nline L3 : 1 1 0\n")
    assert n_value(c, "L3", {"L1", "L2"}) == 1


def test_n_value_counts_conic_tangency():
    c = comb_of("conic C : 1 1 1 -2 -2 -2\nline L1 : 1 0 0\n")
    assert n_value(c, "L1", {"C"}) == 1


def test_n_value_conjugate_nodes_do_not_count():
    # the line meets the conic in two conjugate nodes, each simple
    c = comb_of("conic Q : 1 1 -1 0 0 0\nline L1 : 0 1 -2\n")
    assert n_value(c, "L1", {"Q"}) == 0


def test_n_value_unknown_labels(pair1_b1):
    c = combinatorics(pair1_b1)
    with pytest.raises(KeyError):
        n_value(c, "L99", {"L1"})
    with pytest.raises(KeyError):
        n_value(c, "L1", {"L99"})
    with pytest.raises(ValueError):
        n_value(c, "L1", {"L1"})


def test_certificate_conic_with_two_tangents_only():
    c = comb_of(
        "conic C : 1 1 1 -2 -2 -2\nline L1 : 1 0 0\nline L2 : 0 1 0\n"
    )
    cert = connectivity_certificate(c)
    assert cert is not None
    assert cert.base_rule == "ConicWithTangents"
    assert set(cert.base) == {"C", "L1", "L2"}
    assert cert.order == ()
    assert replay_certificate(c, cert)


def test_certificate_bare_conic():
    c = comb_of("conic C : 1 1 1 -2 -2 -2\n")
    cert = connectivity_certificate(c)
    assert cert is not None and cert.base == ("C",)


def test_certificate_pure_lines():
    a = load("pair1_B1")
    lines_only = a.restrict([l for l in a.labels if l != "C"])
    cert = connectivity_certificate(combinatorics(lines_only))
    assert cert is not None
    assert cert.base_rule == "PureLinesAtMost9"
    assert len(cert.base) == 7
    assert replay_certificate(combinatorics(lines_only), cert)


def test_certificate_three_tangents_unknown():
    # three tangent lines to the circle: the base rule does not apply
    text = """
conic Q : 1 1 -1 0 0 0
line T1 : 1 0 -1
line T2 : 0 1 -1
line T3 : 1 0 1
"""
    assert connectivity_certificate(comb_of(text)) is None


@pytest.mark.parametrize("name", ["pair1_B1", "pair2_B1"])
@pytest.mark.parametrize("drop", ["L1", "L4", "L7"])
def test_certificates_for_single_line_deletions(name, drop):
    a = load(name)
    sub = a.restrict([l for l in a.labels if l != drop])
    c = combinatorics(sub)
    cert = connectivity_certificate(c)
    assert cert is not None
    assert all(n <= 2 for n in cert.n_values)
    assert replay_certificate(c, cert)


def test_certificate_label_independent(pair1_b1):
    sub = pair1_b1.restrict([l for l in pair1_b1.labels if l != "L4"])
    renamed = {l: f"X{i}" for i, l in enumerate(sub.labels)}
    relabeled = Arrangement(
        tuple(Component(renamed[c.label], c.kind, c.form) for c in sub.components), {}
    )
    cert = connectivity_certificate(combinatorics(relabeled))
    assert cert is not None
    assert replay_certificate(combinatorics(relabeled), cert)


def test_n_value_coordinate_free():
    rng = random.Random(7)
    a = load("pair1_B1").restrict(["C", "L1", "L2", "L3", "L4", "L5"])
    c_before = combinatorics(a)
    prior = {"C", "L1", "L2", "L3"}
    base = {l: n_value(c_before, l, prior) for l in ("L4", "L5")}
    for _ in range(5):
        m = random_invertible_matrix(rng)
        c_after = combinatorics(transform_arrangement(a, m))
        for l, expected in base.items():
            assert n_value(c_after, l, prior) == expected


def test_minimality_pair1(pair1_b1, pair1_b2):
    report = minimality_check(pair1_b1, pair1_b2)
    assert report.overall == "Minimal"
    conic_deletion = next(d for d in report.deletions if d.deleted == "C")
    assert conic_deletion.certificate.base_rule == "PureLinesAtMost9"
    for d in report.deletions:
        if d.deleted != "C":
            assert d.certificate.base_rule == "ConicWithTangents"
            assert all(n <= 2 for n in d.certificate.n_values)
    assert AXIOM_LINES in report.axioms_used
    assert all(s.certificate is not None for s in report.shared_classes)


def test_minimality_pair2(pair2_b1, pair2_b2):
    report = minimality_check(pair2_b1, pair2_b2)
    assert report.overall == "Minimal"
    assert all(d.certified for d in report.deletions)


def test_minimality_two_triangles():
    t1 = parse("line L1 : 1 0 0\nline L2 : 0 1 0\nline L3 : 1 1 -5\n")
    t2 = parse("line L1 : 1 0 0\nline L2 : 0 1 0\nline L3 : 2 3 -7\n")
    report = minimality_check(t1, t2)
    assert report.overall == "Minimal"
    assert all(
        d.certificate and d.certificate.base_rule == "PureLinesAtMost9"
        for d in report.deletions
    )


def test_minimality_requires_equivalence(pair1_b1, pair2_b1):
    with pytest.raises(ValueError, match="equivalent"):
        minimality_check(pair1_b1, pair2_b1)


def test_minimality_report_text_stable(pair1_b1, pair1_b2):
    r1 = minimality_report_text(minimality_check(pair1_b1, pair1_b2), "a", "b")
    r2 = minimality_report_text(minimality_check(pair1_b1, pair1_b2), "a", "b")
    assert r1 == r2
    assert "overall: Minimal" in r1
    assert "at-most-9-lines axiom" in r1


def test_replay_rejects_wrong_certificate(pair1_b1):
    sub = pair1_b1.restrict([l for l in pair1_b1.labels if l != "L4"])
    c = combinatorics(sub)
    cert = connectivity_certificate(c)
    other = pair1_b1.restrict([l for l in pair1_b1.labels if l != "L5"])
    assert not replay_certificate(combinatorics(other), cert)
