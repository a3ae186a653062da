"""Splitting hypotheses, linear systems, connected numbers, certificates."""

import random

import pytest

from coniclines.arrangement import Arrangement, Component, parse
from coniclines.linalg import in_span, intersect_subspaces
from coniclines.poly import HomPoly, ProjPoint, multiplication_image
from coniclines.splitting import (
    SplitHypothesisError,
    analyze_split,
    certificate_report,
    check_hypotheses,
    connected_number,
    connected_number_with_witness,
    through_points,
    zariski_certificate,
)

from .conftest import load, random_invertible_matrix, transform_arrangement
from .oracles import sympy_divides

PAIR1_B1_POINTS = {
    ProjPoint(0, -5, 1),
    ProjPoint(0, 10, 3),
    ProjPoint(-5, 0, 1),
    ProjPoint(10, 0, 3),
    ProjPoint(1, -1, 0),
    ProjPoint(1, 4, 1),
    ProjPoint(4, 1, 1),
    ProjPoint(0, 1, 1),
    ProjPoint(1, 0, 1),
}


def split_of(a):
    return a.subcurve("B"), a.subcurve("CC")


def test_pair1_hypotheses_pass(pair1_b1):
    b, c = split_of(pair1_b1)
    report = check_hypotheses(b, c)
    assert report.ok
    assert report.violations == ()
    assert len(report.intersection_points) == 9
    assert set(report.intersection_points) == PAIR1_B1_POINTS


@pytest.mark.parametrize("name", ["pair1_B2", "pair2_B1", "pair2_B2"])
def test_other_examples_hypotheses_pass(name):
    b, c = split_of(load(name))
    report = check_hypotheses(b, c)
    assert report.ok
    assert len(report.intersection_points) == 9


def test_odd_degree_branch_rejected(pair1_b1):
    b = pair1_b1.subcurve_of(["L1"])
    c = pair1_b1.subcurve_of(["C", "L2", "L3", "L4", "L5", "L6", "L7"])
    report = check_hypotheses(b, c)
    assert not report.b_even_degree
    assert any("odd" in v for v in report.violations)


def test_non_nodal_c_rejected(pair1_b1):
    # putting the tangent line L1 with the conic makes C carry a tacnode
    c = pair1_b1.subcurve_of(["C", "L1"])
    b = pair1_b1.subcurve_of(["L2", "L3", "L4", "L5", "L6", "L7"])
    report = check_hypotheses(b, c)
    assert not report.c_nodal_smooth
    assert any("tacnode" in v for v in report.violations)


def test_b_through_node_of_c_rejected():
    # L3 passes through the node of L1 and L2 at [0:0:1]... use concurrent lines
    text = """
line L1 : 1 0 0
line L2 : 0 1 0
line L3 : 1 1 0
line L4 : 1 2 0
"""
    a = parse(text)
    # L1..L3 all pass through [0:0:1]; C = {L1, L2} has its node there
    b = a.subcurve_of(["L3", "L4"])
    c = a.subcurve_of(["L1", "L2"])
    report = check_hypotheses(b, c)
    assert not report.bc_disjoint_from_nodes_of_c


def test_conjugate_intersection_across_split_rejected():
    text = """
conic Q : 1 1 -1 0 0 0
line L1 : 0 1 -2
line L2 : 0 1 -3
"""
    a = parse(text)
    b = a.subcurve_of(["L1", "L2"])  # even degree
    c = a.subcurve_of(["Q"])
    report = check_hypotheses(b, c)
    assert not report.all_local_mults_two
    assert any("conjugate" in v for v in report.violations)


def test_split_must_partition(pair1_b1):
    b = pair1_b1.subcurve_of(["C", "L4"])
    c = pair1_b1.subcurve_of(["L1", "L2", "L3"])
    with pytest.raises(ValueError, match="cover"):
        check_hypotheses(b, c)
    overlapping = pair1_b1.subcurve_of(["C", "L1", "L4", "L5", "L6", "L7"])
    c2 = pair1_b1.subcurve_of(["L1", "L2", "L3"])
    with pytest.raises(ValueError, match="share"):
        check_hypotheses(overlapping, c2)


def test_evaluation_matrix_ranks():
    from coniclines.linalg import QMatrix, rank
    from coniclines.poly import monomial_row

    expected = {"pair1_B1": 8, "pair1_B2": 9}
    for name, r in expected.items():
        b, c = split_of(load(name))
        report = check_hypotheses(b, c)
        m = QMatrix.from_rows(
            [monomial_row(3, p) for p in report.intersection_points], cols=10
        )
        assert (m.rows, m.cols) == (9, 10)
        assert rank(m) == r


def test_through_points_projective_dimensions():
    expected = {
        "pair1_B1": 1,
        "pair1_B2": 0,
        "pair2_B1": 0,
        "pair2_B2": 1,
    }
    for name, dim in expected.items():
        a = load(name)
        b, c = split_of(a)
        report = check_hypotheses(b, c)
        system = through_points(3, report.intersection_points)
        assert system.projective_dimension == dim, name


def test_kernel_contains_c_part_polynomial():
    for name in ("pair1_B1", "pair1_B2", "pair2_B1", "pair2_B2"):
        a = load(name)
        b, c = split_of(a)
        report = check_hypotheses(b, c)
        system = through_points(3, report.intersection_points)
        vec = c.defining_polynomial().primitive().coefficient_vector()
        assert in_span(vec, system.kernel)


def test_kernel_vectors_vanish_at_all_points():
    for name in ("pair1_B1", "pair2_B2"):
        a = load(name)
        b, c = split_of(a)
        report = check_hypotheses(b, c)
        system = through_points(3, report.intersection_points)
        for f in system.basis_polynomials():
            for p in report.intersection_points:
                assert f.evaluate(p) == 0


def test_through_points_rejects_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        through_points(2, [ProjPoint(1, 0, 0), ProjPoint(2, 0, 0)])


def test_through_points_rejects_degree_zero():
    with pytest.raises(ValueError):
        through_points(0, [ProjPoint(1, 0, 0)])


def test_connected_numbers_of_both_pairs():
    values = {
        "pair1_B1": 2,
        "pair1_B2": 1,
        "pair2_B1": 1,
        "pair2_B2": 2,
    }
    for name, expected in values.items():
        b, c = split_of(load(name))
        assert connected_number(b, c) == expected, name


def test_witness_properties_pair1():
    b, c = split_of(load("pair1_B1"))
    value, witness = connected_number_with_witness(b, c)
    assert value == 2
    assert witness is not None
    report = check_hypotheses(b, c)
    for p in report.intersection_points:
        assert witness.evaluate(p) == 0
    for comp in c.components:
        assert witness.try_divide(comp.form) is None
        assert not sympy_divides(witness, comp.form)


def test_witness_properties_pair2():
    b, c = split_of(load("pair2_B2"))
    value, witness = connected_number_with_witness(b, c)
    assert value == 2
    for comp in c.components:
        assert witness.try_divide(comp.form) is None


def test_divisibility_dual_oracle():
    # subspace-intersection verdict == exact polynomial division, on K's basis
    for name in ("pair1_B1", "pair1_B2", "pair2_B1", "pair2_B2"):
        a = load(name)
        b, c = split_of(a)
        report = check_hypotheses(b, c)
        system = through_points(3, report.intersection_points)
        K = system.kernel
        for comp in c.components:
            if comp.degree > 3:
                continue
            sub = intersect_subspaces(K, multiplication_image(comp.form, 3))
            assert sub.dim <= K.dim
            for v in K.vectors:
                by_subspace = in_span(v, sub)
                by_division = HomPoly(3, v).try_divide(comp.form) is not None
                assert by_subspace == by_division


def test_connected_number_requires_hypotheses(pair1_b1):
    b = pair1_b1.subcurve_of(["L1"])
    c = pair1_b1.subcurve_of(["C", "L2", "L3", "L4", "L5", "L6", "L7"])
    with pytest.raises(SplitHypothesisError):
        connected_number(b, c)


def test_synthetic_empty_system_gives_one():
    # conic with three tangent lines: the three tacnode points are not
    # collinear, so no line passes through all of them and c = 1
    text = """
conic Q : 1 1 -1 0 0 0
line T1 : 1 0 -1
line T2 : 0 1 -1
line T3 : 1 0 1
"""
    a = parse(text)
    b = a.subcurve_of(["Q"])
    c = a.subcurve_of(["T1", "T2", "T3"])
    report = check_hypotheses(b, c)
    assert report.ok
    assert len(report.intersection_points) == 3
    system = through_points(1, report.intersection_points)
    assert system.kernel.dim == 0
    assert connected_number(b, c) == 1


def test_synthetic_tangent_line_splits():
    # double cover branched along a conic: a single tangent line splits
    text = """
conic Q : 1 1 -1 0 0 0
line T1 : 1 0 -1
"""
    a = parse(text)
    b = a.subcurve_of(["Q"])
    c = a.subcurve_of(["T1"])
    value, witness = connected_number_with_witness(b, c)
    assert value == 2
    assert witness.try_divide(c.components[0].form) is None


def test_connected_number_invariant_under_relabeling(pair1_b1):
    renamed = {"C": "Q", "L1": "M1", "L2": "M2", "L3": "M3",
               "L4": "M4", "L5": "M5", "L6": "M6", "L7": "M7"}
    comps = tuple(
        Component(renamed[c.label], c.kind, c.form) for c in pair1_b1.components
    )
    sub = {
        name: tuple(renamed[l] for l in labels)
        for name, labels in pair1_b1.subcurves.items()
    }
    relabeled = Arrangement(comps, sub)
    assert connected_number(*split_of(relabeled)) == connected_number(*split_of(pair1_b1))


def test_connected_number_invariant_under_projective_transform():
    rng = random.Random(99)
    for name in ("pair1_B1", "pair2_B2"):
        a = load(name)
        base = connected_number(*split_of(a))
        for _ in range(3):
            m = random_invertible_matrix(rng)
            moved = transform_arrangement(a, m)
            assert connected_number(*split_of(moved)) == base


def test_zariski_certificate_pair1(pair1_b1, pair1_b2):
    cert = zariski_certificate(pair1_b1, pair1_b2, ("B", "CC"), ("B", "CC"))
    assert cert.conclusion == "CandidatePair"
    assert cert.equivalences_found and cert.split_rigid
    assert cert.c_values == (2, 1)
    assert any("invariance" in ax for ax in cert.axioms_used)


def test_zariski_certificate_pair2(pair2_b1, pair2_b2):
    cert = zariski_certificate(pair2_b1, pair2_b2, ("B", "CC"), ("B", "CC"))
    assert cert.conclusion == "CandidatePair"
    assert cert.c_values == (1, 2)


def test_zariski_certificate_self_is_inconclusive(pair1_b1):
    cert = zariski_certificate(pair1_b1, pair1_b1, ("B", "CC"), ("B", "CC"))
    assert cert.conclusion == "Inconclusive"
    assert cert.c_values == (2, 2)
    assert any("agree" in r for r in cert.reasons)


def test_certificate_report_is_stable(pair1_b1, pair1_b2):
    cert = zariski_certificate(pair1_b1, pair1_b2, ("B", "CC"), ("B", "CC"))
    text1 = certificate_report(cert, "a", "b")
    text2 = certificate_report(
        zariski_certificate(pair1_b1, pair1_b2, ("B", "CC"), ("B", "CC")), "a", "b"
    )
    assert text1 == text2
    assert "conclusion: CandidatePair" in text1


def test_analyze_split_bundle(pair2_b2):
    analysis = analyze_split(*split_of(pair2_b2))
    assert analysis.connected == 2
    assert analysis.b_degree == 6 and analysis.c_degree == 3
    assert analysis.system.projective_dimension == 1
    assert analysis.witness is not None
