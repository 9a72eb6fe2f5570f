"""Construction pipeline: congruence gates, witness search, cover gates,
certificates, and the canonical arrangements.

Frozen values come from exhaustive searches and hand-checked placements at
q = 7, 9, 13 run against the point-counting oracle.
"""
import pytest

from splitjac.construct import (ConstructionCertificate, Genus3Cover,
                                InvalidCoverError, InvalidTracesError,
                                NotConsistent, arrange_triple, build_cover,
                                construct_from_traces, decide_consistency,
                                degree8_check, enumerate_triples,
                                hurwitz_ram_count, realize_plan)
from splitjac.ecurve import EllipticModel, quadratic_twist, trace
from splitjac.ff import Poly, make_field, poly_from_roots


f7 = make_field(7)
f13 = make_field(13)


def model(field, coeffs):
    return EllipticModel(Poly(field, coeffs))


def worked_models():
    """The q=13 strong instance: x(x-1)(x-12), x(x-1)(x-3), x(x-12)(x-3)."""
    zero, one = f13.zero, f13.one
    m1 = EllipticModel(poly_from_roots(f13, [zero, one, f13(12)]))
    m2 = EllipticModel(poly_from_roots(f13, [zero, one, f13(3)]))
    m3 = EllipticModel(poly_from_roots(f13, [zero, f13(12), f13(3)]))
    return m1, m2, m3


class TestCongruenceGates:
    def test_all_zero_residues_are_strong(self):
        plan = decide_consistency(13, (-6, -2, 2), "auto")
        assert plan.mode == "strong"

    def test_two_two_zero_residues_are_weak(self):
        plan = decide_consistency(7, (-2, 2, -4), "auto")
        assert plan.mode == "weak"

    def test_all_two_residues_rejected_by_parity(self):
        # group orders 10, 14, 18: all 2 mod 4, impossible for any cover
        r = decide_consistency(13, (-4, 0, 4), "auto")
        assert isinstance(r, NotConsistent)
        assert "even" in r.reason

    def test_single_two_residue_rejected_by_parity(self):
        r = decide_consistency(13, (-6, -2, 0), "auto")
        assert isinstance(r, NotConsistent)

    def test_odd_group_order_rejected(self):
        r = decide_consistency(13, (-6, 2, 3), "auto", relaxed=True)
        assert isinstance(r, NotConsistent)
        assert "odd" in r.reason

    def test_mode_mismatch_is_not_consistent(self):
        r = decide_consistency(13, (-6, -2, 2), "weak")
        assert isinstance(r, NotConsistent)
        r = decide_consistency(7, (-2, 2, -4), "strong")
        assert isinstance(r, NotConsistent)


class TestInputValidation:
    def test_repeated_traces_need_relaxed(self):
        with pytest.raises(InvalidTracesError):
            decide_consistency(13, (-6, 2, 2), "strong")
        plan = decide_consistency(13, (-6, 2, 2), "strong", relaxed=True)
        assert plan.mode == "strong"

    def test_inadmissible_trace(self):
        with pytest.raises(InvalidTracesError):
            decide_consistency(13, (-6, 2, 8), "auto", relaxed=True)

    def test_even_characteristic(self):
        with pytest.raises((InvalidTracesError, ValueError)):
            decide_consistency(8, (0, 1, 2), "auto")

    def test_wrong_arity(self):
        with pytest.raises(InvalidTracesError):
            decide_consistency(13, (-6, 2), "auto")

    def test_unknown_mode(self):
        with pytest.raises(InvalidTracesError):
            decide_consistency(13, (-6, -2, 2), "both")
        with pytest.raises(InvalidTracesError):
            enumerate_triples(13, "both")


class TestStrongSearch:
    def test_worked_plan(self):
        plan = decide_consistency(13, (-6, 2, 2), "strong", relaxed=True)
        assert plan.mode == "strong"
        assert plan.traces == (-6, 2, 2)
        assert plan.lambda1 == f13(2)
        assert plan.lambda2 == f13(8)
        assert [int(c.j.coeffs[0]) for c in plan.classes] == [12, 11, 0]

    def test_worked_certificate_polys(self):
        cert = construct_from_traces(13, (-6, 2, 2), "strong", relaxed=True)
        assert [f.coeffs for f in cert.cover.polys] == [
            (0, 2, 10, 1), (0, 3, 8, 2), (0, 6, 6, 2)]
        assert [trace(m) for m in cert.cover.models] == [-6, 2, 2]
        cert.validate()

    def test_q7_strong_is_empty_even_relaxed(self):
        # only two orbits (j = 6 and j = 0) exist over F_7, so three
        # pairwise non-isomorphic full-2-torsion curves cannot be chosen
        for relaxed in (False, True):
            for label, combo in enumerate_triples(7, "strong", relaxed):
                r = construct_from_traces(7, combo, label, relaxed=relaxed)
                assert isinstance(r, NotConsistent)

    def test_q13_strict_strong_census(self):
        got = set()
        for label, combo in enumerate_triples(13, "strong"):
            r = construct_from_traces(13, combo, label)
            if not isinstance(r, NotConsistent):
                got.add(r.traces)
        assert got == {(-6, -2, 2), (-2, 2, 6)}


class TestWeakSearch:
    def test_fixture_plan(self):
        plan = decide_consistency(7, (-2, 2, -4), "weak")
        assert plan.mode == "weak"
        assert plan.traces == (-2, 2, -4)
        assert plan.p3 == f7(3)
        assert plan.p4 == f7(5)
        assert [int(c.j.coeffs[0]) for c in plan.classes] == [4, 5, 2]

    def test_fixture_certificate(self):
        cert = construct_from_traces(7, (-2, 2, -4), "weak")
        assert cert.mode == "weak"
        assert [f.coeffs for f in cert.cover.polys] == [
            (4, 1, 4, 1), (2, 1, 2, 1), (3, 4, 6, 4, 3)]
        assert [trace(m) for m in cert.cover.models] == [-2, 2, -4]
        assert cert.cover.m3.f.degree == 4
        cert.validate()

    def test_q7_weak_strict_census(self):
        got = set()
        for label, combo in enumerate_triples(7, "weak"):
            r = construct_from_traces(7, combo, label)
            if not isinstance(r, NotConsistent):
                got.add(r.traces)
        assert got == {(-2, 2, -4), (-2, 2, 0), (-2, 2, 4)}

    def test_q9_weak_strict_census(self):
        got = set()
        for label, combo in enumerate_triples(9, "weak"):
            r = construct_from_traces(9, combo, label)
            if not isinstance(r, NotConsistent):
                got.add(r.traces)
        assert got == {(-4, 0, -2), (-4, 0, 2), (-4, 4, -2), (-4, 4, 2),
                       (0, 4, -2), (0, 4, 2)}

    def test_quartic_slot_group_order(self):
        # the third component of every weak cover has group order 0 mod 4
        cert = construct_from_traces(7, (-2, 2, 0), "weak")
        assert (7 + 1 + trace(cert.cover.m3)) % 4 == 0


class TestCoverGates:
    def test_worked_cover_invariants(self):
        cover = build_cover(*worked_models())
        assert hurwitz_ram_count(cover) == 5
        assert degree8_check(cover)

    def test_repeated_component_fails_degree8(self):
        m1, m2, m3 = worked_models()
        assert not degree8_check(Genus3Cover(m1, m1, m3))
        with pytest.raises(InvalidCoverError):
            build_cover(m1, m1, m3)

    def test_six_branch_points_rejected(self):
        zero, one = f13.zero, f13.one
        m1 = EllipticModel(poly_from_roots(f13, [zero, one, f13(2)]))
        m2 = EllipticModel(poly_from_roots(f13, [zero, one, f13(3)]))
        m3 = EllipticModel(poly_from_roots(f13, [zero, f13(2), f13(4)]))
        with pytest.raises(InvalidCoverError) as exc:
            build_cover(m1, m2, m3)
        assert "6" in str(exc.value)

    def test_mixed_fields_rejected(self):
        m1, m2, _ = worked_models()
        other = EllipticModel(poly_from_roots(
            f7, [f7.zero, f7.one, f7(2)]))
        with pytest.raises(InvalidCoverError):
            build_cover(m1, m2, other)

    def test_weak_cover_invariants(self):
        cert = construct_from_traces(7, (-2, 2, -4), "weak")
        assert hurwitz_ram_count(cert.cover) == 5
        assert degree8_check(cert.cover)


class TestCertificateValidation:
    def test_tampered_traces_detected(self):
        cert = construct_from_traces(13, (-6, 2, 2), "strong", relaxed=True)
        forged = ConstructionCertificate(13, "strong", (-6, 2, -2), cert.cover)
        with pytest.raises(InvalidCoverError):
            forged.validate()

    def test_wrong_mode_detected(self):
        cert = construct_from_traces(13, (-6, 2, 2), "strong", relaxed=True)
        forged = ConstructionCertificate(13, "weak", cert.traces, cert.cover)
        with pytest.raises(InvalidCoverError):
            forged.validate()

    def test_wrong_field_detected(self):
        cert = construct_from_traces(13, (-6, 2, 2), "strong", relaxed=True)
        forged = ConstructionCertificate(7, "strong", cert.traces, cert.cover)
        with pytest.raises((InvalidCoverError, InvalidTracesError)):
            forged.validate()

    def test_realize_matches_decide(self):
        plan = decide_consistency(13, (-6, 2, 2), "strong", relaxed=True)
        cert = realize_plan(plan)
        assert cert.traces == plan.traces
        cert.validate()


class TestEnumerateTriples:
    def test_strict_shapes_q13(self):
        strong = enumerate_triples(13, "strong")
        weak = enumerate_triples(13, "weak")
        assert len(strong) == 4          # C(4,3) over {-6,-2,2,6}
        assert len(weak) == 12           # C(3,2) over {-4,0,4} times 4
        assert ("strong", (-6, -2, 2)) in strong
        assert ("weak", (-4, 0, -6)) in weak
        both = enumerate_triples(13, "auto")
        assert len(both) == 16

    def test_relaxed_shapes_q13(self):
        strong = enumerate_triples(13, "strong", relaxed=True)
        weak = enumerate_triples(13, "weak", relaxed=True)
        assert len(strong) == 20         # multisets of size 3 from 4 traces
        assert len(weak) == 24           # 6 pairs times 4 third traces
        assert ("strong", (-6, 2, 2)) in strong

    def test_weak_triples_are_slot_aligned(self):
        for label, (t1, t2, t3) in enumerate_triples(13, "weak", relaxed=True):
            assert (13 + 1 + t1) % 4 == 2
            assert (13 + 1 + t2) % 4 == 2
            assert (13 + 1 + t3) % 4 == 0

    def test_even_characteristic_rejected(self):
        with pytest.raises(InvalidTracesError):
            enumerate_triples(8)


class TestArrangeTriple:
    def test_keeps_already_valid_cover(self):
        m1, m2, m3 = worked_models()
        cover = arrange_triple(m1, m2, m3)
        assert [f.coeffs for f in cover.polys] == [
            m1.f.coeffs, m2.f.coeffs, m3.f.coeffs]

    def test_isomorphic_inputs_rejected(self):
        m1, m2, m3 = worked_models()
        with pytest.raises(InvalidCoverError):
            arrange_triple(m1, quadratic_twist(m1), m3)

    def test_mixed_branch_counts_rejected(self):
        # m1, m2 split over the base (four rational branch points); the
        # weak component's branch set holds a conjugate pair (only two)
        m1, m2, _ = worked_models()
        cert = construct_from_traces(13, (-4, 0, -6), "weak")
        with pytest.raises(InvalidCoverError) as exc:
            arrange_triple(m1, m2, cert.cover.m2)
        assert "branch count" in str(exc.value)

    def test_strong_replacement_preserves_traces(self):
        m1, m2, m3 = worked_models()
        shifted = EllipticModel(_shift(m2.f, f13(5)))
        cover = arrange_triple(m1, shifted, m3)
        assert [trace(m) for m in cover.models] == [
            trace(m1), trace(m2), trace(m3)]
        assert hurwitz_ram_count(cover) == 5

    def test_weak_replacement_preserves_traces(self):
        cert = construct_from_traces(7, (-2, 2, -4), "weak")
        m1, m2, m3 = cert.cover.models
        shifted = EllipticModel(_shift(m2.f, f7(1)))
        cover = arrange_triple(m1, shifted, m3)
        assert [trace(m) for m in cover.models] == [-2, 2, -4]
        assert [f.coeffs for f in cover.polys] == [
            (4, 1, 4, 1), (2, 1, 2, 1), (3, 4, 6, 4, 3)]


def _shift(f: Poly, c):
    """f(x + c): same curve class, translated branch points."""
    field = f.field
    acc = Poly(field, [0])
    xp = Poly(field, [c, 1])
    power = Poly(field, [1])
    for a in f.coeffs:
        acc = acc + power * a
        power = power * xp
    return acc
