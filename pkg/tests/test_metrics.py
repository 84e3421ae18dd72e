from fractions import Fraction

import pytest

from quatcohom import (
    classify_metric,
    gram_matrix,
    hkt_candidate_space,
    hkt_existence,
    sg_existence,
    standard_omega,
)
from quatcohom.errors import NotBidegree20, NotSL2
from quatcohom.exterior import Form
from quatcohom.linalg import Mat, realify_vector


def test_standard_form_gram_is_half_identity(corpus_sessions):
    for session in corpus_sessions:
        cx = session.cx
        gram = gram_matrix(cx, standard_omega(cx))
        assert gram == Mat.identity(cx.half).scale(Fraction(1, 2))


def test_classification_example1(ex1):
    cand = classify_metric(ex1.cx, standard_omega(ex1.cx), ex1.mc)
    assert cand.is_real and cand.positive and cand.hermitian
    assert cand.gauduchon
    assert not cand.hkt
    assert not cand.strongly_gauduchon
    assert not cand.hyperkahler


def test_classification_torus(torus):
    cand = classify_metric(torus.cx, standard_omega(torus.cx), torus.mc)
    assert cand.hyperkahler and cand.hkt
    assert cand.strongly_gauduchon and cand.gauduchon


def test_classification_special_family_member(ex2_half):
    cand = classify_metric(ex2_half.cx, standard_omega(ex2_half.cx),
                           ex2_half.mc)
    assert cand.hkt and cand.strongly_gauduchon
    assert not cand.hyperkahler


def test_flag_chain_is_monotone(corpus_sessions):
    for session in corpus_sessions:
        cx = session.cx
        omega = standard_omega(cx)
        for form in (omega, omega.scale(2), Form.monomial((0, 1)),
                     omega + Form.monomial((0, 2))):
            cand = classify_metric(cx, form, session.mc)
            assert not cand.hyperkahler or cand.hkt
            assert not cand.hkt or cand.strongly_gauduchon
            assert not cand.strongly_gauduchon or cand.gauduchon
            assert not cand.gauduchon or cand.hermitian


def test_classify_rejects_wrong_bidegree(ex1):
    with pytest.raises(NotBidegree20):
        classify_metric(ex1.cx, Form.generator(0), ex1.mc)


def test_existence_answers(ex1, torus, ex2_third, ex2_half):
    for session, expected in ((ex1, False), (torus, True),
                              (ex2_third, False), (ex2_half, True)):
        hkt = hkt_existence(session.cx, session.mc)
        sg = sg_existence(session.cx, session.mc)
        assert hkt.answer is expected
        assert sg.answer is expected
        if expected:
            assert hkt.method == "explicit-certificate"
            cert = hkt.certificate
            assert cert is not None and cert.hkt
            assert cert.omega == standard_omega(session.cx)
            assert sg.certificate is not None
            assert sg.certificate.strongly_gauduchon
        else:
            assert hkt.method == "delta2-criterion"
            assert hkt.certificate is None
            assert sg.certificate is None


def test_existence_agrees_with_parity(corpus_sessions):
    for session in corpus_sessions:
        if session.cx.n != 2:
            continue
        verdict = hkt_existence(session.cx, session.mc)
        assert verdict.answer is (session.mc.h_del(1) % 2 == 0)


def test_existence_deterministic(ex1):
    a = hkt_existence(ex1.cx, ex1.mc)
    b = hkt_existence(ex1.cx, ex1.mc)
    assert (a.answer, a.method) == (b.answer, b.method)


def test_not_sl2_guard(ex3):
    with pytest.raises(NotSL2):
        hkt_existence(ex3.cx, ex3.mc)
    with pytest.raises(NotSL2):
        sg_existence(ex3.cx, ex3.mc)


def test_candidate_space_contains_standard_form_when_hkt(torus):
    cx = torus.cx
    space = hkt_candidate_space(cx)
    coords = cx.coords(standard_omega(cx), 2)
    assert space.contains(realify_vector(coords))
