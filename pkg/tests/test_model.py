from fractions import Fraction

import pytest

from quatcohom import load_corpus, validate_hypercomplex, validate_lie_algebra
from quatcohom.errors import (
    IntegrabilityFailure,
    PoleAtBinding,
    QuaternionicRelationFailure,
    UnboundParameter,
    ValidationFailure,
)
from quatcohom.model import build_coframe, instantiate, require_valid
from quatcohom.quaternionic import QuaternionicComplex

from support import jacobi_broken_spec, nonintegrable_spec, relation_broken_spec


def test_corpus_validates():
    for name, bindings in (("example1", None), ("torus8", None),
                           ("example2", {"t": Fraction(2, 5)}),
                           ("example3", None)):
        report = validate_hypercomplex(load_corpus(name), bindings)
        assert report.ok, report.summary()
        assert report.integrability == {"I": True, "J": True, "K": True}


def test_nilpotency_steps():
    assert validate_lie_algebra(load_corpus("torus8")).nilpotency_step == 1
    assert validate_lie_algebra(load_corpus("example1")).nilpotency_step == 2
    assert validate_lie_algebra(load_corpus("example3")).nilpotency_step == 2


def test_jacobi_failure_detected():
    report = validate_lie_algebra(jacobi_broken_spec())
    assert report.jacobi_ok is False
    assert report.messages


def test_quaternion_relation_failure_detected():
    report = validate_hypercomplex(relation_broken_spec())
    assert report.quaternionic_relations_ok is False
    with pytest.raises(QuaternionicRelationFailure):
        require_valid(relation_broken_spec())


def test_integrability_failure_names_the_structure():
    report = validate_hypercomplex(nonintegrable_spec())
    assert report.integrability["I"] is True
    assert report.integrability["J"] is False
    with pytest.raises(IntegrabilityFailure):
        require_valid(nonintegrable_spec())
    with pytest.raises(ValidationFailure):
        QuaternionicComplex.build(nonintegrable_spec())


def test_unbound_parameter_and_pole():
    spec = load_corpus("example2")
    with pytest.raises(UnboundParameter):
        instantiate(spec)
    for bad in (Fraction(0), Fraction(1)):
        with pytest.raises(PoleAtBinding):
            instantiate(spec, {"t": bad})


def test_coframe_shape():
    spec = load_corpus("example1")
    coframe = build_coframe(spec)
    # half of the real dimension many rows, each over the 8 real covectors
    assert len(coframe.rows) == 4
    assert all(len(r) == 8 for r in coframe.rows)


def test_k_table_checked_when_given():
    spec = load_corpus("example1")
    inst = instantiate(spec)
    assert inst.mat_k == inst.mat_i @ inst.mat_j
