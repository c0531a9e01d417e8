import warnings

import pytest

from wittkit.errors import BudgetExceeded
from wittkit.matrix import Matrix
from wittkit.oracle import (
    PresentationGroup,
    certify_by_conjugation,
    enumerate_classes,
    enumerate_relations,
    factor_exponents,
    format_report,
    invariant_check,
    invariant_factors,
    quotient,
    run_oracle,
)
from wittkit.rings import PrimeField
from wittkit.snf import AbelianGroup


@pytest.fixture(scope="module")
def gf2():
    enum = enumerate_classes(2, 2)
    return enum, quotient(enumerate_relations(enum))


def test_class_counts():
    e21 = enumerate_classes(2, 1)
    assert len(e21.generators) == 2
    assert [g.rep for g in e21.generators] == [Matrix.of(PrimeField(2), [[0]]), Matrix.of(PrimeField(2), [[1]])]
    e22 = enumerate_classes(2, 2)
    assert (e22.count(1), e22.count(2), len(e22.generators)) == (2, 6, 8)
    assert len(enumerate_classes(3, 1).generators) == 3
    assert enumerate_classes(3, 2).count(2) == 12


def test_conjugation_certificate(gf2):
    assert certify_by_conjugation(gf2[0])
    assert certify_by_conjugation(enumerate_classes(3, 2))


def test_representatives_carry_their_labels(gf2):
    for g in gf2[0].generators:
        assert invariant_factors(g.rep) == g.label


def test_relations_are_rank_balanced(gf2):
    enum, pres = gf2
    dims = [g.dim for g in enum.generators]
    assert pres.relations
    for row in pres.relations:
        assert sum(c * d for c, d in zip(row, dims)) == 0


def test_nilpotent_relation_present(gf2):
    enum, pres = gf2
    idx = enum.index()
    F = enum.field
    nil = idx[(2, invariant_factors(Matrix.of(F, [[0, 1], [0, 0]])))]
    zero = idx[(1, invariant_factors(Matrix.of(F, [[0]])))]
    row = [0] * len(enum.generators)
    row[nil], row[zero] = 1, -2
    assert tuple(row) in pres.relations


def test_quotient_examples(gf2):
    enum, pres = gf2
    assert quotient(PresentationGroup(4, ())).quotient == AbelianGroup(4, ())
    assert str(pres.quotient) == "Z^3"
    doubled = PresentationGroup(pres.ngens, pres.relations + pres.relations[:1])
    assert quotient(doubled).quotient == pres.quotient


def test_invariant_check_passes(gf2):
    enum, pres = gf2
    rep = invariant_check(pres, enum)
    assert rep.passed and rep.kills_relations and rep.injective
    assert rep.invariant_rank == 3


def test_invariant_check_detects_a_wrong_relation(gf2):
    enum, pres = gf2
    bad = [0] * pres.ngens
    bad[0], bad[1] = 1, -1   # [0] = [1] in dimension 1 is false
    rep = invariant_check(quotient(PresentationGroup(pres.ngens, pres.relations + (tuple(bad),))), enum)
    assert not rep.passed and not rep.kills_relations
    assert "maps to" in rep.witness


def test_missing_relations_break_injectivity(gf2):
    enum, pres = gf2
    rep = invariant_check(quotient(PresentationGroup(pres.ngens, pres.relations[1:])), enum)
    assert rep.kills_relations and not rep.injective


@pytest.mark.parametrize("q, d", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_oracle_passes_at_budget(q, d):
    assert run_oracle(q, d).passed


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_classes(5, 1)
    with pytest.raises(BudgetExceeded):
        enumerate_classes(2, 3)
    with pytest.raises(BudgetExceeded):
        enumerate_classes(3, 3, allow_large=True)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        e = enumerate_classes(2, 3, allow_large=True)
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)
    assert e.count(3) == 14


def test_factor_exponents():
    F = PrimeField(2)
    f = (1, 1, 1, 1, 1)  # irreducible of degree 4 over GF(2)
    with pytest.raises(ArithmeticError):
        factor_exponents(f, F, 1)
    assert factor_exponents((1, 0, 1), F, 2) == {(1, 1): 2}
    assert factor_exponents((1, 0, 1, 1, 0, 1), F, 2) == {(1, 1): 3, (1, 1, 1): 1}


def test_report_is_deterministic():
    a = format_report(run_oracle(2, 2))
    assert a == format_report(run_oracle(2, 2))
    assert a.splitlines()[1] == "generators: 8 (2 of dim 1, 6 of dim 2)"
    assert a.splitlines()[-1] == "PASS"
