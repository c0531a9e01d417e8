import random

import pytest

from wittkit.complexes import (
    FreeComplexEndo,
    add_contractible,
    complex_sum,
    cone_of_identity,
    euler_class,
    shift,
    validate,
)
from wittkit.endo import EndoClass, class_neg, class_of, dsum
from wittkit.errors import DomainError, InvalidComplex, RingMismatch
from wittkit.matrix import Matrix
from wittkit.rings import ZZ, PrimeField, parse_ring
from wittkit.sampling import conjugate_levels, random_complex, random_matrix


def M(rows, ring=ZZ):
    return Matrix.of(ring, rows)


def test_single_level():
    a = M([[1, 2], [3, 4]])
    c = FreeComplexEndo.single(a, 0)
    assert validate(c) is None
    assert euler_class(c) == class_of(a)
    assert euler_class(FreeComplexEndo.single(a, 3)) == class_neg(class_of(a))


def test_chain_condition():
    a, b = M([[2]]), M([[3]])
    good = FreeComplexEndo(ZZ, 0, (1, 1), (M([[1]]),), (a, a))
    assert validate(good) is None
    bad = FreeComplexEndo(ZZ, 0, (1, 1), (M([[1]]),), (a, b))
    v = validate(bad)
    assert v is not None and v.degree == 0
    with pytest.raises(InvalidComplex):
        euler_class(bad)


def test_d_squared_violation():
    z = M([[0]])
    c = FreeComplexEndo(ZZ, 5, (1, 1, 1), (M([[1]]), M([[1]])), (z, z, z))
    v = validate(c)
    assert v.degree == 5
    assert "d_{k+1} d_k" in v.reason


def test_shape_errors():
    with pytest.raises(InvalidComplex):
        FreeComplexEndo(ZZ, 0, (1, 2), (M([[1]]),), (M([[0]]), Matrix.zeros(ZZ, 2)))
    with pytest.raises(InvalidComplex):
        FreeComplexEndo(ZZ, 0, (1,), (), ())
    with pytest.raises(RingMismatch):
        FreeComplexEndo(ZZ, 0, (1,), (), (M([[1]], PrimeField(3)),))


def test_cone_is_zero_and_shift_negates():
    rng = random.Random(1)
    for _ in range(50):
        a = random_matrix(ZZ, rng, rng.randint(1, 3), height=4)
        k = rng.randint(-3, 3)
        assert euler_class(cone_of_identity(a, k)) == EndoClass.zero(ZZ)
        c = random_complex(ZZ, rng)
        assert euler_class(shift(c, 1)) == class_neg(euler_class(c))
        assert euler_class(shift(c, 2)) == euler_class(c)


def test_add_contractible_invariance():
    rng = random.Random(2)
    for sel in ("Z", "GF(7)", "Z[t]"):
        R = parse_ring(sel)
        for _ in range(40):
            c = random_complex(R, rng)
            e1 = random_matrix(R, rng, rng.randint(1, 2), height=3)
            e2 = random_matrix(R, rng, rng.randint(1, 2), height=3)
            k1, k2 = rng.randint(-3, 3), rng.randint(-3, 3)
            base = euler_class(c)
            once = add_contractible(c, e1, k1)
            assert euler_class(once) == base
            ab = add_contractible(once, e2, k2)
            ba = add_contractible(add_contractible(c, e2, k2), e1, k1)
            assert euler_class(ab) == euler_class(ba) == base


def test_additivity_and_conjugation():
    rng = random.Random(3)
    for _ in range(60):
        c1, c2 = random_complex(ZZ, rng), random_complex(ZZ, rng)
        assert euler_class(complex_sum(c1, c2)) == dsum(euler_class(c1), euler_class(c2))
        assert euler_class(conjugate_levels(c1, rng)) == euler_class(c1)


def test_empty_and_padding():
    e = FreeComplexEndo.empty(ZZ)
    assert euler_class(e) == EndoClass.zero(ZZ)
    assert euler_class(add_contractible(e, M([[4]]), 0)) == EndoClass.zero(ZZ)
    c = FreeComplexEndo.single(M([[4]]), 1)
    wide = c.restrict(-1, 2)
    assert wide.ranks == (0, 0, 1, 0)
    assert euler_class(wide) == euler_class(c)
    with pytest.raises(DomainError):
        c.restrict(2, 3)
