import pytest

from cyclic_cuts.arith import DomainError, LimitError, factor
from cyclic_cuts.bounds import bound
from cyclic_cuts.cutsets import (
    CutSetDescriptor,
    DivisorSet,
    all_descriptors,
    build,
    build_X,
    build_Z,
    element_order,
    expand,
    maximal_classes_inside,
)

from _oracles import x_elements, z_elements

Z, X = CutSetDescriptor.Z, CutSetDescriptor.X


def test_descriptor_parse_and_print():
    assert CutSetDescriptor.parse("Z:3:2") == Z(3, 2)
    assert CutSetDescriptor.parse("x:5:4:1:1") == X(4, 5, 1, 1)
    assert str(X(5, 4, 2, 1)) == "X:4:5:1:2"
    for bad in ["Z:1", "X:1:2:1", "Q:1:1", "Z:a:1", "X:2:2:1:1"]:
        with pytest.raises(DomainError):
            CutSetDescriptor.parse(bad)


def test_descriptor_validate():
    f = factor(360)
    Z(1, 3).validate(f)
    for d in [Z(1, 4), Z(4, 1), Z(1, 0), X(1, 2, 1, 3)]:
        with pytest.raises(DomainError):
            d.validate(f)
    with pytest.raises(DomainError):
        X(1, 2, 1, 1).validate(factor(12))  # X needs r >= 3


def test_descriptor_order_is_total():
    ds = all_descriptors(factor(2 * 9 * 25 * 7))
    assert sorted(ds) == sorted(ds, key=lambda d: d.sort_key)
    assert len(set(ds)) == len(ds)


@pytest.mark.parametrize("x, n, order", [(0, 12, 1), (1, 12, 12), (6, 12, 2), (4, 12, 3)])
def test_element_order(x, n, order):
    f = factor(n)
    assert f.divisor_value(element_order(x, f)) == order


def test_element_order_rejects_non_residue():
    with pytest.raises(DomainError):
        element_order(12, factor(12))


def test_build_examples():
    assert build_Z(factor(30), 3, 1).values() == [1, 2, 3, 30]
    assert build_Z(factor(30), 3, 1).cardinality == 12
    assert build_Z(factor(12), 2, 1).values() == [1, 2, 12]
    assert build_Z(factor(4290), 5, 1).cardinality == 1210
    assert build_X(factor(4290), 4, 5, 1, 1).cardinality == 1158
    assert build_X(factor(210), 3, 4, 1, 1).cardinality == 72
    assert build_X(factor(30), 2, 3, 1, 1).cardinality == 15


def test_expand():
    f = factor(12)
    assert expand(build(f, Z(2, 1))) == {0, 1, 5, 6, 7, 11}
    assert expand(DivisorSet(f, frozenset())) == set()
    assert expand(DivisorSet(f, frozenset(f.divisor_of(d) for d in (1, 2, 3, 4, 6, 12)))) == set(range(12))
    with pytest.raises(LimitError):
        expand(build(factor(4290), Z(5, 1)), limit=1000)


def test_builders_match_definitions():
    for n in range(6, 600):
        f = factor(n)
        P = list(f.primes)
        for d in all_descriptors(f):
            direct = (z_elements(n, P, d.a, d.s) if d.kind == "Z"
                      else x_elements(n, P, d.a, d.b, d.s, d.t))
            assert expand(build(f, d)) == direct, (n, str(d))


def test_cardinality_is_closed_form():
    for n in range(6, 1500):
        f = factor(n)
        for d in all_descriptors(f):
            assert build(f, d).cardinality == bound(f, d).value


def test_maximal_classes_inside():
    f = factor(4290)
    assert maximal_classes_inside(build(f, Z(5, 1))) == []
    assert maximal_classes_inside(build(f, X(4, 5, 1, 1))) == [4, 5]
    # Z(a, s) picks up E_{n/p_a} once s >= 2, and nothing else at that level
    f = factor(2 * 3 * 25 * 7)
    assert maximal_classes_inside(build(f, Z(3, 1))) == []
    assert maximal_classes_inside(build(f, Z(3, 2))) == [3]


def test_all_descriptors_counts():
    f = factor(2**2 * 3**2 * 5**2 * 7**2)
    ds = all_descriptors(f)
    assert sum(d.kind == "Z" for d in ds) == 8
    assert sum(d.kind == "X" for d in ds) == 6 * 4
    assert all(d.kind == "Z" for d in all_descriptors(factor(36)))
    assert all_descriptors(factor(8)) == []
