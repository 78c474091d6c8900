from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_cuts.arith import DomainError, FactoredInteger, factor, parse_n
from cyclic_cuts.bounds import (
    alpha,
    beta,
    bound,
    omega_set,
    squarefree_tiebreak,
    theta,
    two_phi_deficient,
)
from cyclic_cuts.cutsets import CutSetDescriptor, all_descriptors

from _oracles import x_elements, z_elements
from _props import check_instance


@pytest.mark.parametrize("n, a, s, size", [
    (4290, 5, 1, 960 + 250),
    (210, 4, 1, 70),
    (30, 3, 1, 12),
    (12, 2, 1, 6),
])
def test_beta_values(n, a, s, size):
    assert beta(factor(n), a, s).value == size


@pytest.mark.parametrize("n, a, b, s, t, size", [
    (4290, 4, 5, 1, 1, 960 + 198),
    (210, 3, 4, 1, 1, 72),
    (30, 2, 3, 1, 1, 15),
])
def test_theta_values(n, a, b, s, t, size):
    assert theta(factor(n), a, b, s, t).value == size


def test_decomposition_parts_for_4290():
    f = factor(4290)
    assert beta(f, 5, 1).inner == 250 and beta(f, 5, 1).phi_n == 960
    assert theta(f, 4, 5, 1, 1).inner == 198


def test_bound_dispatch_and_validation():
    f = factor(360)
    assert bound(f, CutSetDescriptor.Z(1, 2)) == beta(f, 1, 2)
    with pytest.raises(DomainError):
        beta(f, 1, 4)
    with pytest.raises(DomainError):
        theta(f, 2, 2, 1, 1)
    with pytest.raises(DomainError):
        beta(f, 4, 1)


@pytest.mark.parametrize("n, exclude, expected", [
    (4290, {5}, True),
    (210, {4}, True),
    (5 * 7 * 11 * 13, {4}, False),
    (3 * 5 * 7 * 11, {4}, True),
])
def test_two_phi_deficient(n, exclude, expected):
    assert two_phi_deficient(factor(n), exclude) is expected


def test_two_phi_deficient_rejects_full_exclusion():
    with pytest.raises(DomainError):
        two_phi_deficient(factor(30), {1, 2, 3})


def test_omega_set():
    for n5 in (3, 4, 5):
        for n1 in (1, 2, 3):
            f = FactoredInteger((2, 3, 5, 7, 11, 13), (n1, 1, 1, 1, n5, 2))
            assert omega_set(f) == {5}
    # r in {4, 5} always gives the empty set
    for exps in [(3, 3, 3, 2), (4, 1, 5, 2), (3, 3, 3, 3, 2)]:
        primes = (2, 3, 5, 7, 11)[: len(exps)]
        assert omega_set(FactoredInteger(primes, exps)) == set()
    assert omega_set(FactoredInteger((2, 3, 5, 7, 11, 13), (2, 2, 1, 2, 2, 2))) == set()
    with pytest.raises(DomainError):
        omega_set(factor(210))


def test_alpha():
    for exps in [(1, 1, 1, 1), (2, 3, 2, 1), (1, 1, 3, 1)]:
        assert alpha(FactoredInteger((2, 3, 5, 7), exps), 4, 3) == 0
    assert alpha(factor(2310), 5, 4) == Fraction(-26, 7)
    with pytest.raises(DomainError):
        alpha(factor(36), 1, 2)
    with pytest.raises(DomainError):
        alpha(factor(30), 2, 2)


def test_squarefree_tiebreak():
    assert squarefree_tiebreak(factor(4290))
    assert not squarefree_tiebreak(factor(210))
    # (2 + 15/12) * phi(2*3*5*7*11) = 13/4 * 480 = 1560 > 2310? no: 1560 <= 2310
    assert squarefree_tiebreak(factor(2 * 3 * 5 * 7 * 11 * 13 * 17))
    with pytest.raises(DomainError):
        squarefree_tiebreak(factor(1050))


def test_closed_forms_against_residue_counts():
    """Every descriptor for n < 400, counted straight from the definitions."""
    for n in range(6, 400):
        f = factor(n)
        if f.r < 2:
            continue
        P = list(f.primes)
        for d in all_descriptors(f):
            if d.kind == "Z":
                direct = len(z_elements(n, P, d.a, d.s))
            else:
                direct = len(x_elements(n, P, d.a, d.b, d.s, d.t))
            assert bound(f, d).value == direct, (n, str(d))


small_factored = st.lists(
    st.tuples(st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]), st.integers(1, 5)),
    min_size=2, max_size=7, unique_by=lambda t: t[0],
).map(FactoredInteger.from_pairs)


@settings(max_examples=150, deadline=None)
@given(small_factored)
def test_property_battery(f):
    bad, _ = check_instance(f)
    assert not bad, bad[:3]


@settings(max_examples=150, deadline=None)
@given(small_factored, st.data())
def test_theta_symmetric(f, data):
    if f.r < 3:
        return
    a = data.draw(st.integers(1, f.r))
    b = data.draw(st.integers(1, f.r).filter(lambda x: x != a))
    s = data.draw(st.integers(1, f.exponent(a)))
    t = data.draw(st.integers(1, f.exponent(b)))
    assert theta(f, a, b, s, t).value == theta(f, b, a, t, s).value


@settings(max_examples=100, deadline=None)
@given(small_factored)
def test_sizes_are_proper(f):
    for d in all_descriptors(f):
        v = bound(f, d)
        assert v.phi_n <= v.value < f.value


def test_huge_factored_input_stays_exact():
    f = parse_n("2^40*3^7*5^3*7*101^9*199^2")
    vals = [bound(f, d).value for d in all_descriptors(f)]
    assert all(isinstance(v, int) and v < f.value for v in vals)


def test_battery_reaches_alpha_zero():
    """alpha = 0 is rare under random draws; 2^i*3^j*5^k*7 with k >= 2 hits it at a = 4, b = 3."""
    for exps in [(2, 2, 3, 1), (1, 3, 2, 1), (3, 1, 4, 1)]:
        bad, hit = check_instance(FactoredInteger((2, 3, 5, 7), exps))
        assert not bad
        assert hit["alpha=0"] > 0
