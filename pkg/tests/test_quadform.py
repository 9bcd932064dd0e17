import pytest
from hypothesis import given, settings, strategies as st

from k3sandwich.errors import InvalidDiscriminant, InvalidN
from k3sandwich.quadform import (
    SERIES_FORMS,
    BinaryForm,
    class_group_criterion,
    criterion,
    factorize,
    lemma_report,
    primitive_representations,
    reduced_forms,
    primes_one_mod_four,
)


def test_representations():
    assert primitive_representations(SERIES_FORMS[1], 5) == [(-2, -1), (-2, 1), (-1, -2), (-1, 2),
                                                            (1, -2), (1, 2), (2, -1), (2, 1)]
    assert (1, 1) in primitive_representations(SERIES_FORMS[2], 4)
    assert primitive_representations(SERIES_FORMS[1], 3) == []
    # 4 = 2^2 + 0^2 is not primitive
    assert primitive_representations(SERIES_FORMS[1], 4) == []


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    with pytest.raises(InvalidN):
        factorize(0)


def test_criteria_small():
    assert [N for N in range(1, 30) if criterion(1, N)] == [1, 2, 5, 10, 13, 17, 25, 26, 29]
    assert criterion(2, 4) and criterion(2, 7) and not criterion(2, 3)
    assert criterion(3, 8) and criterion(3, 3) and not criterion(3, 4)


def test_prime_only_condition_differs_on_two():
    assert criterion(1, 2) and not primes_one_mod_four(2)
    assert criterion(1, 5) and primes_one_mod_four(5)


def test_class_numbers():
    assert [str(f) for f in reduced_forms(-4)] == ["1x^2 + 0xy + 1y^2"]
    assert [(f.a, f.b, f.c) for f in reduced_forms(-7)] == [(1, 1, 2)]
    assert len(reduced_forms(-15)) == 2
    assert len(reduced_forms(-23)) == 3
    with pytest.raises(InvalidDiscriminant):
        reduced_forms(-5)


def test_invalid_form():
    with pytest.raises(InvalidDiscriminant):
        BinaryForm(1, 2, 1)


def test_series3_counterexample():
    # 2*4^2 + 4*1 + 2*1^2 = 38 although 19 = 4 mod 15
    assert primitive_representations(SERIES_FORMS[3], 38)
    assert not criterion(3, 38)
    assert class_group_criterion(38)


def test_sweeps_small():
    for s in (1, 2):
        assert lemma_report(s, 600)["agree"]
    assert 38 in lemma_report(3, 100)["counterexamples"]


def test_class_group_criterion_sweep():
    Q = SERIES_FORMS[3]
    assert all(class_group_criterion(N) == bool(primitive_representations(Q, N)) for N in range(1, 1500))


@given(st.sampled_from([1, 2, 3]), st.integers(-40, 40), st.integers(-40, 40))
@settings(max_examples=150)
def test_values_are_represented(series, x, y):
    Q = SERIES_FORMS[series]
    n = Q(x, y)
    if n == 0:
        return
    reps = primitive_representations(Q, n)
    from math import gcd
    assert ((x, y) in reps) == (gcd(x, y) == 1)
    assert all(Q(*r) == n for r in reps)
