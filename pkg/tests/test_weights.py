import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from posetcodes.algebra import make_field
from posetcodes.errors import DomainError, ValidationError
from posetcodes.weights import (
    WeightTable, floor_weight, load_weight, make_standard_weight, random_weight,
    realizable_weights, validate_weight, w_interval, weight_stats,
)


def W(*values):
    return WeightTable(make_field(len(values)), values)


def test_standard_tables():
    F5 = make_field(5)
    assert make_standard_weight(F5, "hamming").values == (0, 1, 1, 1, 1)
    assert make_standard_weight(F5, "lee").values == (0, 1, 2, 2, 1)
    lee7 = make_standard_weight(make_field(7), "lee")
    assert lee7.max_weight == 3 and lee7(1) == 1


def test_lee_needs_prime_field():
    with pytest.raises(DomainError):
        make_standard_weight(make_field(9), "lee")


def test_validation_witnesses():
    assert validate_weight(W(0, 1, 2, 2, 1)) == []
    v = validate_weight(W(0, 1, 2, 3, 1))[0]
    assert v.axiom == "symmetry" and v.witness == (2, 3)
    first = validate_weight(W(0, 1, 3, 3, 1))[0]
    assert first.axiom == "triangle" and first.witness == (1, 1)
    assert validate_weight(W(1, 1, 1))[0].axiom == "positivity"
    assert validate_weight(W(0, 0, 0))[0].axiom == "positivity"


def test_require_valid_names_axiom():
    with pytest.raises(ValidationError, match="triangle"):
        W(0, 1, 3, 3, 1).require_valid()


def test_wrong_length():
    with pytest.raises(ValidationError):
        WeightTable(make_field(5), (0, 1, 1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_hamming_stats(q):
    st_ = weight_stats(make_standard_weight(make_field(q), "hamming"))
    assert (st_.max_weight, st_.min_nonzero_weight, st_.archimedean_threshold) == (1, 1, 1)
    assert st_.non_archimedean


def test_lee_stats():
    s5 = weight_stats(make_standard_weight(make_field(5), "lee"))
    assert (s5.max_weight, s5.min_nonzero_weight, s5.archimedean_threshold) == (2, 1, 1)
    assert not s5.non_archimedean
    s7 = weight_stats(make_standard_weight(make_field(7), "lee"))
    assert (s7.max_weight, s7.min_nonzero_weight, s7.archimedean_threshold) == (3, 1, 1)


def test_threshold_by_pair_scan():
    # F_4 = {0, 1, x, x+1}; w(x+1) = w(1 - x) = 3 exceeds max(w(1), w(x)) = 2
    st_ = weight_stats(W(0, 1, 2, 3))
    assert st_.archimedean_threshold == 2 and not st_.non_archimedean


def test_w_interval():
    lee5 = make_standard_weight(make_field(5), "lee")
    assert w_interval(lee5, 1) == ((1,), 2)
    assert w_interval(lee5, 0).count == 0
    assert w_interval(W(0, 2, 3, 3, 2), 1) == ((), 0)


def test_floor_weight():
    F3 = make_field(3)
    assert floor_weight(make_standard_weight(F3, "hamming"), 4, 3) == 2
    assert floor_weight(make_standard_weight(make_field(5), "lee"), 3, 3) == 2
    assert floor_weight(W(0, 2, 3, 3, 2), 2, 1) == 0
    with pytest.raises(DomainError):
        floor_weight(W(0, 1, 1), 2, 0)


def test_realizable_weights_lee5():
    lee5 = make_standard_weight(make_field(5), "lee")
    assert realizable_weights(lee5, 2) == (0, 1, 2, 3, 4)


def test_load_weight(tmp_path):
    F5 = make_field(5)
    path = tmp_path / "w.json"
    path.write_text(json.dumps([0, 2, 3, 3, 2]))
    assert load_weight(F5, str(path)).values == (0, 2, 3, 3, 2)
    assert load_weight(F5, "lee").name == "lee"
    assert load_weight(F5, [0, 1, 1, 1, 1]).values == (0, 1, 1, 1, 1)
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ValidationError):
        load_weight(F5, str(bad))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(0, 2**32 - 1))
def test_random_weights_are_valid_and_bounded(q, seed):
    w = random_weight(make_field(q), np.random.default_rng(seed), max_value=5)
    assert validate_weight(w) == []
    s = weight_stats(w)
    assert 0 < s.min_nonzero_weight <= s.archimedean_threshold <= s.max_weight <= 5
    assert s.non_archimedean == (s.archimedean_threshold == s.max_weight and all(
        w(int(w.spec.sub_table[a, b])) <= max(w(a), w(b)) for a in range(q) for b in range(q)))
