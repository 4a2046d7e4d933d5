import itertools

import numpy as np
import pytest

from posetcodes import codes as cd
from posetcodes.algebra import make_field, vector_array
from posetcodes.errors import DomainError, ValidationError
from posetcodes.metric import MetricSpace
from posetcodes.oracle import brute_a_star
from posetcodes.poset import antichain
from posetcodes.weights import WeightTable, make_standard_weight

F2, F3, F5, F7 = (make_field(q) for q in (2, 3, 5, 7))
HAM2, HAM3 = make_standard_weight(F2, "hamming"), make_standard_weight(F3, "hamming")
LEE5, LEE7 = make_standard_weight(F5, "lee"), make_standard_weight(F7, "lee")


def code(w, n, words):
    return cd.Code.from_words(MetricSpace.chain(w, n), words)


def f3_mds():
    return code(HAM3, 3, [((a + b) % 3, a, b) for a in range(3) for b in range(3)])


def test_min_distance_examples():
    assert cd.min_distances(code(LEE5, 2, [(0, 0), (0, 1)])) == (2, 1, 3)
    assert cd.min_distances(code(LEE5, 2, [(0, 0), (0, 2)])).d_weighted == 4
    md = cd.min_distances(f3_mds())
    assert md.d_weighted == md.d_poset == 2


def test_min_distance_needs_two_words():
    with pytest.raises(DomainError):
        cd.min_distances(code(LEE5, 2, [(0, 0)]))


def test_code_needs_usual_chain():
    with pytest.raises(ValidationError):
        cd.Code.from_words(MetricSpace(F2, 2, antichain(2), HAM2), [(0, 0)])


def test_coordinatewise_minimum_is_not_enough():
    """Minimising over every pair that differs at coordinate d(C), not only the
    pairs at poset distance d(C), can undershoot d_w(C)."""
    C = code(LEE5, 2, [(0, 0), (1, 1), (3, 1)])
    md = cd.min_distances(C)
    assert md == (1, 2, 2)
    # (0,0) and (1,1) differ at coordinate 1 by weight 1, but their distance is w(1) + M_w
    assert cd.coordinate_min_weight(C, 1) == 1
    assert cd.coordinate_min_weight(C, 1) + (md.d_poset - 1) * 2 != md.d_weighted


def test_packing_radius_and_perfect():
    C = f3_mds()
    assert cd.packing_radius(C) == 1
    assert cd.is_perfect(C)
    assert cd.packing_radius(code(LEE5, 2, [(0, 0), (0, 2)])) == 2
    two = code(HAM3, 4, [(0, 0, 0, 0), (0, 0, 0, 1)])
    assert cd.packing_radius(two) == 3


def test_packing_probe_can_miss():
    """The formula radius is a lower bound; for this Lee code the true radius is larger."""
    C = code(LEE7, 2, [(0, 0), (0, 3)])
    pc = cd.packing_check(C)
    assert pc.disjoint and pc.radius == 3
    assert not pc.probe_collides
    assert cd.exact_packing_radius(C) == 4


def test_packing_probe_hits_for_linear_hamming_code():
    pc = cd.packing_check(f3_mds())
    assert pc.disjoint and pc.probe_collides


def test_mds_examples():
    res = cd.is_mds(f3_mds())
    assert res.mds and res.perfect and res.d_poset == 2 and res.size == 9
    assert cd.is_mds(code(HAM2, 2, [(0, 0), (1, 1)])).mds
    res = cd.is_mds(code(HAM2, 2, [(0, 0), (1, 0)]))
    assert not res.mds and not res.perfect and res.d_poset == 1


def test_construct_mds():
    C = cd.construct_mds(MetricSpace.chain(HAM3, 3), 2, lambda y: ((y[0] + y[1]) % 3,))
    assert len(C) == 9 and C.words == f3_mds().words
    C = cd.construct_mds(MetricSpace.chain(HAM2, 2), 2, lambda y: y)
    assert C.words == {(0, 0), (1, 1)}
    C = cd.construct_mds(MetricSpace.chain(HAM2, 2), 1, cd.zero_assignment)
    assert len(C) == 4
    with pytest.raises(DomainError):
        cd.construct_mds(MetricSpace.chain(HAM2, 2), 3, cd.zero_assignment)


@pytest.mark.parametrize("w", [HAM3, LEE5])
def test_all_assignments_give_mds(w):
    rng = np.random.default_rng(1)
    for n in (1, 2, 3):
        M = MetricSpace.chain(w, n)
        for d in range(1, n + 1):
            for assign in (cd.constant_assignment(d), cd.linear_assignment(w.spec, n, d),
                           cd.random_assignment(w.spec, n, d, rng)):
                C = cd.construct_mds(M, d, assign)
                if len(C) > 1:
                    assert cd.is_mds(C).mds and cd.is_diameter_perfect(C)


def test_diameter_perfect_examples():
    assert cd.is_diameter_perfect(f3_mds())
    dp = cd.diameter_perfect_product(code(LEE5, 2, [(0, 0), (0, 2)]))
    assert (dp.D, dp.floor_D, dp.a_star, dp.product) == (4, 3, 10, 20)
    assert not dp.equality
    for words in itertools.combinations(vector_array(F2, 2).tolist(), 2):
        C = code(HAM2, 2, words)
        assert cd.is_diameter_perfect(C) == cd.is_mds(C).mds


def test_brute_a_star_agrees_in_product():
    C = f3_mds()
    assert cd.diameter_perfect_product(C, a_star=brute_a_star) == cd.diameter_perfect_product(C)


def test_criterion_examples():
    crit = cd.diameter_perfect_criterion(LEE7, 2)
    assert (crit.first_factor, crit.upper_size, crit.lhs, crit.rhs) == (2, 3, 6, 7)
    assert not crit.equality
    assert cd.admissible_levels(HAM3) == []
    with pytest.raises(DomainError):
        cd.diameter_perfect_criterion(LEE5, 1)


def test_criterion_equality_over_f4():
    w = WeightTable(make_field(4), (0, 1, 2, 3))
    crit = cd.diameter_perfect_criterion(w, 2)
    assert crit.equality and crit.lhs == 4
    C = cd.construct_threshold_code(MetricSpace.chain(w, 2), 2, 1)
    assert cd.is_diameter_perfect(C)
    assert cd.diameter_perfect_product(C, a_star=brute_a_star).equality


def test_threshold_codes():
    C = cd.construct_threshold_code(MetricSpace.chain(LEE7, 2), 2, 1)
    assert len(C) == 21 and cd.min_distances(C).d_weighted == 2
    C = cd.construct_threshold_code(MetricSpace.chain(LEE7, 3), 2, 2)
    assert len(C) == 21 and cd.min_distances(C).d_weighted == 5
    with pytest.raises(DomainError):
        cd.construct_threshold_code(MetricSpace.chain(LEE5, 2), 1, 1)
    with pytest.raises(ValidationError):
        cd.construct_threshold_code(MetricSpace.chain(LEE7, 2), 2, 1, K={0, 1})


def test_power_of_q():
    res = cd.power_of_q_classification(f3_mds())
    assert res.exponent == 2 and res.diameter_perfect and res.mds
    whole = code(HAM2, 2, vector_array(F2, 2).tolist())
    assert cd.power_of_q_classification(whole).consistent
    non = code(HAM3, 2, [(0, 0), (1, 0), (0, 1)])
    res = cd.power_of_q_classification(non)
    assert not res.mds and not res.diameter_perfect
    with pytest.raises(DomainError):
        cd.power_of_q_classification(code(HAM3, 2, [(0, 0), (1, 0)]))


def test_load_code(tmp_path):
    path = tmp_path / "c.json"
    path.write_text('{"q": 3, "n": 3, "words": [[0,0,0],[1,1,0]]}')
    C = cd.load_code(path)
    assert len(C) == 2 and C.space.weight.name == "hamming"
    path.write_text('{"q": 3}')
    with pytest.raises(ValidationError):
        cd.load_code(path)


def test_report():
    rep = cd.code_report(f3_mds())
    assert rep.to_dict() == {"d_poset": 2, "s_wc": 1, "d_weighted": 2, "packing_radius": 1,
                             "mds": True, "perfect": True, "diameter_perfect": True}
