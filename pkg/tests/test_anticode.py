import pytest

from posetcodes import anticode as ac
from posetcodes.algebra import make_field, vector_array
from posetcodes.errors import ContractError, DomainError, ValidationError
from posetcodes.metric import MetricSpace
from posetcodes.oracle import brute_a_star, brute_optimal_anticodes
from posetcodes.poset import antichain
from posetcodes.weights import WeightTable, make_standard_weight, realizable_weights

F2, F3, F5, F7 = (make_field(q) for q in (2, 3, 5, 7))
HAM2, HAM3 = make_standard_weight(F2, "hamming"), make_standard_weight(F3, "hamming")
LEE5, LEE7 = make_standard_weight(F5, "lee"), make_standard_weight(F7, "lee")
GAP5 = WeightTable(F5, (0, 2, 3, 3, 2))


def test_normalize_radius():
    d = ac.normalize_radius(GAP5, 2, 1)
    assert (d.S, d.R) == (0, 0)
    d = ac.normalize_radius(LEE5, 2, 3)
    assert (d.S, d.R, d.value) == (1, 1, 3)
    assert (ac.normalize_radius(LEE5, 2, 0).S, ac.normalize_radius(LEE5, 2, 0).R) == (0, 0)
    with pytest.raises(DomainError):
        ac.normalize_radius(LEE5, 2, -1)


def test_ball_size_examples():
    assert ac.ball_size(LEE5, 2, 3) == 15
    assert ac.ball_size(HAM3, 3, 2) == 9
    assert ac.ball_size(LEE7, 3, 0) == 1
    assert ac.ball_size(LEE5, 2, 100) == 25


def test_ball_members():
    M = MetricSpace.chain(HAM2, 2)
    assert ac.ball(M, (0, 0), 1) == {(0, 0), (1, 0)}
    assert ac.ball(MetricSpace.chain(LEE5, 2), (0, 0), 0) == {(0, 0)}
    M5 = MetricSpace.chain(LEE5, 2)
    assert len(ac.ball(M5, (3, 2), 3)) == len(ac.ball(M5, (0, 0), 3))


def test_ball_needs_usual_chain():
    with pytest.raises(ContractError):
        ac.ball(MetricSpace(F2, 2, antichain(2), HAM2), (0, 0), 1)


def test_diameter():
    M = MetricSpace.chain(LEE5, 2)
    assert ac.diameter([(1, 1)], M) == 0
    assert ac.diameter(ac.ball(M, (0, 0), 3), M) == 4
    with pytest.raises(DomainError):
        ac.diameter([], M)
    MH = MetricSpace.chain(HAM3, 3)
    for D in realizable_weights(HAM3, 3):
        assert ac.diameter(ac.ball(MH, (0, 0, 0), D), MH) == D


def test_product_bound_examples():
    M = MetricSpace.chain(HAM2, 2)
    res = ac.distance_set_product_bound([(0, 0), (1, 0)], [(0, 0), (0, 1)], M)
    assert res.disjoint_distance_sets and res.bound_holds and res.product == 4
    assert ac.distance_set_product_bound([(0, 0)], [(0, 0)], M).disjoint_distance_sets
    same = [(0, 0), (1, 1)]
    assert not ac.distance_set_product_bound(same, same, M).disjoint_distance_sets


def test_families():
    assert ac.lower_family(LEE5, 1) == [frozenset({1}), frozenset({4})]
    low7 = ac.lower_family(LEE7, 2)
    assert {len(K) for K in low7} == {2} and frozenset({1, 2}) in low7
    up7 = ac.upper_family(LEE7, 2)
    assert {len(K) for K in up7} == {3} and frozenset({0, 2, 4}) in up7
    assert ac.upper_family(HAM3, 1) == [frozenset({0, 1, 2})]
    fam = ac.w_families(LEE7, 2)
    assert (fam.lower_size, fam.upper_size) == (2, 3)


def test_family_domains():
    with pytest.raises(DomainError):
        ac.lower_family(LEE7, 0)
    with pytest.raises(DomainError):
        ac.upper_family(GAP5, 1)


@pytest.mark.parametrize("w,n,D,expected,branch", [
    (LEE5, 1, 1, 2, ac.AT_OR_ABOVE),
    (LEE7, 1, 2, 3, ac.AT_OR_ABOVE),
    (HAM2, 3, 2, 4, ac.BELOW),
])
def test_optimal_anticode_size_examples(w, n, D, expected, branch):
    rep = ac.optimal_anticode_size(w, n, D)
    assert rep.a_star == expected and rep.branch == branch
    assert brute_a_star(w, n, D) == expected


def test_witnesses_listed():
    rep = ac.optimal_anticode_size(LEE5, 1, 1, with_witnesses=True)
    assert [tuple(x["K"]) for x in rep.witnesses] == [(1,), (4,)]


def test_build_examples():
    assert ac.build_optimal_anticode(MetricSpace.chain(LEE5, 1), (0,), 1, {1}) == {(0,), (1,)}
    A = ac.build_optimal_anticode(MetricSpace.chain(HAM2, 3), (0, 0, 0), 2)
    assert A == {(a, b, 0) for a in (0, 1) for b in (0, 1)}
    M7 = MetricSpace.chain(LEE7, 1)
    assert ac.build_optimal_anticode(M7, (3,), 2, {1, 2}) == {(3,), (4,), (5,)}


def test_build_needs_valid_K():
    M = MetricSpace.chain(LEE7, 1)
    with pytest.raises(ValidationError):
        ac.build_optimal_anticode(M, (0,), 2)
    with pytest.raises(ValidationError):
        ac.build_optimal_anticode(M, (0,), 2, {1, 3})


def test_optimality_check():
    chk = ac.is_optimal_anticode(ac.ball(MetricSpace.chain(HAM2, 3), (0, 0, 0), 2),
                                 MetricSpace.chain(HAM2, 3), 2)
    assert chk.optimal and chk.form == ac.BALL
    chk = ac.is_optimal_anticode([(0,), (1,), (2,)], MetricSpace.chain(LEE7, 1), 2)
    assert chk.optimal and chk.form == ac.X_PLUS_Y
    chk = ac.is_optimal_anticode([(0,), (3,)], MetricSpace.chain(LEE7, 1), 3)
    assert not chk.optimal and chk.a_star > 2


def test_classification_examples():
    M = MetricSpace.chain(HAM2, 2)
    balls = {ac.ball(M, x, 1) for x in vector_array(F2, 2).tolist() if (0, 0) in ac.ball(M, x, 1)}
    assert set(brute_optimal_anticodes(HAM2, 2, 1)) == balls == ac.classified_anticodes_through(M, 1)
    got = set(brute_optimal_anticodes(LEE5, 1, 1))
    assert got == {frozenset({(0,), (1,)}), frozenset({(0,), (4,)})}
    assert got == ac.classified_anticodes_through(MetricSpace.chain(LEE5, 1), 1)


@pytest.mark.parametrize("w", [HAM3, LEE5, LEE7])
def test_formula_matches_clique_search(w):
    for n in (1, 2):
        if w.spec.q**n > 125:
            continue
        for D in realizable_weights(w, n):
            assert ac.optimal_anticode_size(w, n, D).a_star == brute_a_star(w, n, D)


def test_classification_gap_over_f4():
    """Over F_4 a maximum anticode need not be of the classified form.

    With w = (0, 1, 2, 3) the only candidate of weight S = S_w = 2 is x, and
    x fails the lower-family condition because w(x - 1) = 3 > 2.  So the
    family is {∅} and the classified anticodes through 0 are {0, 1} only,
    while {0, x} has diameter 2 and the same (optimal) size.
    """
    w = WeightTable(make_field(4), (0, 1, 2, 3))
    M = MetricSpace.chain(w, 1)
    assert ac.lower_family(w, 2) == [frozenset()]
    assert ac.optimal_anticode_size(w, 1, 2).a_star == brute_a_star(w, 1, 2) == 2
    brute = set(brute_optimal_anticodes(w, 1, 2))
    assert brute == {frozenset({(0,), (1,)}), frozenset({(0,), (2,)})}
    assert ac.classified_anticodes_through(M, 2) == {frozenset({(0,), (1,)})}


def test_size_formula_gap_over_f8():
    """Over F_8 the closed form can undercount A*."""
    w = WeightTable(make_field(8), (0, 1, 2, 3, 2, 3, 2, 3))
    assert ac.optimal_anticode_size(w, 1, 2).a_star == 2
    assert brute_a_star(w, 1, 2) == 4
