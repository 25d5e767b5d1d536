import random

import pytest

from stablekneser.charclasses import (CYCLIC_4, ODD, TWO_MOD_4, ZERO_MOD_4,
                                      GradedPoly, classify, generator,
                                      one_plus, poly_invert, poly_one,
                                      restrict, restriction_names, ring_for,
                                      total_sw_class,
                                      total_sw_class_from_blocks,
                                      vanishing_window, vanishing_windows,
                                      wbar)

D = 24  # default truncation for the small tests


def mono(ring, *exps):
    return GradedPoly(ring, D, frozenset((tuple(exps),)))


def test_ring_for():
    assert ring_for(3, 1) == ODD
    assert ring_for(2, 2) == TWO_MOD_4
    assert ring_for(2, 4) == ZERO_MOD_4
    assert ring_for(1, 0) == TWO_MOD_4
    assert ring_for(2, 0) == ZERO_MOD_4


def test_ring_relations_enforced():
    with pytest.raises(ValueError):
        GradedPoly(ZERO_MOD_4, D, frozenset(((1, 1, 0),)))  # xy = 0
    with pytest.raises(ValueError):
        GradedPoly(CYCLIC_4, D, frozenset(((2, 0),)))  # x^2 = 0
    x = generator(ZERO_MOD_4, "x", D)
    y = generator(ZERO_MOD_4, "y", D)
    assert (x * y).is_zero()
    xc = generator(CYCLIC_4, "x", D)
    assert (xc * xc).is_zero()


def test_one_plus_x_times_one_plus_y():
    lhs = one_plus(ZERO_MOD_4, D, "x") * one_plus(ZERO_MOD_4, D, "y")
    assert lhs == one_plus(ZERO_MOD_4, D, "x", "y")


def test_invert_geometric_series():
    inv = poly_invert(one_plus(ODD, D, "a"))
    assert inv.terms == frozenset((i,) for i in range(D + 1))


def test_invert_cube():
    inv = poly_invert(one_plus(ODD, D, "a") ** 3)
    degrees = {t[0] for t in inv.terms}
    assert degrees == {i for i in range(D + 1) if i % 4 in (0, 1)}
    assert inv == wbar(1, 5, D)


def test_invert_requires_unit():
    with pytest.raises(ValueError):
        poly_invert(generator(ODD, "a", D))


def test_product_with_inverse_is_one():
    rng = random.Random(13)
    for ring in (ODD, TWO_MOD_4, ZERO_MOD_4, CYCLIC_4):
        gens = {ODD: ("a",), TWO_MOD_4: ("a", "b"),
                ZERO_MOD_4: ("x", "y", "u"), CYCLIC_4: ("x", "u")}[ring]
        for _ in range(5):
            p = poly_one(ring, D)
            for g in gens:
                if rng.random() < 0.7:
                    p = p * (poly_one(ring, D) + generator(ring, g, D))
            inv = poly_invert(p)
            assert p * inv == poly_one(ring, D)


def test_total_sw_class_closed_forms():
    assert total_sw_class(3, 1, D) == one_plus(ODD, D, "a")
    # (2s, 4): (1+y)(1+x+y+u)(1+x+y)
    w = total_sw_class(2, 4, D)
    expect = one_plus(ZERO_MOD_4, D, "y") * \
        one_plus(ZERO_MOD_4, D, "x", "y", "u") * one_plus(ZERO_MOD_4, D, "x", "y")
    assert w == expect
    # odd n, k = 4: (1+a)(1+b)(1+a)(1+a+b)
    w = total_sw_class(3, 4, D)
    expect = one_plus(TWO_MOD_4, D, "a") * one_plus(TWO_MOD_4, D, "b") * \
        one_plus(TWO_MOD_4, D, "a") * one_plus(TWO_MOD_4, D, "a", "b")
    assert w == expect


def test_total_sw_class_equals_block_derivation():
    for k in range(0, 9):
        for n in range(1, 11):
            assert total_sw_class(n, k, D) == total_sw_class_from_blocks(n, k, D), (n, k)


def test_wbar_examples():
    assert wbar(4, 1, D).terms == frozenset((i,) for i in range(D + 1))
    wb5 = wbar(3, 5, D)
    assert wb5.component(2).is_zero() and wb5.component(3).is_zero()
    assert wb5.component(4) == mono(ODD, 4)
    # (2s,4): restriction of the dual class to the cyclic part is (1+x) sum u^i
    for s in (1, 2):
        got = restrict(wbar(2 * s, 4, D), "j")
        expect_terms = set()
        for i in range(0, (D // 2) + 1):
            expect_terms.add((0, i))
            if 1 + 2 * i <= D:
                expect_terms.add((1, i))
        assert got.terms == frozenset(expect_terms)


def test_restrict_examples():
    w = total_sw_class(2, 4, D)
    got = restrict(w, "j")
    expect = one_plus(CYCLIC_4, D, "x") * \
        (poly_one(CYCLIC_4, D) + generator(CYCLIC_4, "u", D))
    assert got == expect
    x = generator(ZERO_MOD_4, "x", D)
    y = generator(ZERO_MOD_4, "y", D)
    assert restrict(x, "phi_rho") == generator(ODD, "a", D)
    assert restrict(y, "phi_rho").is_zero()
    assert restrict(poly_one(ZERO_MOD_4, D), "phi_rho") == poly_one(ODD, D)
    assert restrict(generator(CYCLIC_4, "u", D), "phi_sigma_m2") == mono(ODD, 2)
    assert restrict(generator(ODD, "a", D), "p") == generator(CYCLIC_4, "x", D)
    with pytest.raises(ValueError):
        restrict(w, "phi_sigma_m2")


def test_restrictions_are_ring_homomorphisms():
    rng = random.Random(17)
    for ring in (ODD, TWO_MOD_4, ZERO_MOD_4, CYCLIC_4):
        gens = {ODD: ("a",), TWO_MOD_4: ("a", "b"),
                ZERO_MOD_4: ("x", "y", "u"), CYCLIC_4: ("x", "u")}[ring]

        def random_poly():
            p = poly_one(ring, D)
            for g in gens:
                if rng.random() < 0.6:
                    p = p * (poly_one(ring, D) + generator(ring, g, D))
            if rng.random() < 0.3:
                p = p + generator(ring, gens[0], D)
            return p

        for name in restriction_names(ring):
            for _ in range(5):
                p, q = random_poly(), random_poly()
                assert restrict(p * q, name) == restrict(p, name) * restrict(q, name)
                assert restrict(p + q, name) == restrict(p, name) + restrict(q, name)


def test_naturality_of_rho_restriction_for_odd_k():
    # restricting the odd-k total class along rho reproduces (1+a)^{r+1}
    for n, r in [(2, 0), (2, 1), (3, 2)]:
        k = 2 * r + 1
        w = total_sw_class(n, k, D)
        assert restrict(w, "phi_rho") == one_plus(ODD, D, "a") ** (r + 1)


def test_vanishing_window_examples():
    assert vanishing_window(3, 5) == (2, 4)
    assert vanishing_window(2, 3) == (1, 2)
    assert vanishing_window(3, 6) == (2, 4)   # n odd, m = 0 mod 4 case
    assert vanishing_window(4, 6) == (2, 4)   # n even, m = 2 mod 4 case
    assert vanishing_window(3, 1) is None
    assert vanishing_window(2, 4) is None     # r = 2 below the threshold
    assert vanishing_window(1, 0) is None


def test_windows_match_series():
    for k in range(3, 21):
        for n in (3, 4):
            windows = vanishing_windows(n, k)
            if not windows:
                continue
            hi = max(w[1] for w in windows)
            wb = wbar(n, k, max(hi + 4, 16))
            for lo, hi_ in windows:
                for d in range(lo, hi_):
                    assert wb.component(d).is_zero(), (n, k, d)


def test_window_last_case_first_fires_at_k24():
    # r = 2s+4 with s = 4 gives the wide window (7, 16) on top of (7, 8)
    assert vanishing_windows(4, 24) == [(7, 8), (7, 16)]
    wb = wbar(4, 24, 20)
    assert all(wb.component(d).is_zero() for d in range(7, 16))
    assert not wb.component(16).is_zero()


def test_classify_verdicts():
    assert classify(5, 1).verdict == "TEST_GRAPH_CERTIFIED"
    assert classify(5, 2).verdict == "TEST_GRAPH_CERTIFIED"
    assert classify(4, 4).verdict == "TEST_GRAPH_CERTIFIED"
    assert classify(4, 4).certificate == "j"
    assert classify(3, 5).verdict == "NON_TEST_FOR_LARGE_N"
    assert classify(2, 3).verdict == "NON_TEST_FOR_LARGE_N"
    assert classify(3, 4).verdict == "TEST_GRAPH_UP_TO_DEGREE"
    report = classify(3, 5)
    assert 2 in report.wbar_vanishing_degrees
    assert report.windows == [(2, 4)]


def test_classify_k8_parity_split():
    # odd n refuted by an even vanishing degree; even n stays inconclusive
    odd = classify(3, 8)
    even = classify(4, 8)
    assert odd.verdict == "NON_TEST_FOR_LARGE_N"
    assert even.verdict == "TEST_GRAPH_UP_TO_DEGREE"
    assert all(d % 2 == 1 for d in even.wbar_vanishing_degrees)


def test_classify_report_json():
    doc = classify(2, 4).to_json_dict()
    assert doc["verdict"] == "TEST_GRAPH_CERTIFIED"
    assert doc["ring_case"] == ZERO_MOD_4
    assert isinstance(doc["w"], str) and doc["w"].startswith("1 + ")


def test_w_times_wbar_is_one_on_a_grid():
    for k in range(0, 9):
        for n in range(1, 7):
            w = total_sw_class(n, k, 32)
            assert w * poly_invert(w) == poly_one(w.ring, 32), (n, k)


def test_poly_str_sorted_monomial_form():
    w = total_sw_class(2, 4, 4)
    assert str(poly_one(ZERO_MOD_4, 4)) == "1"
    assert "·" in str(w)
    assert str(generator(ZERO_MOD_4, "u", 4) * generator(ZERO_MOD_4, "y", 4)) == "y·u"
