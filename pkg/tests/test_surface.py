import warnings

import pytest

from bourgeois import new_surface, pair, planar_curve
from bourgeois.algebra import IntMatrix


def test_annulus_conventions():
    s = new_surface(0, 2)
    assert s.rank == 1
    assert s.pairing.to_lists() == [[-1]]


def test_one_holed_torus_conventions():
    s = new_surface(1, 1)
    assert s.rank == 2
    assert s.pairing.to_lists() == [[0, 1], [-1, 0]]
    assert s.rho.is_identity()


def test_disc_is_trivial():
    s = new_surface(0, 1)
    assert s.rank == 0
    assert s.pairing.to_lists() == []
    assert s.is_disc


def test_closed_surfaces_rejected():
    with pytest.raises(ValueError):
        new_surface(2, 0)
    with pytest.raises(ValueError):
        new_surface(-1, 1)


def test_pairing_unimodular_exhaustive():
    for g in range(0, 5):
        for b in range(1, 6):
            s = new_surface(g, b)
            if s.rank:
                assert abs(s.pairing.det()) == 1, (g, b)


def test_rho_kills_exactly_boundary_classes():
    for g in range(0, 3):
        for b in range(1, 5):
            s = new_surface(g, b)
            m = s.rank
            for k in range(m):
                e = tuple(int(i == k) for i in range(m))
                image = s.rho.apply(e)
                if k < 2 * g:
                    assert image == e  # a_i -> alpha_i, b_i -> beta_i
                else:
                    assert all(x == 0 for x in image)


def test_boundary_classes_pair_to_zero():
    for g in range(0, 3):
        for b in range(2, 5):
            s = new_surface(g, b)
            m = s.rank
            for k in range(2 * g, m):  # boundary classes
                boundary = tuple(int(i == k) for i in range(m))
                rel = s.rho.apply(boundary)
                for l in range(m):
                    other = s.curve(tuple(int(i == l) for i in range(m)))
                    assert pair(s, rel, other) == 0


def test_planar_intersection_form_vanishes():
    for b in range(1, 6):
        s = new_surface(0, b)
        assert s.intersection.is_zero()


def test_intersection_form_is_skew():
    for g in range(0, 4):
        for b in range(1, 5):
            q = new_surface(g, b).intersection
            assert q.transpose() == -q


def test_planar_curve_indicator_vectors():
    pants = new_surface(0, 3)
    assert planar_curve(pants, {1}).coeffs == (1, 0)
    assert planar_curve(pants, {1, 2}).coeffs == (1, 1)
    four = new_surface(0, 4)
    assert planar_curve(four, {2, 3}).coeffs == (0, 1, 1)


def test_planar_curve_validation():
    pants = new_surface(0, 3)
    with pytest.raises(ValueError):
        planar_curve(pants, set())
    with pytest.raises(ValueError):
        planar_curve(pants, {3})  # out of range
    with pytest.raises(ValueError):
        planar_curve(new_surface(1, 2), {1})  # non-planar
    # the boundary-parallel curve around the last component is allowed
    assert planar_curve(pants, {1, 2}).planar_subset == frozenset({1, 2})


def test_pair_examples():
    ann = new_surface(0, 2)
    assert pair(ann, ann.rel_arc(2), ann.curve((1,))) == -1
    t11 = new_surface(1, 1)
    alpha1 = (1, 0)
    assert pair(t11, alpha1, t11.curve((0, 1))) == 1
    assert pair(t11, alpha1, t11.curve((0, 0))) == 0


def test_rel_arc_positions():
    s = new_surface(1, 3)
    assert s.rel_arc(2) == (0, 0, 1, 0)
    assert s.rel_arc(3) == (0, 0, 0, 1)
    with pytest.raises(ValueError):
        s.rel_arc(1)
    with pytest.raises(ValueError):
        s.rel_arc(4)


def test_non_primitive_class_warns():
    s = new_surface(1, 1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        s.curve((2, 4))
    assert any("non-primitive" in str(w.message) for w in caught)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        s.curve((1, 2))
        s.curve((0, 0))
    assert not caught


def test_labels():
    s = new_surface(1, 2)
    assert s.abs_labels() == ["a1", "b1", "d1"]
    assert s.rel_labels() == ["alpha1", "beta1", "A2"]


def test_subset_vector_consistency():
    s = new_surface(0, 4)
    c = planar_curve(s, {1, 3})
    assert c.coeffs == (1, 0, 1)
    with pytest.raises(ValueError):
        # mismatched explicit coeffs and subset
        from bourgeois.surface import CurveClass

        CurveClass(s, (1, 1, 0), frozenset({1, 3}))


def test_pairing_matches_intersection_matrix():
    s = new_surface(2, 3)
    m = s.rank
    q = s.intersection
    for k in range(m):
        x = tuple(int(i == k) for i in range(m))
        rel = s.rho.apply(x)
        for l in range(m):
            y = s.curve(tuple(int(i == l) for i in range(m)))
            assert pair(s, rel, y) == q.entry(k, l)


def test_pair_dimension_check():
    s = new_surface(0, 3)
    with pytest.raises(ValueError):
        pair(s, (1,), s.curve((1, 0)))
    with pytest.raises(ValueError):
        s.curve((1, 0, 0))
    assert IntMatrix.identity(0).is_identity()
