import random

import pytest

from torikit import (
    CompletenessError,
    Fan,
    char_to_linear_form,
    check_restriction_injectivity,
    dual_basis_character,
    equivariant_poincare_series,
    face_monomial_count,
    face_monomials,
    ordinary_cohomology,
    restriction_map,
    sr_monomial,
    sr_one,
    sr_presentation,
    sr_variable,
    sr_zero,
    stratify,
)
from torikit.lattice import invert_unimodular, mat_vec
from torikit.rings import _mv_mul

from conftest import COMPLETE_GOLDEN, SMOOTH_GOLDEN, load_fan


def test_presentation_p2(p2):
    pres = sr_presentation(p2)
    assert pres.num_generators == 3
    assert pres.relations == ((0, 1, 2),)


def test_presentation_p1xp1(p1xp1):
    pres = sr_presentation(p1xp1)
    assert pres.relations == ((0, 1), (2, 3))


def test_sr_relations_hold(p2, p1xp1):
    x0, x1, x2 = (sr_variable(p2, v) for v in range(3))
    assert (x0 * x1 * x2).is_zero
    assert not (x0 * x1).is_zero
    y = [sr_variable(p1xp1, v) for v in range(4)]
    assert (y[0] * y[1]).is_zero
    assert (y[2] * y[3]).is_zero
    assert not (y[0] * y[2]).is_zero


def test_ring_arithmetic(p2):
    x0, x1, x2 = (sr_variable(p2, v) for v in range(3))
    one = sr_one(p2)
    zero = sr_zero(p2)
    assert x0 + zero == x0
    assert x0 - x0 == zero
    assert one * x1 == x1
    assert 3 * x0 + 2 * x0 == 5 * x0
    assert x0 * x1 == x1 * x0
    assert (x0 + x1) * x2 == x0 * x2 + x1 * x2
    assert (x0 * x1) * x2 == x0 * (x1 * x2)  # both sides zero here


def test_ring_multiplication_random_associativity(p1xp1):
    rng = random.Random(9)
    vars_ = [sr_variable(p1xp1, v) for v in range(4)]

    def rand_elt():
        out = sr_zero(p1xp1)
        for _ in range(rng.randint(1, 3)):
            term = sr_one(p1xp1)
            for _ in range(rng.randint(0, 2)):
                term = term * vars_[rng.randrange(4)]
            out = out + rng.randint(-3, 3) * term
        return out

    for _ in range(20):
        a, b, c = rand_elt(), rand_elt(), rand_elt()
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_face_monomials_match_series():
    # the face monomials of degree 2k form a basis of H_T^2k
    for name in SMOOTH_GOLDEN:
        fan = load_fan(name)
        series = equivariant_poincare_series(fan)
        for deg in range(0, 21, 2):
            monos = face_monomials(fan, deg)
            assert len(monos) == face_monomial_count(fan, deg)
            assert len(monos) == series.coefficient(deg), (name, deg)


def test_face_monomials_are_faces(p2):
    for expo in face_monomials(p2, 6):
        support = tuple(v for v, e in enumerate(expo) if e)
        assert support in p2.cones
        assert sum(expo) == 3


def test_char_to_linear_form(p2):
    chi = (2, -1)
    elt = char_to_linear_form(p2, chi)
    # sum over rays of <chi, mu_v> x_v
    want = 2 * sr_variable(p2, 0) + (-1) * sr_variable(p2, 1) + (-1) * sr_variable(p2, 2)
    assert elt == want


def test_ordinary_cohomology_p2(p2):
    report = ordinary_cohomology(p2, 6)
    assert report.ranks() == [1, 1, 1, 0]
    for piece in report.pieces:
        assert piece.torsion == ()


def test_ordinary_cohomology_matches_poincare():
    from torikit import ordinary_poincare_polynomial

    for name in COMPLETE_GOLDEN:
        fan = load_fan(name)
        poly = ordinary_poincare_polynomial(fan)
        report = ordinary_cohomology(fan, 2 * fan.n)
        for piece in report.pieces:
            want = poly[piece.degree] if piece.degree < len(poly) else 0
            assert piece.rank == want, (name, piece.degree)
            assert piece.torsion == ()


def test_ordinary_cohomology_requires_complete(affine_plane):
    with pytest.raises(CompletenessError):
        ordinary_cohomology(affine_plane, 4)


def test_ordinary_cohomology_basis_independence(p1xp1, hirzebruch1):
    # ranks are intrinsic: recompute after a unimodular change of basis
    rng = random.Random(13)
    for fan in (p1xp1, hirzebruch1):
        u = [[1, 0], [0, 1]]
        for _ in range(3):
            a = rng.randint(-2, 2)
            u = [[u[0][0] + a * u[1][0], u[0][1] + a * u[1][1]], u[1]]
            u = [u[1], u[0]]
        invert_unimodular(u)  # sanity: unimodular
        moved = Fan.from_maximal_cones(
            fan.n,
            [mat_vec(u, r) for r in fan.rays],
            fan.maximal_cones,
        )
        a = ordinary_cohomology(fan, 2 * fan.n).ranks()
        b = ordinary_cohomology(moved, 2 * fan.n).ranks()
        assert a == b


def test_restriction_of_variable(p2):
    # on sigma = cone(mu_0, mu_1), x_0 restricts to the dual basis
    # character of ray 0, expressed in X(T_sigma) coordinates; on a cone
    # not containing ray 0 it restricts to 0
    poly = restriction_map(p2, sr_variable(p2, 0), (1, 2))
    assert poly == {}
    poly = restriction_map(p2, sr_variable(p2, 0), (0, 1))
    assert poly  # nonzero linear polynomial


def test_restriction_is_multiplicative(p2):
    for c in p2.maximal_cones:
        rank = p2.stabilizer_characters(c).rank
        xs = [sr_variable(p2, v) for v in c]
        prod_elt = sr_one(p2)
        prod_poly = {(0,) * rank: 1}
        for x in xs:
            prod_elt = prod_elt * x
            prod_poly = _mv_mul(prod_poly, restriction_map(p2, x, c))
        assert restriction_map(p2, prod_elt, c) == prod_poly


def test_restriction_is_additive(p1xp1):
    a = sr_variable(p1xp1, 0) + 2 * sr_variable(p1xp1, 2)
    b = sr_variable(p1xp1, 1) - sr_variable(p1xp1, 3)
    for c in p1xp1.maximal_cones:
        ra = restriction_map(p1xp1, a, c)
        rb = restriction_map(p1xp1, b, c)
        rsum = dict(ra)
        for k, v in rb.items():
            rsum[k] = rsum.get(k, 0) + v
            if rsum[k] == 0:
                del rsum[k]
        assert restriction_map(p1xp1, a + b, c) == rsum


def test_restriction_kills_off_support_monomials(p2):
    # compatibility with the stratification: a face monomial restricts to
    # zero on every cone that does not contain its support
    strat = stratify(p2)
    for expo in face_monomials(p2, 4):
        support = frozenset(v for v, e in enumerate(expo) if e)
        for rayset in strat.order:
            if not support <= set(rayset):
                elt = sr_monomial(p2, expo)
                assert restriction_map(p2, elt, rayset) == {}


def test_restriction_unknown_cone(p2):
    with pytest.raises(KeyError):
        restriction_map(p2, sr_one(p2), (0, 1, 2))


def test_euler_monomial_is_product_of_weights(p2, p1xp1):
    # the class of the top monomial of sigma restricts on sigma to the
    # product of the normal weights chi_v
    for fan in (p2, p1xp1):
        for c in fan.maximal_cones:
            top = sr_one(fan)
            for v in c:
                top = top * sr_variable(fan, v)
            got = restriction_map(fan, top, c)
            pres = fan.stabilizer_characters(c)
            want = {(0,) * pres.rank: 1}
            for v in c:
                chi = dual_basis_character(fan, c, v)
                free = pres.free_part(chi)
                lin = {}
                for i, a in enumerate(free):
                    if a:
                        key = tuple(
                            1 if j == i else 0 for j in range(len(free))
                        )
                        lin[key] = a
                want = _mv_mul(want, lin)
            assert got == want


def test_injectivity_on_golden_fans():
    for name in SMOOTH_GOLDEN:
        fan = load_fan(name)
        report = check_restriction_injectivity(fan, 10)
        assert report.all_injective, name
        for e in report.entries:
            assert e.domain_rank == e.image_rank
            assert e.degree % 2 == 0
