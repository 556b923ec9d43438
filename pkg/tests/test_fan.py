import pytest

from torikit import (
    Fan,
    ParseError,
    incompleteness_reasons,
    is_complete,
    is_smooth_fan,
    orbit_table,
    parse_fan,
    simplicial_complex,
    validate_fan,
)
from torikit.lattice import pairing

from conftest import COMPLETE_GOLDEN, SMOOTH_GOLDEN, load_fan


def test_parse_p2(p2):
    assert p2.n == 2
    assert p2.rays == ((1, 0), (0, 1), (-1, -1))
    assert len(p2.cones) == 7  # 0, three rays, three 2-cones
    assert p2.maximal_cones == ((0, 1), (0, 2), (1, 2))


def test_parse_comments_and_blank_lines():
    fan = parse_fan(
        "# leading comment\n\nrank 1\nrays 2 # trailing\n1\n-1\nmaxcones 2\n0\n1\n"
    )
    assert fan.rays == ((1,), (-1,))


def test_parse_normalizes_rays_with_warning():
    fan = parse_fan("rank 2\nrays 1\n2 4\nmaxcones 1\n0\n")
    assert fan.rays == ((1, 2),)
    assert len(fan.warnings) == 1


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 1"):
        parse_fan("rang 2\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_fan("rank 2\nrays 1\n1\nmaxcones 1\n0\n")
    with pytest.raises(ParseError):
        parse_fan("rank 2\nrays 1\n1 0\n")
    with pytest.raises(ParseError):
        parse_fan("rank 2\nrays 1\n1 0\nmaxcones 1\n5\n")
    with pytest.raises(ParseError):
        parse_fan("rank 0\nrays 0\nmaxcones 0\n")


def test_duplicate_rays_rejected():
    with pytest.raises(ParseError):
        parse_fan("rank 2\nrays 2\n1 0\n2 0\nmaxcones 1\n0 1\n")


def test_cones_sorted_by_dimension(p2):
    dims = [p2.dim_of(c) for c in p2.cones]
    assert dims == sorted(dims)
    assert p2.cones[0] == ()


def test_golden_fans_validate():
    for name in SMOOTH_GOLDEN:
        fan = load_fan(name)
        report = validate_fan(fan)
        assert report.valid, (name, report.violations)
        assert is_smooth_fan(fan), name


def test_a1_fan_valid_but_singular(a1_singular):
    assert validate_fan(a1_singular).valid
    assert not is_smooth_fan(a1_singular)


def test_overlap_fan_invalid():
    fan = load_fan("overlap_invalid")
    report = validate_fan(fan)
    assert not report.valid
    assert any(k == "axiom-b" for k, _ in report.violations)


def test_vertex_free_cone_rejected():
    fan = parse_fan("rank 2\nrays 2\n1 0\n-1 0\nmaxcones 1\n0 1\n")
    report = validate_fan(fan)
    assert not report.valid
    assert any("vertex" in m for _, m in report.violations)


def test_face_closure_violation_detected():
    # build a raw fan missing the origin's ray faces
    fan = Fan(2, ((1, 0), (0, 1)), (((0, 1)),))
    report = validate_fan(fan)
    assert not report.valid
    assert any(k == "axiom-a" for k, _ in report.violations)


def test_completeness():
    for name in COMPLETE_GOLDEN:
        assert is_complete(load_fan(name)), name
    assert not is_complete(load_fan("affine_plane"))
    reasons = incompleteness_reasons(load_fan("affine_plane"))
    assert reasons


def test_incompleteness_reasons_mention_boundary():
    fan = parse_fan("rank 1\nrays 1\n1\nmaxcones 1\n0\n")
    reasons = incompleteness_reasons(fan)
    assert any("expected 2" in r or "dimension" in r for r in reasons)


def test_orbit_table_affine_plane(affine_plane):
    table = orbit_table(affine_plane)
    assert len(table) == 4
    codims = sorted(e.codim for e in table.entries)
    assert codims == [0, 1, 1, 2]
    by_rayset = {e.rayset: e for e in table.entries}
    # dense orbit: trivial stabilizer, no divisors contain it
    assert by_rayset[()].stabilizer.rank == 0
    assert by_rayset[()].divisors == ()
    # fixed point: the stabilizer is all of T
    assert by_rayset[(0, 1)].stabilizer.rank == 2
    assert by_rayset[(0,)].stabilizer.rank == 1


def test_orbit_count_equals_cone_count():
    for name in SMOOTH_GOLDEN:
        fan = load_fan(name)
        assert len(orbit_table(fan)) == len(fan.cones)


def test_orbit_stabilizer_rank_is_codim():
    # X(T_sigma) has rank dim sigma = codim of the orbit, torsion-free
    # for smooth cones
    for name in SMOOTH_GOLDEN:
        fan = load_fan(name)
        for e in orbit_table(fan).entries:
            assert e.stabilizer.rank == e.codim
            assert e.stabilizer.torsion == ()


def test_stabilizer_characters_of_full_dim_cone(a1_singular):
    # a full dimensional cone has sigma^perp = 0, so X(T_sigma) = X(T)
    pres = a1_singular.stabilizer_characters((0, 1))
    assert pres.rank == 2
    assert pres.torsion == ()


def test_stabilizer_characters_kill_exactly_cone_perp(p2):
    # a character dies in X(T_sigma) iff it vanishes on the rays of sigma
    import itertools

    for c in p2.cones:
        pres = p2.stabilizer_characters(c)
        for chi in itertools.product(range(-2, 3), repeat=2):
            vanishes = all(pairing(chi, p2.rays[v]) == 0 for v in c)
            assert pres.is_zero(chi) == vanishes, (c, chi)


def test_character_restriction_is_surjective(p2):
    # for tau a face of sigma, X(T_sigma) -> X(T_tau) is well defined:
    # sigma^perp is contained in tau^perp
    for sigma in p2.cones:
        for tau in p2.cones:
            if not set(tau) <= set(sigma):
                continue
            pres_sigma = p2.stabilizer_characters(sigma)
            pres_tau = p2.stabilizer_characters(tau)
            for chi in pres_sigma.lift_basis():
                # classes of X(T_sigma) basis characters make sense mod
                # tau^perp too, and hitting all of X(T_tau) means the
                # free parts span
                pres_tau.free_part(chi)
            # surjectivity: both are quotients of the same X(T), so the
            # composite X(T) -> X(T_tau) is onto by construction
            assert pres_tau.rank <= pres_sigma.rank


def test_simplicial_complex_p2(p2):
    sc = simplicial_complex(p2)
    assert sc.num_vertices == 3
    assert sc.is_simplex(())
    assert sc.is_simplex((0, 1))
    assert not sc.is_simplex((0, 1, 2))
    assert sc.minimal_nonfaces == ((0, 1, 2),)


def test_simplicial_complex_p1xp1(p1xp1):
    sc = simplicial_complex(p1xp1)
    # opposite rays never span a cone
    assert sc.minimal_nonfaces == ((0, 1), (2, 3))


def test_simplices_biject_with_cones():
    for name in SMOOTH_GOLDEN:
        fan = load_fan(name)
        sc = simplicial_complex(fan)
        cone_sets = {frozenset(c) for c in fan.cones}
        assert sc.simplices == cone_sets


def test_from_maximal_cones_closure():
    fan = Fan.from_maximal_cones(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    assert len(fan.cones) == 7
    assert validate_fan(fan).valid
