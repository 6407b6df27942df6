"""Chain idempotents, central blocks, the scan, and semisimplicity."""

from fractions import Fraction

import pytest

from tsring import blocks
from tsring.errors import BadLevel, CharIsP, ScanTooLarge
from tsring.exactarith import GF, QQ, ZZ
from tsring.groupmodel import make_params
from tsring.tring import NonProj, ProjPair, tring


# ------------------------------------------------------------- label groups


def test_level_group_orders(any_params):
    params = any_params
    for i in range(1, params.n + 1):
        gamma = blocks.level_group(params, i)
        assert gamma.order == params.p ** (i - 1) * (params.p - 1)
        # abelian
        for a in gamma.elements[:6]:
            for b in gamma.elements[:6]:
                assert gamma.mul(a, b) == gamma.mul(b, a)


def test_level_group_non_cyclic_two_power():
    gamma = blocks.level_group(make_params(2, 3, 1), 3)
    assert gamma.order == 4
    assert sorted(order for _, order in gamma.factors) == [2, 2]
    assert gamma.exponent == 2


def test_level_group_primitive_idempotents(any_params):
    params = any_params
    for i in range(1, params.n + 1):
        gamma = blocks.level_group(params, i)
        idems = gamma.primitive_rational_idempotents()
        total = {}
        for x in idems:
            assert blocks.ga_eq(QQ, blocks.ga_mul(gamma, QQ, x, x), x)
            total = blocks.ga_add(QQ, total, x)
        for a_idx, x in enumerate(idems):
            for b_idx, y in enumerate(idems):
                if a_idx != b_idx:
                    assert blocks.ga_mul(gamma, QQ, x, y) == {}
        assert blocks.ga_eq(QQ, total, blocks.ga_one(gamma, QQ))


def test_level_group_idempotent_count_examples():
    # Q[Z/2] splits in two; the level-2 group of (3,2,2) is Z/6 with four
    # rational classes (one per divisor)
    params = make_params(3, 2, 2)
    assert len(blocks.level_group(params, 1).primitive_rational_idempotents()) == 2
    assert len(blocks.level_group(params, 2).primitive_rational_idempotents()) == 4


# --------------------------------------------------------- chain idempotents


def test_chain_idempotent_322_level_one():
    params = make_params(3, 2, 2)
    ring = tring(params)
    e1 = blocks.ideal_identity(params, QQ, 1)
    assert e1 == ring.element(
        QQ,
        {NonProj(1, 1, 0): Fraction(2, 3), NonProj(1, 1, 1): Fraction(-1, 3)},
    )
    assert ring.mult(e1, e1) == e1


def test_chain_idempotent_top_is_identity(any_params):
    params = any_params
    ring = tring(params)
    assert blocks.ideal_identity(params, QQ, params.n) == ring.one(QQ)


def test_chain_idempotent_311_bottom():
    params = make_params(3, 1, 1)
    ring = tring(params)
    assert blocks.ideal_identity(params, QQ, 0) == ring.element(
        QQ, {ProjPair(0, 0): Fraction(1, 3)}
    )


def test_chain_idempotent_char_p_blocked():
    params = make_params(3, 2, 2)
    with pytest.raises(CharIsP):
        blocks.ideal_identity(params, GF(3), 1)
    with pytest.raises(BadLevel):
        blocks.ideal_identity(params, QQ, 5)


def test_mi_relation_exact(any_params):
    # m_i - m_i/p^(n-i) - m_i^2 e / p^(n-i) == 0 as exact rationals
    params = any_params
    for i in range(1, params.n + 1):
        mi = Fraction(params.nontrivial_coset_count(i))
        denom = Fraction(params.p ** (params.n - i))
        assert mi - mi / denom - mi * mi * params.e / denom == 0


def test_identity_on_both_readings(small_params):
    params = small_params
    ring = tring(params)
    for i in range(params.n + 1):
        ei = blocks.ideal_identity(params, QQ, i)
        for b in ring.level_basis(i) + ring.ideal_le(i):
            x = ring.from_basis(QQ, b)
            assert ring.mult(ei, x) == x
            assert ring.mult(x, ei) == x


# --------------------------------------------------------- the decomposition


@pytest.mark.parametrize("field", [QQ, GF(5), GF(7)])
def test_central_decomposition_322(field):
    params = make_params(3, 2, 2)
    decomp = blocks.central_decomposition(params, field)
    assert decomp.dims == [4, 2, 6]


def test_central_decomposition_311():
    params = make_params(3, 1, 1)
    ring = tring(params)
    decomp = blocks.central_decomposition(params, QQ)
    assert decomp.dims == [1, 2]
    f0, f1 = decomp.projectors
    assert f0 == ring.element(QQ, {ProjPair(0, 0): Fraction(1, 3)})
    assert f1 == ring.one(QQ) - f0


def test_central_decomposition_char_p():
    with pytest.raises(CharIsP):
        blocks.central_decomposition(make_params(3, 2, 2), GF(3))


def test_dimension_bookkeeping(any_params):
    params = any_params
    total = params.e**2 + sum(
        params.p ** (i - 1) * (params.p - 1) for i in range(1, params.n + 1)
    )
    assert total == params.e**2 + params.pn - 1 == tring(params).dimension()


def test_projectors_lie_in_center():
    params = make_params(3, 1, 1)
    ring = tring(params)
    center = ring.center_basis(QQ)
    decomp = blocks.central_decomposition(params, QQ)
    # solve membership: the center here is the whole ring (dimension 3)
    assert len(center) == 3
    for f in decomp.projectors:
        for b in ring.basis:
            x = ring.from_basis(QQ, b)
            assert ring.mult(f, x) == ring.mult(x, f)


# ------------------------------------------------------------ block markers


def test_matrix_block_311():
    params = make_params(3, 1, 1)
    decomp = blocks.central_decomposition(params, QQ)
    iso = decomp.isos[0]
    assert iso.to_matrix(decomp.projectors[0]) == [[Fraction(1)]]


def test_matrix_block_images_of_primitives_are_rank_one():
    from tsring import cartan
    from tsring.exactarith import rank_over_field

    params = make_params(3, 2, 2)
    ring = tring(params)
    decomp = blocks.central_decomposition(params, QQ)
    iso = decomp.isos[0]
    c = cartan.cartan_matrix(params)
    for piece in cartan.projective_primitive_decomposition(c, QQ):
        elem = cartan.matrix_to_projective_element(ring, QQ, piece)
        image = iso.to_matrix(elem)
        assert rank_over_field(image, QQ) == 1
        from tsring.exactarith import field_mat_mul

        assert field_mat_mul(image, image, QQ) == image


def test_level_block_twist_inverse(any_params):
    params = any_params
    for i in range(1, params.n + 1):
        gamma = blocks.level_group(params, i)
        for S in (QQ, GF(11)):
            cd = blocks.ga_mul(
                gamma, S, blocks.twist_unit(gamma, S), blocks.twist_unit_inverse(gamma, S)
            )
            assert blocks.ga_eq(S, cd, blocks.ga_one(gamma, S))


def test_top_block_labeling_is_plain():
    # at the top level the twist unit is trivial and the map is labeling
    params = make_params(3, 2, 2)
    gamma = blocks.level_group(params, 2)
    assert blocks.twist_unit(gamma, QQ) == blocks.ga_one(gamma, QQ)
    ring = tring(params)
    x = ring.from_basis(QQ, NonProj(2, 4, 1))
    assert blocks.to_plain_group_algebra(gamma, QQ, x) == {(4, 1): Fraction(1)}


def test_level_one_block_of_322_is_rank_two():
    params = make_params(3, 2, 2)
    decomp = blocks.central_decomposition(params, QQ)
    assert decomp.dims[1] == 2
    assert decomp.isos[1].gamma.order == 2


# ------------------------------------------- integral primitive decomposition


def test_integral_decomposition_311():
    params = make_params(3, 1, 1)
    ring = tring(params)
    assert blocks.integral_primitive_decomposition(params) == [ring.one(ZZ)]


def test_integral_decomposition_322():
    params = make_params(3, 2, 2)
    ring = tring(params)
    decomp = blocks.integral_primitive_decomposition(params)
    assert len(decomp) == 2
    eps = decomp[0]
    assert eps.coeffs == {ProjPair(0, 0): 1, ProjPair(1, 0): -1}
    assert decomp[1] == ring.one(ZZ) - eps


def test_integral_decomposition_properties(any_params):
    params = any_params
    decomp = blocks.integral_primitive_decomposition(params)
    assert len(decomp) == params.e
    outside = [
        x for x in decomp if any(isinstance(b, NonProj) for b in x.coeffs)
    ]
    assert len(outside) == 1


# ----------------------------------------------------------------- the scan


def test_scan_311():
    report = blocks.rational_central_idempotent_scan(make_params(3, 1, 1))
    assert report.primitive_count == 3
    assert report.sums_checked == 8
    assert report.integral_masks == [0, 7]
    assert report.only_zero_and_one


def test_scan_bound():
    with pytest.raises(ScanTooLarge):
        blocks.rational_central_idempotent_scan(make_params(3, 2, 2), bound=3)


def test_bottom_projector_never_integral(any_params):
    params = any_params
    f0 = blocks.ideal_identity(params, QQ, 0)
    assert any(Fraction(v).denominator > 1 for v in f0.coeffs.values())


def test_scan_small_instances(small_params):
    report = blocks.rational_central_idempotent_scan(small_params)
    assert report.only_zero_and_one


# ------------------------------------------------------------- semisimplicity


def _truly_semisimple(params, q):
    # proven criterion: q = 0, or q coprime to both p and p - 1; in
    # characteristic p the sum of all projective classes is a nonzero
    # central element with square p^n * e * itself = 0
    if q == 0:
        return True
    return params.p % q != 0 and (params.p - 1) % q != 0


GRID = [0, 2, 3, 5, 7]


def test_semisimplicity_decisions_match_truth(any_params):
    params = any_params
    for q in GRID + [params.p]:
        decision = blocks.semisimplicity_decide(params, q)
        assert decision.verdict != "inconclusive"
        assert (decision.verdict == "semisimple") == _truly_semisimple(params, q)


def test_semisimplicity_certificates():
    params = make_params(3, 2, 2)
    d0 = blocks.semisimplicity_decide(params, 0)
    assert d0.method == "trace_form_nondegenerate"
    d2 = blocks.semisimplicity_decide(params, 2)
    assert d2.method == "central_nilpotent_block"
    assert d2.certificate["block_level"] == 1
    d3 = blocks.semisimplicity_decide(params, 3)
    assert d3.method == "quotient_nilpotent"


def test_semisimplicity_char_p_defect_one():
    # n = 1 and q = p: the stated invertibility criterion says semisimple,
    # but the projective-class sum is a nonzero central square-zero element
    params = make_params(3, 1, 1)
    decision = blocks.semisimplicity_decide(params, 3)
    assert decision.verdict == "not_semisimple"
    assert decision.method == "projective_sum_nilpotent"
    assert blocks.stated_criterion(params, 3)  # the stated criterion disagrees
    ring = tring(params)
    z = ring.element(GF(3), {ProjPair(0, 0): 1})
    assert ring.mult(z, z).is_zero() and not z.is_zero()


def test_stated_criterion_values():
    params = make_params(3, 2, 2)
    assert [blocks.stated_criterion(params, q) for q in [0, 2, 3, 5, 7]] == [
        True,
        False,
        False,
        True,
        True,
    ]


def test_block_iso_dispatcher():
    params = make_params(3, 1, 1)
    bottom = blocks.block_iso(params, QQ, 0)
    assert bottom.to_matrix(bottom.projector) == [[Fraction(1)]]
    top = blocks.block_iso(params, QQ, 1)
    assert top.gamma.order == 2
    assert top.checks["multiplicative"] and top.checks["round_trip"]


def test_semisimplicity_312_grid():
    # |Aut(D)| = 2 here, so the only bad characteristics are 2 and p = 3
    params = make_params(3, 1, 2)
    verdicts = {
        q: blocks.semisimplicity_decide(params, q).verdict for q in (0, 2, 3, 5, 7)
    }
    assert verdicts == {
        0: "semisimple",
        2: "not_semisimple",
        3: "not_semisimple",
        5: "semisimple",
        7: "semisimple",
    }
    # characteristic p: the trace form is degenerate (the projective-class
    # sum is in its radical) even though 2 is invertible mod 3
    from tsring.exactarith import rank_over_field

    gram = tring(params).trace_form_gram(GF(3))
    assert rank_over_field(gram, GF(3)) < 6
