"""Group model: parameters, cosets, double cosets, star products."""

import numpy as np
import pytest

from tsring import groupmodel as gm
from tsring.errors import BadLevel, BadOrder, CharacterIllDefined, NotPrime, TwoBlocked


# ------------------------------------------------------------------ params


def test_make_params_322():
    params = gm.make_params(3, 2, 2)
    assert params.subgroup_E == (1, 8)
    assert params.multiplicity == 4
    assert params.group_order == 18


def test_make_params_trivial_e():
    assert gm.make_params(5, 1, 1).subgroup_E == (1,)


def test_make_params_errors():
    with pytest.raises(BadOrder):
        gm.make_params(3, 2, 4)
    with pytest.raises(NotPrime):
        gm.make_params(4, 1, 1)
    with pytest.raises(TwoBlocked):
        gm.make_params(2, 2, 2)
    with pytest.raises(BadOrder):
        gm.make_params(3, 0, 1)


def test_subgroup_e_is_the_order_e_subgroup(any_params):
    params = any_params
    members = params.subgroup_E
    assert len(members) == params.e
    assert 1 in members
    for r in members:
        assert pow(r, params.e, params.pn) == 1
        for s in members:
            assert r * s % params.pn in members


# -------------------------------------------------------------- pi, cosets


def test_pi_reduction():
    params = gm.make_params(3, 2, 2)
    assert gm.pi(params, 1, 8) == 2
    assert gm.pi(params, 2, 8) == 8
    with pytest.raises(BadLevel):
        gm.pi(params, 3, 8)
    with pytest.raises(BadOrder):
        gm.pi(params, 1, 6)


def test_pi_injective_on_e():
    params = gm.make_params(7, 2, 3)
    image = {gm.pi(params, 1, r) for r in params.subgroup_E}
    assert len(image) == 3


def test_pi_injective_on_e_everywhere(any_params):
    params = any_params
    for i in range(1, params.n + 1):
        image = {gm.pi(params, i, r) for r in params.subgroup_E}
        assert len(image) == params.e


def test_canonical_coset():
    params = gm.make_params(3, 2, 2)
    coset = gm.canonical_coset(params, 2, 7)
    assert coset.rep == 2
    assert coset.members(params) == (2, 7)
    assert gm.canonical_coset(params, 1, 2).rep == 1  # pi_1(E) is everything
    assert gm.canonical_coset(params, 2, 1).rep == 1


def test_coset_mul_representative_independent():
    params = gm.make_params(3, 2, 2)
    a, b = gm.canonical_coset(params, 2, 2), gm.canonical_coset(params, 2, 4)
    prod = gm.coset_mul(params, a, b)
    # replacing 2 by its coset-mate 7 must not change the product coset
    alt = gm.coset_mul(params, gm.canonical_coset(params, 2, 7), b)
    assert prod == alt == gm.canonical_coset(params, 2, 8)


# ----------------------------------------------------------- element laws


def test_group_laws(any_params):
    params = any_params
    table = gm.group_table(params)
    order = len(table.elems)
    mul = table.mul
    left = mul[mul[:, :, None], np.arange(order)[None, None, :]]
    right = mul[np.arange(order)[:, None, None], mul[None, :, :]]
    assert (left == right).all(), "associativity"
    ident = table.index[params.identity]
    assert (mul[ident, :] == np.arange(order)).all()
    assert (mul[np.arange(order), table.inv] == ident).all()


def test_frobenius_action(any_params):
    params = any_params
    for r in params.subgroup_E:
        if r == 1:
            continue
        for x in range(1, params.pn):
            assert r * x % params.pn != x


# ----------------------------------------------------------- double cosets


def test_double_coset_counts_examples():
    params = gm.make_params(3, 2, 2)
    assert len(gm.double_cosets(params, 1, 1)) == 2  # trivial + 1
    assert len(gm.double_cosets(params, 2, 2)) == 1
    params524 = gm.make_params(5, 2, 4)
    assert len(gm.double_cosets(params524, 1, 2)) == 1


def test_double_coset_partition_and_sizes(any_params):
    params = any_params
    for i in range(0, params.n + 1):
        for j in range(0, params.n + 1):
            blocks = gm.double_coset_partition(params, i, j)
            sizes = [len(b) for b in blocks]
            assert sum(sizes) == params.group_order
            l = max(i, j)
            trivial_size = params.p**l * params.e
            assert sizes[0] == trivial_size
            for s in sizes[1:]:
                assert s == params.p**l * params.e**2
            assert len(blocks) - 1 == params.nontrivial_coset_count(l)


def test_double_coset_reps_first_is_identity(any_params):
    params = any_params
    reps = gm.double_cosets(params, 1, 1)
    assert reps[0] == params.identity
    in_d = gm.double_cosets_in_d(params, 1, 1)
    assert all(r == 1 for _, r in in_d)


# ------------------------------------------------------------ star products


def test_star_diagonal_idempotent():
    params = gm.make_params(3, 2, 2)
    dg = gm.delta_g(params)
    assert gm.star(dg, dg).elements == dg.elements


def test_star_twisted_diagonals_compose():
    params = gm.make_params(3, 2, 2)
    for i, alpha in ((1, 1), (2, 2), (2, 4)):
        for j, beta in ((1, 1), (2, 2)):
            a = gm.subgroup_diag_pe(params, i, alpha)
            b = gm.subgroup_diag_pe(params, j, beta)
            prod = gm.star(a, b)
            k = min(i, j)
            expected_unit = alpha * beta % params.p**k
            expected = gm.subgroup_diag_pe(params, k, expected_unit)
            assert prod.elements == expected.elements
            assert prod.tag[0] == gm.TAG_DIAG_PE
            assert gm.canonical_coset(params, k, prod.tag[2]) == gm.canonical_coset(
                params, k, expected_unit
            )


def test_star_exe_absorbs_diagonal():
    params = gm.make_params(3, 2, 2)
    exe = gm.subgroup_exe(params)
    diag = gm.subgroup_diag_pe(params, 2, 2)
    assert gm.star(exe, diag).elements == exe.elements


def test_star_character_well_defined():
    params = gm.make_params(3, 2, 2)
    x = gm.subgroup_exe(params, lam=1, mu=0)
    y = gm.subgroup_diag_pe(params, 2, 1, lam=1)
    out = gm.star(x, y)
    assert out.character is not None
    out._check_character()


def test_star_character_conflict_raises():
    params = gm.make_params(3, 2, 2)
    # E x E against itself has connecting subgroup E; mismatched middle
    # characters really do disagree, which star must surface
    x = gm.subgroup_exe(params, lam=0, mu=1)
    y = gm.subgroup_exe(params, lam=0, mu=0)
    with pytest.raises(CharacterIllDefined):
        gm.star(x, y)


# ------------------------------------------------------------- conjugation


def test_conj_by_identity():
    params = gm.make_params(3, 2, 2)
    sub = gm.subgroup_diag_p(params, 1, 1)
    out = gm.conj((params.identity, params.identity), sub)
    assert out.elements == sub.elements
    assert out.tag == sub.tag


def test_conj_by_d_fixes_twisted_diagonal():
    params = gm.make_params(3, 2, 2)
    sub = gm.subgroup_diag_p(params, 1, 1)
    out = gm.conj(((1, 1), (0, 1)), sub)
    assert out.tag == (gm.TAG_DIAG_P, 1, 1)
    assert len(out) == len(sub)


def test_conj_preserves_order(any_params):
    params = any_params
    sub = gm.subgroup_diag_pe(params, params.n, 1)
    out = gm.conj(((1, 1), (0, 1)), sub)
    assert len(out) == len(sub)


def test_conj_twist_matches_unit_action():
    # conjugating by ((0, r), (0, s)) turns the unit u into r * u * s^(-1)
    params = gm.make_params(7, 2, 3)
    r = params.subgroup_E[1]
    sub = gm.subgroup_diag_p(params, 2, 3)
    out = gm.conj(((0, r), params.identity), sub)
    assert out.tag == (gm.TAG_DIAG_P, 2, 3 * r % 49)


# ----------------------------------------------- normalizers and conjugacy


def _dxd_delta_e(params):
    out = set()
    for z1 in range(params.pn):
        for z2 in range(params.pn):
            for r in params.subgroup_E:
                out.add(((z1, r), (z2, r)))
    return out


@pytest.mark.parametrize("p,n,e", [(3, 2, 2), (5, 1, 2), (2, 3, 1)])
def test_normalizer_is_dxd_delta_e(p, n, e):
    params = gm.make_params(p, n, e)
    expected = _dxd_delta_e(params)
    for i in range(1, n + 1):
        for u in range(1, p**i):
            if u % p == 0:
                continue
            sub = gm.subgroup_diag_p(params, i, u)
            assert gm.normalizer_bruteforce(params, sub) == expected


@pytest.mark.parametrize("p,n,e", [(3, 2, 2), (5, 1, 4), (2, 3, 1)])
def test_conjugacy_matches_coset_criterion(p, n, e):
    params = gm.make_params(p, n, e)
    for i in range(1, n + 1):
        units = [u for u in range(1, p**i) if u % p]
        for u in units:
            orbit = gm.conjugate_subgroup_orbit(params, gm.subgroup_diag_p(params, i, u))
            for v in units:
                expected = gm.canonical_coset(params, i, u) == gm.canonical_coset(
                    params, i, v
                )
                got = frozenset(gm.subgroup_diag_p(params, i, v).elements) in orbit
                assert got == expected


def test_different_levels_never_conjugate():
    params = gm.make_params(3, 2, 2)
    a = gm.subgroup_diag_p(params, 1, 1)
    b = gm.subgroup_diag_p(params, 2, 1)
    assert not gm.are_conjugate_bruteforce(params, a, b)


# ------------------------------------------------------------- subgroup API


def test_subgroup_projections_and_kernels():
    params = gm.make_params(3, 2, 2)
    exe = gm.subgroup_exe(params)
    assert exe.left_kernel() == frozenset((0, r) for r in params.subgroup_E)
    assert exe.right_kernel() == frozenset((0, r) for r in params.subgroup_E)
    diag = gm.subgroup_diag_pe(params, 1, 1)
    assert diag.left_kernel() == frozenset({params.identity})
    assert diag.first_projection() == frozenset(params.die_elements(1))


def test_subgroup_validation_rejects_non_subgroup():
    params = gm.make_params(3, 1, 1)
    with pytest.raises(ValueError):
        gm.SubgroupGG(params, (gm.TAG_EXPLICIT,), {((1, 1), (0, 1))})


def test_star_requires_same_params():
    from tsring.errors import ParamsMismatch

    a = gm.subgroup_exe(gm.make_params(3, 2, 2))
    b = gm.subgroup_exe(gm.make_params(3, 1, 1))
    with pytest.raises(ParamsMismatch):
        gm.star(a, b)


def test_double_coset_reps_are_least_members_in_order():
    params = gm.make_params(7, 2, 3)
    table = gm.group_table(params)
    for i, j in [(0, 0), (0, 1), (1, 1), (1, 2)]:
        reps = gm.double_cosets(params, i, j)
        indices = [table.index[r] for r in reps]
        assert indices == sorted(indices)
        blocks_ = gm.double_coset_partition(params, i, j)
        for rep, block in zip(reps, blocks_):
            assert table.index[rep] == min(block)


def test_constructor_tags_match_recognition():
    params = gm.make_params(3, 2, 2)
    built = [
        gm.subgroup_exe(params),
        gm.subgroup_exone(params),
        gm.subgroup_onexe(params),
        gm.subgroup_diag_p(params, 1, 1),
        gm.subgroup_diag_p(params, 2, 4),
        gm.subgroup_diag_pe(params, 1, 2),
        gm.subgroup_diag_pe(params, 2, 7),
    ]
    for sub in built:
        recognized = gm.recognize_shape(params, sub.elements)
        assert recognized is not None
        assert recognized[0] == sub.tag[0]
        if len(recognized) == 3:
            # the recognized unit must generate the same coset
            level, unit = recognized[1], recognized[2]
            assert level == sub.tag[1]
            assert gm.canonical_coset(params, level, unit) == gm.canonical_coset(
                params, level, sub.tag[2]
            )
