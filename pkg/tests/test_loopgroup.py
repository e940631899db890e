"""The loop group of SL2: products, inverses, subgroup membership, sampling."""

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from flagorbits.errors import (
    InsufficientPrecision,
    NotUnimodular,
    ZeroRotation,
    ZeroTorusParameter,
)
from flagorbits.laurent import LaurentPoly
from flagorbits.loopgroup import (
    OFFDIAG_SHAPE,
    GroupElement,
    SubgroupId,
    diag_t,
    dot_s1,
    identity,
    inverse,
    lower,
    membership,
    multiply,
    rotate_element,
    sample_subgroup,
    torus,
    upper,
)

L = LaurentPoly
t = LaurentPoly.t_power

ALL_SUBGROUPS = tuple(SubgroupId)
#: The chain in refinement order: each subgroup contains the next.
CHAIN = (SubgroupId.I, SubgroupId.I1, SubgroupId.I2, SubgroupId.I3, SubgroupId.I4)


# -- constructor contract -----------------------------------------------------

def test_exact_elements_must_have_determinant_one():
    with pytest.raises(NotUnimodular):
        GroupElement(L.one(), L.one(), L.one(), L.one(), None)


def test_truncated_determinant_contract():
    # det = 1 - t^3: fails exactly and at prec 4, passes at prec 3.
    a, b, c, d = L.one(), t(1), t(2), L.one()
    with pytest.raises(NotUnimodular):
        GroupElement(a, b, c, d, None)
    with pytest.raises(NotUnimodular):
        GroupElement(a, b, c, d, 4)
    g = GroupElement(a, b, c, d, 3)
    assert g.prec == 3


def test_entries_are_truncated_to_prec():
    g = GroupElement(L.one() + t(5), L.zero(), L.zero(), L.one(), 4)
    assert g.a == L.one()


# -- special elements ---------------------------------------------------------

def test_identity():
    g = identity()
    assert g.entries() == (L.one(), L.zero(), L.zero(), L.one())
    assert g.prec is None


def test_dot_s1_matrix():
    g = dot_s1()
    assert g.entries() == (L.zero(), -L.one(), L.one(), L.zero())


def test_diag_t():
    g = diag_t(1)
    assert g.entries() == (t(1), L.zero(), L.zero(), t(-1))


def test_torus():
    g = torus(2)
    assert g.entries() == (L.const(2), L.zero(), L.zero(), L.const(mpq(1, 2)))
    with pytest.raises(ZeroTorusParameter):
        torus(0)


def test_upper_lower():
    assert upper(t(-1)).b == t(-1)
    assert lower(t(1)).c == t(1)


# -- multiplication and inversion ---------------------------------------------

def test_product_example():
    g = multiply(lower(t(1)), upper(L.one()))
    assert g.entries() == (L.one(), L.one(), t(1), L.one() + t(1))
    assert g.prec is None
    det = g.a * g.d - g.b * g.c
    assert det == L.one()


def test_product_precision_plain_min():
    g = sample_subgroup(SubgroupId.I, prec=32, seed=1)
    h = sample_subgroup(SubgroupId.I, prec=16, seed=2)
    assert multiply(g, h).prec == 16


def test_product_precision_drops_with_negative_valuations():
    # diag_t(2) has an entry of valuation -2, so a prec-10 factor only
    # determines the product below t^8.
    g = GroupElement(L.one(), t(1), L.zero(), L.one(), 10)
    assert multiply(diag_t(2), g).prec == 8
    assert multiply(g, diag_t(2)).prec == 8


def test_inverse_example():
    a = L.one() + t(2)
    b = t(2)
    c = t(4)
    d = L.one() - t(2) + t(4)
    g = GroupElement(a, b, c, d, None)
    gi = inverse(g)
    assert gi.entries() == (d, -b, -c, a)
    assert multiply(g, gi) == identity()


def test_identity_is_neutral():
    g = sample_subgroup(SubgroupId.I2, seed=5)
    assert multiply(identity(), g) == g
    assert multiply(g, identity()) == g


# -- membership ---------------------------------------------------------------

def test_identity_in_all_subgroups():
    for s in ALL_SUBGROUPS:
        assert membership(identity(), s)


def test_unit_upper_in_iwahori_not_i1():
    g = upper(L.one())
    assert membership(g, SubgroupId.I)
    assert not membership(g, SubgroupId.I1)


def test_t_lower_in_i1_not_i2():
    g = lower(t(1))
    assert membership(g, SubgroupId.I)
    assert membership(g, SubgroupId.I1)
    assert not membership(g, SubgroupId.I2)


def test_i4_kills_diagonal_t_coefficient():
    a = L.one() + t(1)
    d = a.invert_unit(8)
    g = GroupElement(a, L.zero(), L.zero(), d, 8)
    assert membership(g, SubgroupId.I3)
    assert not membership(g, SubgroupId.I4)
    h = GroupElement(L.one() + t(2), L.zero(), L.zero(), (L.one() + t(2)).invert_unit(8), 8)
    assert membership(h, SubgroupId.I4)


def test_membership_needs_two_coefficients():
    g = GroupElement(L.one(), L.zero(), L.zero(), L.one(), 1)
    with pytest.raises(InsufficientPrecision):
        membership(g, SubgroupId.I)


def test_negative_valuation_rejected_everywhere():
    g = diag_t(1)
    for s in ALL_SUBGROUPS:
        assert not membership(g, s)


def test_chain_monotonicity_on_samples():
    # Membership in a finer subgroup implies membership in every coarser one.
    for seed in range(50):
        for k, s in enumerate(CHAIN):
            g = sample_subgroup(s, seed=seed)
            for coarser in CHAIN[: k + 1]:
                assert membership(g, coarser), (s, coarser, seed)


# -- sampling -----------------------------------------------------------------

@pytest.mark.parametrize("s", ALL_SUBGROUPS)
def test_sample_subgroup_lands_in_subgroup(s):
    for seed in range(100):
        g = sample_subgroup(s, seed=seed)
        assert membership(g, s), (s, seed)


def test_sample_is_deterministic():
    assert sample_subgroup(SubgroupId.I3, seed=9) == sample_subgroup(
        SubgroupId.I3, seed=9
    )


def test_sample_i4_diagonal_shape():
    for seed in range(50):
        g = sample_subgroup(SubgroupId.I4, seed=seed)
        assert not g.a.coefficient(1)
        assert not g.d.coefficient(1)


def test_sample_i2_offdiagonal_shape():
    b_min, c_min = OFFDIAG_SHAPE[SubgroupId.I2]
    for seed in range(50):
        g = sample_subgroup(SubgroupId.I2, seed=seed)
        assert g.b.is_zero() or g.b.valuation() >= b_min
        assert g.c.is_zero() or g.c.valuation() >= c_min


def test_sample_rejects_tiny_precision():
    with pytest.raises(ValueError):
        sample_subgroup(SubgroupId.I, prec=2)


# -- rotation -----------------------------------------------------------------

def test_rotate_identity():
    assert rotate_element(identity(), 7) == identity()


def test_rotate_upper_scales_coefficients():
    assert rotate_element(upper(t(2)), 3) == upper(t(2).scale(9))


def test_rotate_rejects_zero():
    with pytest.raises(ZeroRotation):
        rotate_element(identity(), 0)


def test_rotation_preserves_membership():
    for seed in range(30):
        for s in ALL_SUBGROUPS:
            g = sample_subgroup(s, seed=seed)
            assert membership(rotate_element(g, mpq(1, 2)), s)


# -- group laws on sampled elements -------------------------------------------

seeds_st = st.integers(0, 10**6)


@given(seeds_st, seeds_st)
def test_product_stays_in_subgroup(s1, s2):
    g = sample_subgroup(SubgroupId.I1, seed=s1)
    h = sample_subgroup(SubgroupId.I1, seed=s2)
    assert membership(multiply(g, h), SubgroupId.I1)


@given(seeds_st)
def test_inverse_cancels(seed):
    g = sample_subgroup(SubgroupId.I, seed=seed)
    p = multiply(g, inverse(g))
    assert p.a.truncate_below(p.prec) == L.one().truncate_below(p.prec)
    assert p.b.is_zero() and p.c.is_zero()
