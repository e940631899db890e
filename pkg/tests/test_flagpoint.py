"""Normal forms: construction, reduction, translation, rotation, involution."""

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from flagorbits.errors import InsufficientPrecision, ZeroMatrix, ZeroRotation
from flagorbits.flagpoint import (
    FlagPoint,
    act,
    involute,
    make_point,
    normal_form,
    primed,
    representative,
    rotate_point,
    straight,
)
from flagorbits.laurent import LaurentPoly
from flagorbits.loopgroup import (
    GroupElement,
    SubgroupId,
    diag_t,
    dot_s1,
    identity,
    inverse,
    lower,
    membership,
    multiply,
    sample_subgroup,
    torus,
    upper,
)

L = LaurentPoly
t = LaurentPoly.t_power


def in_same_coset(g: GroupElement, x: FlagPoint) -> bool:
    """Coset oracle: representative(x)^-1 * g lies in the Iwahori subgroup."""
    return membership(multiply(inverse(representative(x)), g), SubgroupId.I)


# -- construction and truncation ----------------------------------------------

def test_straight_zero():
    x = straight(0)
    assert (x.primed, x.n, x.p) == (False, 0, L.zero())
    assert str(x) == "[0, 0]"


def test_straight_truncates_at_n():
    x = make_point(False, 1, t(-1) + t(1) + t(5))
    assert x == straight(1, t(-1))
    assert str(x) == "[1, t^-1]"


def test_primed_truncates_after_n():
    x = make_point(True, 0, L.one() + t(1))
    assert x == primed(0, L.one())
    assert str(x) == "[0, 1]'"


def test_degree_bound_enforced():
    with pytest.raises(ValueError):
        FlagPoint(False, 1, t(1))
    with pytest.raises(ValueError):
        FlagPoint(True, 0, t(1))


# -- representatives -----------------------------------------------------------

def test_representative_of_base_point():
    assert representative(straight(0)) == identity()


def test_representative_shapes():
    g = representative(straight(2, t(-1)))
    assert g.entries() == (t(2), t(-1), L.zero(), t(-2))
    h = representative(primed(1, t(-1)))
    assert h.entries() == (t(-1), t(1), -t(-1), L.zero())
    for m in (g, h):
        assert m.a * m.d - m.b * m.c == L.one()


# -- normal_form ---------------------------------------------------------------

def test_normal_form_identity():
    assert normal_form(identity()) == straight(0)


def test_normal_form_dot_s1():
    assert normal_form(dot_s1()) == primed(0)


def test_normal_form_upper():
    assert normal_form(upper(t(-1))) == straight(0, t(-1))


def test_normal_form_coset_oracle():
    g = multiply(multiply(lower(t(1)), diag_t(-1)), upper(t(-1) + L.one()))
    x = normal_form(g)
    assert in_same_coset(g, x)


def test_normal_form_rejects_zero_bottom_row():
    g = GroupElement._raw(L.one(), L.zero(), L.zero(), L.zero(), None)
    with pytest.raises(ZeroMatrix):
        normal_form(g)


def test_normal_form_insufficient_precision():
    # The bottom-right valuation is -4, so coefficients of p up to t^3 are
    # needed; precision 2 cannot see them.
    g = GroupElement._raw(t(4), t(-1), L.zero(), t(-4), 2)
    with pytest.raises(InsufficientPrecision):
        normal_form(g)


def test_normal_form_idempotent_on_representatives():
    pts = [
        straight(0),
        primed(0),
        straight(3, t(-3) + t(2)),
        primed(-2, t(-4).scale(mpq(1, 2))),
        straight(-1),
    ]
    for x in pts:
        assert normal_form(representative(x)) == x


# -- act -----------------------------------------------------------------------

def test_act_identity():
    x = straight(2, t(-1))
    assert act(identity(), x) == x


def test_act_upper_on_base_point():
    # upper(q).[n, 0] = [n, q * t^-n] truncated below n.
    q = L.one() + t(1)
    for n in (0, 1, 2):
        got = act(upper(q), straight(n))
        assert got == make_point(False, n, q.shift(-n))


def test_act_lower_t_on_negative_base():
    # Lands in the top stratum of the O_-1 cell; the sign comes from the
    # antidiagonal representative.  Cross-checked via the coset oracle.
    got = act(lower(t(1)), straight(-1))
    assert got == primed(0, -t(-1))
    g = multiply(lower(t(1)), representative(straight(-1)))
    assert in_same_coset(g, got)


def test_act_is_a_left_action():
    x = primed(1, t(-1) + L.one())
    for s1, s2 in ((3, 4), (7, 8)):
        g = sample_subgroup(SubgroupId.I1, seed=s1)
        h = sample_subgroup(SubgroupId.I2, seed=s2)
        assert act(g, act(h, x)) == act(multiply(g, h), x)


# -- rotation ------------------------------------------------------------------

def test_rotate_point_monomial():
    # [1, t^-1]: coefficient scales by gamma^-1, prefactor by gamma^1.
    assert rotate_point(2, straight(1, t(-1))) == straight(1, t(-1))


def test_rotate_point_mixed():
    got = rotate_point(3, straight(1, t(-1) + L.one()))
    assert got == straight(1, t(-1) + L.const(3))


def test_rotate_point_matches_matrix_rotation():
    from flagorbits.loopgroup import rotate_element

    x = primed(2, t(-2).scale(2) + t(1))
    for gamma in (mpq(2), mpq(-1, 2), mpq(3)):
        direct = rotate_point(gamma, x)
        via_matrix = normal_form(rotate_element(representative(x), gamma))
        assert direct == via_matrix


def test_rotate_point_rejects_zero():
    with pytest.raises(ZeroRotation):
        rotate_point(0, straight(0))


# -- involution ----------------------------------------------------------------

def test_involute_base_points():
    assert involute(straight(0)) == primed(0)
    assert involute(primed(0)) == straight(0)
    assert involute(straight(2)) == primed(-2)
    assert involute(primed(-3)) == straight(3)


def test_involute_examples():
    assert involute(straight(1, t(-1))) == straight(1, -t(-1))
    assert involute(primed(0, L.one())) == primed(0, -L.one())


def test_involute_matches_translation():
    s1 = dot_s1()
    pts = [
        straight(0),
        primed(0, L.one()),
        straight(2, t(-2).scale(3) + t(1)),
        primed(-1, t(-3)),
        straight(-2, t(-3).scale(mpq(1, 2))),
    ]
    for x in pts:
        assert involute(x) == act(s1, x)


def test_involute_is_an_involution():
    pts = [
        straight(1, t(-1).scale(2)),
        primed(3, t(-3) + t(0)),
        straight(-1),
        primed(-2, t(-5)),
    ]
    for x in pts:
        assert involute(involute(x)) == x


# -- hypothesis: random points round-trip --------------------------------------

coeff_st = st.sampled_from([mpq(v) for v in ("1", "-1", "2", "1/2", "-3")])


@st.composite
def point_st(draw):
    is_primed = draw(st.booleans())
    n = draw(st.integers(-4, 4))
    hi = n if is_primed else n - 1
    coeffs = draw(st.dictionaries(st.integers(hi - 6, hi), coeff_st, max_size=4))
    return make_point(is_primed, n, L(coeffs))


@given(point_st())
def test_normal_form_inverts_representative(x):
    assert normal_form(representative(x)) == x


@given(point_st())
def test_involution_order_two(x):
    assert involute(involute(x)) == x


@given(point_st(), st.integers(0, 10**6))
def test_act_preserves_nothing_but_is_consistent(x, seed):
    g = sample_subgroup(SubgroupId.I, seed=seed)
    y = act(g, x)
    # act(g^-1, .) undoes act(g, .).
    assert act(inverse(g), y) == x
