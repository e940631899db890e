"""Normal forms for points of the affine flag variety of SL2.

Every coset has a unique representative of one of two shapes,

* Straight ``[n, p]``  with matrix ``[[t^n, p], [0, t^-n]]``  and ``deg p < n``,
* Primed   ``[n, p]'`` with matrix ``[[p, t^n], [-t^-n, 0]]`` and ``deg p <= n``,

(``p = 0`` allowed in both).  Point literals are truncated on construction:
``[n, p]`` keeps only the exponents ``< n`` of ``p`` and ``[n, p]'`` only the
exponents ``<= n``; the dropped terms never change the coset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientPrecision, ZeroMatrix, ZeroRotation
from .laurent import CoeffLike, LaurentPoly, as_coeff
from .loopgroup import GroupElement, multiply


@dataclass(frozen=True)
class FlagPoint:
    """Normal-form coset; ``primed`` selects the antidiagonal shape."""

    primed: bool
    n: int
    p: LaurentPoly

    def __post_init__(self):
        if not self.p.is_zero():
            bound = self.n if self.primed else self.n - 1
            if self.p.degree_inf() > bound:
                raise ValueError(
                    f"invalid normal form: degree {self.p.degree_inf()} "
                    f"exceeds bound {bound}"
                )

    def __str__(self) -> str:
        return f"[{self.n}, {self.p}]" + ("'" if self.primed else "")


def make_point(primed: bool, n: int, p: LaurentPoly) -> FlagPoint:
    """Build a point, applying the truncation convention to ``p``."""
    cutoff = n + 1 if primed else n
    return FlagPoint(primed, n, p.truncate_below(cutoff))


def straight(n: int, p: LaurentPoly = LaurentPoly.zero()) -> FlagPoint:
    return make_point(False, n, p)


def primed(n: int, p: LaurentPoly = LaurentPoly.zero()) -> FlagPoint:
    return make_point(True, n, p)


def representative(x: FlagPoint) -> GroupElement:
    """The exact unimodular matrix whose coset is ``x``."""
    tn = LaurentPoly.t_power(x.n)
    tmn = LaurentPoly.t_power(-x.n)
    zero = LaurentPoly.zero()
    if x.primed:
        return GroupElement._raw(x.p, tn, -tmn, zero, None)
    return GroupElement._raw(tn, x.p, zero, tmn, None)


def normal_form(g: GroupElement) -> FlagPoint:
    """Reduce a unimodular matrix to its normal-form coset representative.

    The case split follows the bottom row: the Straight shape applies iff
    ``c/d`` lies in ``t*Q[[t]]`` (decided by comparing valuations), the Primed
    shape iff ``d/c`` lies in ``Q[[t]]``.  Raises
    :class:`~flagorbits.errors.InsufficientPrecision` when the truncation
    order of ``g`` does not determine every kept coefficient of ``p``.
    """
    a, b, c, d = g.entries()
    if c.is_zero() and d.is_zero():
        raise ZeroMatrix("bottom row of a unimodular matrix cannot vanish")
    if c.is_zero():
        is_straight = True
    elif d.is_zero():
        is_straight = False
    else:
        is_straight = c.valuation() - d.valuation() >= 1

    if is_straight:
        den, num = d, b
        nd = d.valuation()
        n = -nd
        e_max = n - 1
    else:
        den, num = c, -a
        nd = c.valuation()
        n = -nd
        e_max = n

    if g.prec is not None and g.prec <= e_max:
        raise InsufficientPrecision(
            f"precision {g.prec} cannot determine coefficients up to t^{e_max}"
        )
    if num.is_zero() or num.valuation() > e_max:
        return FlagPoint(not is_straight, n, LaurentPoly.zero())
    order = e_max - num.valuation() + 1
    if g.prec is not None and g.prec <= nd + order - 1:
        raise InsufficientPrecision(
            f"precision {g.prec} cannot determine the unit inverse to order {order}"
        )
    inv = den.unit_part().invert_unit(order)
    p = (num * inv).truncate_below(e_max + 1)
    return make_point(not is_straight, n, p)


def act(g: GroupElement, x: FlagPoint) -> FlagPoint:
    """Left translation of the coset ``x`` by ``g``."""
    return normal_form(multiply(g, representative(x)))


def rotate_point(gamma: CoeffLike, x: FlagPoint) -> FlagPoint:
    """Loop rotation on normal forms: ``[n, p(t)] -> [n, gamma^n p(gamma t)]``."""
    gamma = as_coeff(gamma)
    if not gamma:
        raise ZeroRotation("rotation factor must be nonzero")
    return FlagPoint(x.primed, x.n, x.p.rotate(gamma).scale(gamma**x.n))


def involute(x: FlagPoint) -> FlagPoint:
    """Translation by the antidiagonal Weyl element, in closed form.

    ``[n, 0] <-> [-n, 0]'`` and, for ``p != 0``,
    ``[n, p] -> [-v, -t^-n / p_(0)]`` of the same shape, ``v`` the valuation
    of ``p``; the result is truncated per the point convention.
    """
    if x.p.is_zero():
        return FlagPoint(not x.primed, -x.n, LaurentPoly.zero())
    m, unit = x.p.unit_decompose()
    order = x.n - m + (1 if x.primed else 0)
    q = unit.invert_unit(order).shift(-x.n).scale(-1)
    return make_point(x.primed, -m, q)
