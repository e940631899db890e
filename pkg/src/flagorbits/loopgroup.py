"""2x2 matrices over Laurent polynomials: the loop group of SL2 and its
Iwahori-type subgroups.

A :class:`GroupElement` carries a truncation order ``prec`` (``None`` meaning
exact): entries are stored truncated below ``t^prec`` and the determinant is 1
modulo ``t^prec``.  Exact elements must have determinant exactly 1.

Subgroup membership for the chain I > I1 > I2 > I3 > I4 is decided by entry
valuation thresholds plus, for I4, vanishing of the ``t^1`` coefficient on the
diagonal.
"""

from __future__ import annotations

import enum
import random
from typing import Optional

from gmpy2 import mpq

from .errors import (
    InsufficientPrecision,
    NotUnimodular,
    ZeroRotation,
    ZeroTorusParameter,
)
from .laurent import Coeff, CoeffLike, LaurentPoly, as_coeff


class SubgroupId(enum.Enum):
    I = "I"
    I1 = "I1"
    I2 = "I2"
    I3 = "I3"
    I4 = "I4"


class GroupElement:
    """Row-major 2x2 matrix ``[[a, b], [c, d]]`` with a precision contract."""

    __slots__ = ("a", "b", "c", "d", "prec")

    def __init__(
        self,
        a: LaurentPoly,
        b: LaurentPoly,
        c: LaurentPoly,
        d: LaurentPoly,
        prec: Optional[int] = None,
    ):
        if prec is not None:
            a = a.truncate_below(prec)
            b = b.truncate_below(prec)
            c = c.truncate_below(prec)
            d = d.truncate_below(prec)
        det = a * d - b * c
        residual = det - LaurentPoly.one()
        if prec is not None:
            residual = residual.truncate_below(prec)
        if not residual.is_zero():
            raise NotUnimodular(
                f"determinant is {det}, not 1"
                + ("" if prec is None else f" modulo t^{prec}")
            )
        self.a, self.b, self.c, self.d = a, b, c, d
        self.prec = prec

    @classmethod
    def _raw(cls, a, b, c, d, prec) -> "GroupElement":
        # Trusted path for products/inverses where the contract is preserved
        # by construction; skips the determinant check.
        g = cls.__new__(cls)
        g.a, g.b, g.c, g.d, g.prec = a, b, c, d, prec
        return g

    def entries(self) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]:
        return self.a, self.b, self.c, self.d

    def min_valuation(self) -> int:
        """Least valuation among the nonzero entries (0 if all entries vanish)."""
        vals = [e.valuation() for e in self.entries() if not e.is_zero()]
        return min(vals, default=0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GroupElement):
            return self.entries() == other.entries() and self.prec == other.prec
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.entries(), self.prec))

    def __str__(self) -> str:
        s = f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"
        if self.prec is not None:
            s += f"@{self.prec}"
        return s

    def __repr__(self) -> str:
        return f"GroupElement({self})"


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Matrix product, truncated to the honestly known order.

    With finite precision the known order of the product is limited by each
    factor's precision shifted by the other factor's most negative entry
    valuation: unknown tail coefficients of one factor are scaled by ``t^v``
    terms of the other.
    """
    prec = _product_prec(g, h)
    a = g.a * h.a + g.b * h.c
    b = g.a * h.b + g.b * h.d
    c = g.c * h.a + g.d * h.c
    d = g.c * h.b + g.d * h.d
    if prec is not None:
        a = a.truncate_below(prec)
        b = b.truncate_below(prec)
        c = c.truncate_below(prec)
        d = d.truncate_below(prec)
    return GroupElement._raw(a, b, c, d, prec)


def _product_prec(g: GroupElement, h: GroupElement) -> Optional[int]:
    bounds = []
    if g.prec is not None:
        bounds.append(g.prec + min(0, h.min_valuation()))
    if h.prec is not None:
        bounds.append(h.prec + min(0, g.min_valuation()))
    return min(bounds) if bounds else None


def inverse(g: GroupElement) -> GroupElement:
    """Adjugate inverse, valid since the determinant is 1 (mod ``t^prec``)."""
    return GroupElement._raw(g.d, -g.b, -g.c, g.a, g.prec)


def membership(g: GroupElement, s: SubgroupId) -> bool:
    """Entry-shape test for the subgroups of the Iwahori chain."""
    if g.prec is not None and g.prec < 2:
        raise InsufficientPrecision(
            f"membership needs precision >= 2, got {g.prec}"
        )

    def val_ge(p: LaurentPoly, k: int) -> bool:
        return p.is_zero() or p.valuation() >= k

    a, b, c, d = g.entries()
    if not (val_ge(a, 0) and val_ge(d, 0)):
        return False
    if s is SubgroupId.I:
        return val_ge(b, 0) and val_ge(c, 1)
    if s is SubgroupId.I1:
        return val_ge(b, 1) and val_ge(c, 1)
    if s is SubgroupId.I2:
        return val_ge(b, 1) and val_ge(c, 2)
    if s is SubgroupId.I3:
        return val_ge(b, 2) and val_ge(c, 2)
    if s is SubgroupId.I4:
        return (
            val_ge(b, 2)
            and val_ge(c, 2)
            and not a.coefficient(1)
            and not d.coefficient(1)
        )
    raise ValueError(f"unknown subgroup {s!r}")


#: Minimal valuation required of the off-diagonal entries, per subgroup.
OFFDIAG_SHAPE: dict[SubgroupId, tuple[int, int]] = {
    SubgroupId.I: (0, 1),
    SubgroupId.I1: (1, 1),
    SubgroupId.I2: (1, 2),
    SubgroupId.I3: (2, 2),
    SubgroupId.I4: (2, 2),
}


# -- special elements -------------------------------------------------------

_ZERO = LaurentPoly.zero()
_ONE = LaurentPoly.one()


def identity() -> GroupElement:
    return GroupElement._raw(_ONE, _ZERO, _ZERO, _ONE, None)


def dot_s1() -> GroupElement:
    """The antidiagonal Weyl representative ``[[0, -1], [1, 0]]``."""
    return GroupElement._raw(_ZERO, -_ONE, _ONE, _ZERO, None)


def diag_t(n: int) -> GroupElement:
    return GroupElement._raw(
        LaurentPoly.t_power(n), _ZERO, _ZERO, LaurentPoly.t_power(-n), None
    )


def upper(p: LaurentPoly) -> GroupElement:
    return GroupElement._raw(_ONE, p, _ZERO, _ONE, None)


def lower(p: LaurentPoly) -> GroupElement:
    return GroupElement._raw(_ONE, _ZERO, p, _ONE, None)


def torus(alpha: CoeffLike) -> GroupElement:
    alpha = as_coeff(alpha)
    if not alpha:
        raise ZeroTorusParameter("torus parameter must be nonzero")
    return GroupElement._raw(
        LaurentPoly.const(alpha), _ZERO, _ZERO, LaurentPoly.const(1 / alpha), None
    )


def rotate_element(g: GroupElement, gamma: CoeffLike) -> GroupElement:
    """Loop rotation ``t -> gamma*t`` applied entrywise."""
    gamma = as_coeff(gamma)
    if not gamma:
        raise ZeroRotation("rotation factor must be nonzero")
    return GroupElement._raw(
        g.a.rotate(gamma),
        g.b.rotate(gamma),
        g.c.rotate(gamma),
        g.d.rotate(gamma),
        g.prec,
    )


# -- random subgroup elements ----------------------------------------------

#: Fixed draw set for nonzero coefficients; small so that counterexamples
#: print readably.
NONZERO_COEFFS: tuple[Coeff, ...] = tuple(
    mpq(v)
    for v in ("1", "-1", "2", "-2", "3", "-3", "1/2", "-1/2", "3/2", "-2/3")
)


def _draw_nonzero(rng: random.Random, window: tuple[int, int]) -> Coeff:
    lo, hi = window
    if rng.random() < 0.25:
        return rng.choice(NONZERO_COEFFS)
    v = 0
    while v == 0:
        v = rng.randint(lo, hi)
    return mpq(v)


def _draw_sparse(
    rng: random.Random,
    min_exp: int,
    window: tuple[int, int],
    max_terms: int = 3,
    span: int = 5,
) -> LaurentPoly:
    n_terms = rng.randint(0, max_terms)
    coeffs: dict[int, Coeff] = {}
    for _ in range(n_terms):
        coeffs[rng.randint(min_exp, min_exp + span)] = _draw_nonzero(rng, window)
    return LaurentPoly(coeffs)


def sample_subgroup(
    s: SubgroupId,
    coeff_window: tuple[int, int] = (-3, 3),
    prec: int = 32,
    seed: int = 0,
) -> GroupElement:
    """Deterministic random element of the subgroup ``s``.

    Off-diagonal entries are drawn sparsely with the subgroup's valuation
    shape, the upper-left entry is a random unit with the shape required by
    ``s`` (for I4 of the form ``alpha * (1 + t^2 * ...)``), and the lower-right
    entry is solved for so that the determinant is 1 modulo ``t^prec``.
    """
    if prec < 4:
        raise ValueError(f"sampling precision must be >= 4, got {prec}")
    rng = random.Random(seed)
    b_min, c_min = OFFDIAG_SHAPE[s]
    b = _draw_sparse(rng, b_min, coeff_window)
    c = _draw_sparse(rng, c_min, coeff_window)
    alpha = _draw_nonzero(rng, coeff_window)
    series_min = 2 if s is SubgroupId.I4 else 1
    if rng.random() < 0.25:
        tail = _draw_sparse(rng, series_min, coeff_window, max_terms=2, span=3)
    else:
        tail = _ZERO
    a = (LaurentPoly.one() + tail).scale(alpha)
    one_plus_bc = LaurentPoly.one() + b * c
    if tail.is_zero():
        d = one_plus_bc.scale(1 / alpha)
    else:
        d = (a.invert_unit(prec) * one_plus_bc).truncate_below(prec)
    return GroupElement(a, b, c, d, prec)
