"""Exact Laurent polynomial arithmetic over the rationals.

The coefficient type is ``gmpy2.mpq`` (arbitrary-precision rationals, always
reduced, positive denominator).  A polynomial is stored sparsely as a map
exponent -> coefficient with no zero coefficients ever stored, so the zero
polynomial has empty support and valuation / degree are simply the extreme
stored exponents.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from gmpy2 import mpq

from .errors import NotAUnit, ZeroPolynomial, ZeroRotation

#: Exact rational coefficient type.
Coeff = mpq

CoeffLike = Union[int, str, Coeff]


def as_coeff(value: CoeffLike) -> Coeff:
    """Coerce an int, a string like ``-1/2`` or an existing rational."""
    return mpq(value)


class LaurentPoly:
    """A finitely supported Laurent polynomial in ``t``.

    Values are immutable after construction; every operation returns a new
    polynomial and all arithmetic is exact.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, CoeffLike] | None = None):
        c: dict[int, Coeff] = {}
        if coeffs:
            for k, v in coeffs.items():
                q = mpq(v)
                if q:
                    c[int(k)] = q
        self._c = c

    @classmethod
    def _raw(cls, coeffs: dict[int, Coeff]) -> "LaurentPoly":
        # Internal fast path: caller guarantees no zero values.
        p = cls.__new__(cls)
        p._c = coeffs
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: mpq(1)})

    @classmethod
    def term(cls, coeff: CoeffLike, exponent: int) -> "LaurentPoly":
        q = mpq(coeff)
        return cls._raw({exponent: q} if q else {})

    @classmethod
    def t_power(cls, exponent: int) -> "LaurentPoly":
        return cls._raw({exponent: mpq(1)})

    @classmethod
    def const(cls, coeff: CoeffLike) -> "LaurentPoly":
        return cls.term(coeff, 0)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._c))

    def items(self) -> Iterable[tuple[int, Coeff]]:
        return sorted(self._c.items())

    def coefficient(self, n: int) -> Coeff:
        """The coefficient of ``t^n`` (zero outside the support)."""
        return self._c.get(n, mpq(0))

    def valuation(self) -> int:
        """Minimal exponent of the support."""
        if not self._c:
            raise ZeroPolynomial("valuation of the zero polynomial is undefined")
        return min(self._c)

    def degree_inf(self) -> int:
        """Maximal exponent of the support."""
        if not self._c:
            raise ZeroPolynomial("degree of the zero polynomial is undefined")
        return max(self._c)

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, v in b.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return LaurentPoly._raw(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def scale(self, coeff: CoeffLike) -> "LaurentPoly":
        q = mpq(coeff)
        if not q:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({k: v * q for k, v in self._c.items()})

    def __mul__(self, other: Union["LaurentPoly", CoeffLike]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        a, b = self._c, other._c
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, Coeff] = {}
        get = out.get
        for ka, va in a.items():
            for kb, vb in b.items():
                k = ka + kb
                s = get(k)
                out[k] = va * vb if s is None else s + va * vb
        return LaurentPoly._raw({k: v for k, v in out.items() if v})

    def __rmul__(self, other: CoeffLike) -> "LaurentPoly":
        return self.scale(other)

    def shift(self, exponent: int) -> "LaurentPoly":
        """Multiply by ``t^exponent``."""
        if not exponent:
            return self
        return LaurentPoly._raw({k + exponent: v for k, v in self._c.items()})

    # -- valuation-theoretic operations -------------------------------------

    def unit_decompose(self) -> tuple[int, "LaurentPoly"]:
        """Write ``p = t^n u`` with ``n`` the valuation and ``u`` a unit part."""
        n = self.valuation()
        return n, self.shift(-n)

    def unit_part(self) -> "LaurentPoly":
        return self.unit_decompose()[1]

    def invert_unit(self, order: int) -> "LaurentPoly":
        """Inverse of a power-series unit, truncated to exponents ``0..order-1``.

        Requires valuation 0 and a nonzero constant term; solves
        ``u * v = 1 (mod t^order)`` coefficient by coefficient.
        """
        if order < 1:
            raise ValueError(f"inverse order must be >= 1, got {order}")
        c = self._c
        if not c or 0 not in c or min(c) < 0:
            raise NotAUnit(
                "inverse requires valuation 0 and nonzero constant term"
            )
        inv0 = 1 / c[0]
        higher = sorted((k, v) for k, v in c.items() if 0 < k < order)
        v = [inv0]
        zero = mpq(0)
        for k in range(1, order):
            s = zero
            for j, uj in higher:
                if j > k:
                    break
                s += uj * v[k - j]
            v.append(-s * inv0 if s else zero)
        return LaurentPoly._raw({i: q for i, q in enumerate(v) if q})

    def truncate_below(self, n: int) -> "LaurentPoly":
        """Keep only the terms with exponent strictly less than ``n``."""
        return LaurentPoly._raw({k: v for k, v in self._c.items() if k < n})

    def rotate(self, gamma: CoeffLike) -> "LaurentPoly":
        """The substitution ``t -> gamma*t``: coefficient ``p_k`` picks up ``gamma^k``."""
        g = mpq(gamma)
        if not g:
            raise ZeroRotation("rotation factor must be nonzero")
        if g == 1:
            return self
        return LaurentPoly._raw({k: v * g**k for k, v in self._c.items()})

    # -- comparisons and rendering ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts: list[str] = []
        for k in sorted(self._c):
            v = self._c[k]
            neg = v < 0
            mag = -v if neg else v
            if k == 0:
                body = str(mag)
            else:
                tp = "t" if k == 1 else f"t^{k}"
                body = tp if mag == 1 else f"{mag}*{tp}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
T = LaurentPoly.t_power(1)
