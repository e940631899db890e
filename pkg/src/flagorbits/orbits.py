"""Orbit labels and classification for the Iwahori chain.

The base decomposition of the flag variety is into even cells ``E_n`` and odd
cells ``O_n``.  Passing to each smaller subgroup either preserves a cell or
splits it into the complement of a coordinate hyperplane (tag ``open``) and
the hyperplane itself (tag ``hyp``); at the finest level a second tag appears.
A label is therefore a family letter, an integer index and zero to two tags,
rendered like ``E_2:open,open`` or ``O_-1:hyp``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .errors import InvalidLabelForLevel, InvolutionUndefinedAtLevel
from .flagpoint import FlagPoint, primed, straight
from .laurent import Coeff, LaurentPoly
from .loopgroup import NONZERO_COEFFS, GroupElement, SubgroupId, identity, upper

OPEN = "open"
HYP = "hyp"


class Level(enum.IntEnum):
    """Classification level; the order is the refinement order of the chain."""

    I = 0
    I1 = 1
    I2 = 2
    I3 = 3
    I4Rot = 4

    @property
    def subgroup(self) -> SubgroupId:
        return _LEVEL_SUBGROUP[self]

    def __str__(self) -> str:
        return self.name


_LEVEL_SUBGROUP = {
    Level.I: SubgroupId.I,
    Level.I1: SubgroupId.I1,
    Level.I2: SubgroupId.I2,
    Level.I3: SubgroupId.I3,
    Level.I4Rot: SubgroupId.I4,
}


@dataclass(frozen=True)
class OrbitLabel:
    family: str  # "E" or "O"
    n: int
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.family not in ("E", "O"):
            raise ValueError(f"family must be 'E' or 'O', got {self.family!r}")
        if len(self.tags) > 2 or any(t not in (OPEN, HYP) for t in self.tags):
            raise ValueError(f"bad tag list {self.tags!r}")

    def __str__(self) -> str:
        s = f"{self.family}_{self.n}"
        if self.tags:
            s += ":" + ",".join(self.tags)
        return s


@dataclass(frozen=True)
class I4FineLabel:
    """I4Rot label plus, on the doubly open cells, the coefficient ratio that
    separates the rotation-free I4-orbits."""

    base: OrbitLabel
    beta: Optional[Coeff] = None

    def __str__(self) -> str:
        s = str(self.base)
        if self.beta is not None:
            s += f"@beta={self.beta}"
        return s


# -- validity ---------------------------------------------------------------

def expected_tag_count(family: str, n: int, level: Level) -> int:
    """How many tags a valid label carries at the given level."""
    if level is Level.I:
        return 0
    if level is Level.I1:
        split = (family == "E" and n > 0) or (family == "O" and n >= 0)
        return 1 if split else 0
    if family == "E" and n == 0:
        return 0
    if level is Level.I2 or n < 0 or (family == "O" and n == 0):
        return 1
    # n > 0 (or O_0 handled above): second tags appear at I3 (under hyp)
    # and additionally at I4Rot (under open).
    return 2


def label_is_valid(label: OrbitLabel, level: Level) -> bool:
    count = expected_tag_count(label.family, label.n, level)
    if count == 0:
        return not label.tags
    if count == 1:
        return len(label.tags) == 1
    # count == 2: positive-index cells; at I3 only the hyp branch splits,
    # at I4Rot both branches carry a second tag.
    if len(label.tags) != 2:
        if level is Level.I3 and label.tags == (OPEN,):
            return True
        return False
    if level is Level.I3:
        return label.tags[0] == HYP
    return True


def require_valid(label: OrbitLabel, level: Level) -> None:
    if not label_is_valid(label, level):
        raise InvalidLabelForLevel(f"{label} is not a valid {level} label")


# -- classification ---------------------------------------------------------

def base_cell(x: FlagPoint) -> tuple[str, int]:
    """The I-orbit of a point: family ``E``/``O`` and its index."""
    if x.p.is_zero():
        return ("O", x.n) if x.primed else ("E", x.n)
    m = x.p.valuation()
    if m + x.n >= 0:
        return ("O", x.n) if x.primed else ("E", x.n)
    # Opposite family, indexed by the valuation.
    return ("E", m) if x.primed else ("O", m)


def classify(x: FlagPoint, level: Level) -> OrbitLabel:
    """Orbit label of ``x`` in the decomposition at ``level``."""
    family, n = base_cell(x)
    if level is Level.I:
        return OrbitLabel(family, n)

    if n > 0 or (family == "O" and n == 0):
        # The point sits in its own cell's window; tags read off coefficients.
        first_open = bool(x.p.coefficient(-n))
        second_open = bool(x.p.coefficient(-n + 1))
    elif n < 0:
        # Stratified cell: the open part is the top stratum, which consists
        # of the opposite-shape forms with valuation + form index == -1.
        on_top = (
            x.primed == (family == "E")
            and not x.p.is_zero()
            and x.p.valuation() + x.n == -1
        )
        first_open = on_top
        second_open = False  # negative-index cells never split twice
    else:  # E_0: a point orbit at every level
        return OrbitLabel(family, n)

    count = expected_tag_count(family, n, level)
    if count == 0:
        return OrbitLabel(family, n)
    tags = [OPEN if first_open else HYP]
    if count == 2:
        if level is Level.I3:
            if tags[0] == HYP:
                tags.append(OPEN if second_open else HYP)
        else:  # I4Rot: both branches refine
            tags.append(OPEN if second_open else HYP)
    return OrbitLabel(family, n, tuple(tags))


def classify_fine_i4(x: FlagPoint) -> I4FineLabel:
    """I4Rot label with the ratio ``p_{-n} / p_{-n+1}`` on doubly open cells."""
    base = classify(x, Level.I4Rot)
    if base.tags == (OPEN, OPEN):
        n = base.n
        return I4FineLabel(base, x.p.coefficient(-n) / x.p.coefficient(-n + 1))
    return I4FineLabel(base)


# -- distinguished points ---------------------------------------------------

def distinguished_point(label: OrbitLabel, level: Level) -> FlagPoint:
    """The canonical simple-coordinate representative of the orbit."""
    require_valid(label, level)
    family, n, tags = label.family, label.n, label.tags
    t = LaurentPoly.t_power

    if not tags:
        return primed(n) if family == "O" else straight(n)

    if len(tags) == 1:
        if tags[0] == HYP:
            # The hyperplane branch always contains the base point of the cell.
            return primed(n) if family == "O" else straight(n)
        if n > 0 or (family == "O" and n >= 0):
            p = t(-n)
            return primed(n, p) if family == "O" else straight(n, p)
        # n < 0: top stratum of the opposite shape.
        if family == "E":
            return primed(-n - 1, t(n))
        return straight(-n - 1, t(n))

    # Two tags: positive-index cells only.
    first, second = tags
    if first == HYP:
        p = t(-n + 1) if second == OPEN else LaurentPoly.zero()
    else:  # open branch, split at I4Rot
        p = t(-n) + t(-n + 1) if second == OPEN else t(-n)
    return primed(n, p) if family == "O" else straight(n, p)


# -- dimensions -------------------------------------------------------------

def dimension(label: OrbitLabel, level: Level) -> tuple[int, int]:
    """Multiplicative rank and affine dimension of the orbit."""
    require_valid(label, level)
    family, n, tags = label.family, label.n, label.tags
    if family == "E":
        cell = 2 * n if n >= 0 else -2 * n
    else:
        cell = 2 * n + 1 if n >= 0 else -2 * n - 1
    torus = sum(1 for tag in tags if tag == OPEN)
    return torus, cell - len(tags)


def is_point_orbit(label: OrbitLabel, level: Level) -> bool:
    return dimension(label, level) == (0, 0)


# -- involution on labels ---------------------------------------------------

def involution_label(label: OrbitLabel, level: Level) -> OrbitLabel:
    """Image of an orbit under translation by the antidiagonal element.

    Defined only where that element normalizes the subgroup (I1, I3, I4
    with rotations); the tables below are closed under taking inverses, which
    makes the map an involution on valid labels.
    """
    if level not in (Level.I1, Level.I3, Level.I4Rot):
        raise InvolutionUndefinedAtLevel(
            f"the involution does not act on {level} labels"
        )
    require_valid(label, level)
    family, n, tags = label.family, label.n, label.tags

    if level is Level.I1:
        if not tags:
            # E_n (n <= 0) <-> O_{-n}:hyp; O_n (n < 0) <-> E_{-n}:hyp
            other = "O" if family == "E" else "E"
            return OrbitLabel(other, -n, (HYP,))
        if tags == (OPEN,):
            return label
        other = "O" if family == "E" else "E"
        return OrbitLabel(other, -n)

    # I3 and I4Rot share the untagged/one-tag structure for n <= 0 and the
    # hyp-branch swaps for n > 0; they differ only on the open branch at n > 0.
    if family == "E" and n == 0:
        return OrbitLabel("O", 0, (HYP,))
    if tags == (HYP,) and n == 0:  # O_0:hyp
        return OrbitLabel("E", 0)
    other = "O" if family == "E" else "E"
    if n < 0:
        if tags == (OPEN,):
            return OrbitLabel(other, -n, (HYP, OPEN))
        if tags == (HYP,):
            return OrbitLabel(other, -n, (HYP, HYP))
        raise AssertionError(f"unreachable: {label} at {level}")
    if tags == (OPEN,):  # O_0:open, or E/O_n:open at I3 for n > 0
        return label
    if tags == (HYP, OPEN):
        return OrbitLabel(other, -n, (OPEN,))
    if tags == (HYP, HYP):
        return OrbitLabel(other, -n, (HYP,))
    # Doubly open/closed branches at I4Rot map to themselves.
    return label


# -- enumeration ------------------------------------------------------------

_TAG_CHOICES = (
    (),
    (OPEN,),
    (HYP,),
    (OPEN, OPEN),
    (OPEN, HYP),
    (HYP, OPEN),
    (HYP, HYP),
)


def enumerate_labels(
    level: Level, n_min: int, n_max: int
) -> list[tuple[OrbitLabel, bool]]:
    """All valid labels with index in ``[n_min, n_max]``, with a point-orbit flag."""
    if n_min > n_max:
        raise ValueError(f"empty index range [{n_min}, {n_max}]")
    out = []
    for n in range(n_min, n_max + 1):
        for family in ("E", "O"):
            for tags in _TAG_CHOICES:
                label = OrbitLabel(family, n, tags)
                if label_is_valid(label, level):
                    out.append((label, is_point_orbit(label, level)))
    return out


# -- samplers ---------------------------------------------------------------

_COEFF_POOL: tuple[Coeff, ...] = NONZERO_COEFFS + (mpq(0), mpq(0), mpq(0))


def _draw(rng: random.Random) -> Coeff:
    return rng.choice(_COEFF_POOL)


def _draw_nonzero(rng: random.Random) -> Coeff:
    return rng.choice(NONZERO_COEFFS)


def _window_poly(
    rng: random.Random,
    lo: int,
    hi: int,
    forced: dict[int, Optional[bool]],
) -> LaurentPoly:
    """Random polynomial on exponents ``lo..hi``.

    ``forced[k] = True`` demands a nonzero coefficient at ``k``, ``False``
    demands zero; unmentioned exponents are free.
    """
    coeffs: dict[int, Coeff] = {}
    for k in range(lo, hi + 1):
        constraint = forced.get(k)
        if constraint is False:
            continue
        coeffs[k] = _draw_nonzero(rng) if constraint else _draw(rng)
    return LaurentPoly(coeffs)


def sample_point(label: OrbitLabel, level: Level, seed: int = 0) -> FlagPoint:
    """Deterministic random point classifying to ``label`` at ``level``."""
    require_valid(label, level)
    rng = random.Random(seed)
    family, n, tags = label.family, label.n, label.tags

    if family == "E" and n == 0:
        return straight(0)

    if n > 0 or family == "O" and n == 0:
        # Coordinate window of the cell itself.
        hi = n - 1 if family == "E" else n
        forced: dict[int, Optional[bool]] = {}
        if tags:
            forced[-n] = tags[0] == OPEN
        if len(tags) == 2:
            forced[-n + 1] = tags[1] == OPEN
        p = _window_poly(rng, -n, hi, forced)
        point = straight(n, p) if family == "E" else primed(n, p)
    else:
        # Stratified cell of negative index: strata are the opposite shape.
        n_strata = -2 * n if family == "E" else -2 * n - 1  # top stratum is k=0
        opposite = family == "E"  # E-cells have primed strata and vice versa
        if not tags:
            k = rng.randint(0, n_strata)  # n_strata means the base point
        elif tags[0] == OPEN:
            k = 0
        else:
            k = rng.randint(1, n_strata)
        if k == n_strata:
            point = primed(n) if family == "O" else straight(n)
        else:
            form_n = -n - 1 - k
            hi = form_n if opposite else form_n - 1
            p = _window_poly(rng, n, hi, {n: True})
            point = primed(form_n, p) if opposite else straight(form_n, p)

    assert classify(point, level) == label, (point, label, level)
    return point


# -- reduction to the base point --------------------------------------------

def reduce_to_base(x: FlagPoint) -> tuple[GroupElement, FlagPoint]:
    """An Iwahori element ``h`` with ``act(h, x)`` the base point of the cell.

    Follows the four witness matrices of the cell-membership lemma, split on
    the shape of ``x`` and the sign of ``valuation(p) + n``.
    """
    if x.p.is_zero():
        return identity(), x
    m, unit = x.p.unit_decompose()
    n = x.n
    if m + n >= 0:
        sign = mpq(1) if x.primed else mpq(-1)
        h = upper(unit.shift(m + n).scale(sign))
        base = primed(n) if x.primed else straight(n)
        return h, base
    # Opposite-shape base point; the witness needs a truncated unit inverse.
    prec = max(32, (unit.degree_inf() - m) + abs(n) + abs(m) + 8)
    inv = unit.invert_unit(prec)
    sign = mpq(1) if x.primed else mpq(-1)
    h = GroupElement(
        inv,
        LaurentPoly.zero(),
        LaurentPoly.t_power(-m - n).scale(sign),
        unit,
        prec,
    )
    base = straight(m) if x.primed else primed(m)
    return h, base
